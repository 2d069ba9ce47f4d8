import unittest
import sys
import os
import itertools

# Add the src directory to the path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
src_path = os.path.join(project_root, 'src')
sys.path.insert(0, src_path)

import errors
from exact_linalg import Matrix
from quiver_algebra import load_algebra
from representation import (Representation, simple, projective, injective, direct_sum, hom_dimension,
                            zero_morphism)
from decomposition import is_isomorphic
from homological import (projective_cover, is_projective_module, is_injective_module, ExtSpace, ext1_dimension,
                         realize_extension, nakayama, tau, tau_inverse, is_tau_rigid, is_tau_minus_rigid,
                         is_ext_projective_in, is_ext_injective_in, euler_form, ar_sequence)

DATA = os.path.join(project_root, 'data')


class TestPresentations(unittest.TestCase):
    """Test cases for projective covers and presentations"""

    @classmethod
    def setUpClass(cls):
        cls.algebra = load_algebra(os.path.join(DATA, 'a3.json'))

    def test_cover_of_simple(self):
        """Test 0 -> P(2) -> P(3) -> S(3) -> 0"""
        pres = projective_cover(simple(self.algebra, "3"))
        self.assertEqual(pres.summary(), {"P0": "P(3)", "P1": "P(2)", "syzygy_dimension_vector": [1, 1, 0]})
        self.assertTrue(pres.is_exact())
        self.assertTrue(pres.is_minimal())

    def test_cover_of_sum(self):
        """Test the cover of a sum has one projective per top summand"""
        total, _, _ = direct_sum([simple(self.algebra, "2"), simple(self.algebra, "3")])
        pres = projective_cover(total)
        self.assertEqual(sorted(pres.generators0), ["2", "3"])
        self.assertTrue(pres.is_exact())

    def test_projective_and_injective(self):
        """Test recognition of projective and injective modules"""
        self.assertTrue(is_projective_module(projective(self.algebra, "2")))
        self.assertFalse(is_projective_module(simple(self.algebra, "2")))
        self.assertTrue(is_injective_module(injective(self.algebra, "2")))
        self.assertFalse(is_injective_module(projective(self.algebra, "2")))

    def test_nakayama_sends_projectives_to_injectives(self):
        """Test nu P(v) is isomorphic to I(v)"""
        for v in self.algebra.vertices:
            self.assertTrue(is_isomorphic(nakayama(projective(self.algebra, v)), injective(self.algebra, v)))


class TestExt(unittest.TestCase):
    """Test cases for Ext^1 and extensions"""

    @classmethod
    def setUpClass(cls):
        cls.algebra = load_algebra(os.path.join(DATA, 'a3.json'))
        cls.s = {v: simple(cls.algebra, v) for v in cls.algebra.vertices}

    def test_arrows_give_extensions(self):
        """Test Ext^1(S(i), S(j)) counts arrows i -> j"""
        self.assertEqual(ext1_dimension(self.s["2"], self.s["1"]), 1)
        self.assertEqual(ext1_dimension(self.s["3"], self.s["2"]), 1)
        self.assertEqual(ext1_dimension(self.s["1"], self.s["2"]), 0)
        self.assertEqual(ext1_dimension(self.s["3"], self.s["1"]), 0)

    def test_projectives_have_no_extensions(self):
        """Test Ext^1(P, -) and Ext^1(-, I) vanish"""
        for v in self.algebra.vertices:
            self.assertEqual(ext1_dimension(projective(self.algebra, "3"), self.s[v]), 0)
            self.assertEqual(ext1_dimension(self.s[v], injective(self.algebra, "1")), 0)

    def test_zero_arguments(self):
        """Test Ext with a zero module"""
        zero = Representation(self.algebra, {})
        self.assertEqual(ext1_dimension(zero, self.s["1"]), 0)

    def test_realize_extension(self):
        """Test the nonsplit extension of S(2) by S(1) is P(2)"""
        space = ExtSpace(self.s["2"], self.s["1"])
        middle, inclusion, projection = realize_extension(space.elements()[0])
        self.assertTrue(is_isomorphic(middle, projective(self.algebra, "2")))
        self.assertTrue(inclusion.is_injective())
        self.assertTrue(projection.is_surjective())
        self.assertTrue((projection @ inclusion).is_zero())

    def test_split_extension(self):
        """Test the zero class realizes the direct sum"""
        space = ExtSpace(self.s["2"], self.s["1"])
        middle, _, _ = realize_extension(space.element([0]))
        total, _, _ = direct_sum([self.s["1"], self.s["2"]])
        self.assertTrue(is_isomorphic(middle, total))

    def test_coboundaries_are_zero_classes(self):
        """Test coboundaries have zero coordinates"""
        space = ExtSpace(self.s["3"], projective(self.algebra, "3"))
        for b in space.coboundaries:
            self.assertTrue(space.is_zero_class(b))

    def test_euler_form(self):
        """Test <M, N> = dim Hom - dim Ext^1 on the hereditary algebra"""
        modules = [projective(self.algebra, "2"), simple(self.algebra, "2"), injective(self.algebra, "2"),
                   simple(self.algebra, "3")]
        for m, n in itertools.product(modules, repeat=2):
            expected = hom_dimension(m, n) - ext1_dimension(m, n)
            self.assertEqual(euler_form(self.algebra, m.dims, n.dims), expected)

    def test_ext_projective_and_injective(self):
        """Test Ext-projectivity in a list"""
        self.assertTrue(is_ext_projective_in(self.s["1"], [self.s["2"], self.s["3"]]))
        self.assertFalse(is_ext_projective_in(self.s["2"], [self.s["1"]]))
        self.assertTrue(is_ext_injective_in(self.s["1"], [self.s["1"], self.s["3"]]))
        self.assertFalse(is_ext_injective_in(self.s["1"], [self.s["2"]]))


class TestTranslates(unittest.TestCase):
    """Test cases for tau, tau^- and almost split sequences"""

    @classmethod
    def setUpClass(cls):
        cls.algebra = load_algebra(os.path.join(DATA, 'a3.json'))

    def test_tau_on_a3(self):
        """Test tau S(2) = P(1), tau I(2) = P(2) and tau S(3) = S(2)"""
        self.assertEqual(tau(simple(self.algebra, "2")).dimension_vector(), (1, 0, 0))
        self.assertEqual(tau(injective(self.algebra, "2")).dimension_vector(), (1, 1, 0))
        self.assertEqual(tau(simple(self.algebra, "3")).dimension_vector(), (0, 1, 0))
        self.assertTrue(tau(projective(self.algebra, "2")).is_zero())

    def test_tau_inverse_on_a3(self):
        """Test tau^- P(1) = S(2) and tau^- of an injective vanishes"""
        self.assertEqual(tau_inverse(projective(self.algebra, "1")).dimension_vector(), (0, 1, 0))
        self.assertEqual(tau_inverse(projective(self.algebra, "2")).dimension_vector(), (0, 1, 1))
        self.assertTrue(tau_inverse(injective(self.algebra, "2")).is_zero())
        self.assertIs(tau_inverse(projective(self.algebra, "1")).algebra, self.algebra)

    def test_translates_are_inverse(self):
        """Test tau^- tau M = M on non-projective indecomposables"""
        for module in (simple(self.algebra, "2"), simple(self.algebra, "3"), injective(self.algebra, "2")):
            self.assertTrue(is_isomorphic(tau_inverse(tau(module)), module))

    def test_tau_rigidity(self):
        """Test S(2) + S(3) is neither tau-rigid nor tau^- -rigid"""
        total, _, _ = direct_sum([simple(self.algebra, "2"), simple(self.algebra, "3")])
        self.assertFalse(is_tau_rigid(total))
        self.assertFalse(is_tau_minus_rigid(total))
        self.assertTrue(is_tau_rigid(simple(self.algebra, "3")))
        self.assertTrue(is_tau_minus_rigid(projective(self.algebra, "3")))

    def test_almost_split_sequences(self):
        """Test the middle terms ending in S(2) and in I(2)"""
        middle, inclusion, projection, translate = ar_sequence(simple(self.algebra, "2"))
        self.assertTrue(is_isomorphic(middle, projective(self.algebra, "2")))
        self.assertEqual(translate.dimension_vector(), (1, 0, 0))
        middle, _, _, _ = ar_sequence(injective(self.algebra, "2"))
        expected, _, _ = direct_sum([projective(self.algebra, "3"), simple(self.algebra, "2")])
        self.assertTrue(is_isomorphic(middle, expected))

    def test_no_sequence_ending_in_projective(self):
        """Test the precondition on almost split sequences"""
        with self.assertRaises(errors.PreconditionError):
            ar_sequence(projective(self.algebra, "3"))


class TestCommutativeSquares(unittest.TestCase):
    """Test cases for translates over two glued commutative squares"""

    @classmethod
    def setUpClass(cls):
        cls.algebra = load_algebra(os.path.join(DATA, 'commutative6.json'))
        cls.m1 = Representation.from_json(cls.algebra, {"dims": {"1": 1, "2": 1, "3": 1},
                                                        "maps": {"μ": [["1"]], "ν": [["1"]]}})
        cls.s1 = simple(cls.algebra, "1")
        cls.s6 = simple(cls.algebra, "6")

    def test_tau_of_m1_is_its_socle(self):
        """Test tau(M1 + S(1)) = S(1), so the sum is not tau-rigid while M1 is"""
        module, _, _ = direct_sum([self.m1, self.s1])
        self.assertTrue(is_isomorphic(tau(module), self.s1))
        self.assertTrue(is_isomorphic(tau(self.m1), self.s1))
        self.assertTrue(is_tau_rigid(self.m1))
        self.assertFalse(is_tau_rigid(module))

    def test_m1_plus_s6_is_tau_rigid(self):
        """Test M1 + S(6) is tau-rigid with tau S(6) supported on 4, 5 and 6"""
        self.assertEqual(tau(self.s6).dimension_vector(), (0, 0, 0, 1, 1, 1))
        module, _, _ = direct_sum([self.m1, self.s6])
        self.assertTrue(is_tau_rigid(module))


class TestKronecker(unittest.TestCase):
    """Test cases on the representation-infinite Kronecker algebra"""

    @classmethod
    def setUpClass(cls):
        cls.algebra = load_algebra(os.path.join(DATA, 'kronecker.json'))

    def regular(self, b):
        return Representation(self.algebra, {"1": 1, "2": 1},
                              {"a": Matrix.from_rows([[1]]), "b": Matrix.from_rows([[b]])})

    def test_regular_self_extension(self):
        """Test a regular simple module has a one-dimensional self-extension"""
        module = self.regular(2)
        self.assertEqual(ext1_dimension(module, module), 1)
        self.assertFalse(is_tau_rigid(module))

    def test_regular_family_is_orthogonal(self):
        """Test Hom and Ext between different parameters vanish"""
        left, right = self.regular(0), self.regular(3)
        self.assertEqual(hom_dimension(left, right), 0)
        self.assertEqual(ext1_dimension(left, right), 0)

    def test_regular_modules_are_tau_periodic(self):
        """Test tau fixes a regular simple module"""
        module = self.regular(5)
        self.assertTrue(is_isomorphic(tau(module), module))

    def test_zero_morphism_helper(self):
        """Test zero morphisms are zero"""
        self.assertTrue(zero_morphism(self.regular(1), self.regular(1)).is_zero())


if __name__ == '__main__':
    # Configure logging to reduce noise during tests
    import logging
    logging.getLogger().setLevel(logging.CRITICAL)

    # Run the tests
    unittest.main(verbosity=2)
