import unittest
import sys
import os

# Add the src directory to the path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
src_path = os.path.join(project_root, 'src')
sys.path.insert(0, src_path)

import errors
from exact_linalg import Matrix
from quiver_algebra import load_algebra
from representation import Representation, simple, projective, injective, direct_sum, direct_power
from decomposition import (coefficient_sweep, endomorphism_ring, is_indecomposable, decompose, find_isomorphism,
                           is_isomorphic, is_basic, reassemble, isomorphic_indecomposables)

DATA = os.path.join(project_root, 'data')


def kronecker_module(algebra, a, b):
    """Regular Kronecker module k^n => k^n given by two square matrices"""
    a = Matrix.from_rows(a)
    b = Matrix.from_rows(b)
    return Representation(algebra, {"1": a.rows, "2": a.cols}, {"a": a, "b": b})


class TestCoefficientSweep(unittest.TestCase):
    """Test cases for the deterministic coefficient sweep"""

    def test_order_and_count(self):
        """Test units come first and the sweep covers the bound without repeats"""
        vectors = list(coefficient_sweep(2, 1))
        self.assertEqual(vectors[:3], [(1, 0), (0, 1), (1, 1)])
        self.assertEqual(len(vectors), 8)
        self.assertEqual(len(set(vectors)), 8)

    def test_limit(self):
        """Test the sweep stops at the limit"""
        self.assertEqual(len(list(coefficient_sweep(3, 2, limit=5))), 5)


class TestIndecomposability(unittest.TestCase):
    """Test cases for endomorphism rings and indecomposability"""

    @classmethod
    def setUpClass(cls):
        cls.algebra = load_algebra(os.path.join(DATA, 'a3.json'))
        cls.kronecker = load_algebra(os.path.join(DATA, 'kronecker.json'))

    def test_projective_is_indecomposable(self):
        """Test P(3) has a local endomorphism ring"""
        ring = endomorphism_ring(projective(self.algebra, "3"))
        self.assertEqual(ring.dimension, 1)
        self.assertTrue(is_indecomposable(projective(self.algebra, "3")))

    def test_sum_is_decomposable(self):
        """Test a direct sum has a larger top"""
        total, _, _ = direct_sum([projective(self.algebra, "2"), simple(self.algebra, "3")])
        self.assertFalse(is_indecomposable(total))
        self.assertFalse(is_indecomposable(Representation(self.algebra, {})))

    def test_local_but_not_simple(self):
        """Test the Kronecker module with both arrows the identity is indecomposable"""
        module = kronecker_module(self.kronecker, [[1]], [[1]])
        self.assertTrue(is_indecomposable(module))

    def test_regular_modules_are_orthogonal(self):
        """Test Hom between regular modules at different parameters vanishes"""
        left = kronecker_module(self.kronecker, [[1]], [[0]])
        right = kronecker_module(self.kronecker, [[1]], [[1]])
        self.assertFalse(isomorphic_indecomposables(left, right))
        self.assertFalse(is_isomorphic(left, right))


class TestDecompose(unittest.TestCase):
    """Test cases for Krull-Schmidt decomposition"""

    @classmethod
    def setUpClass(cls):
        cls.algebra = load_algebra(os.path.join(DATA, 'a3.json'))
        cls.kronecker = load_algebra(os.path.join(DATA, 'kronecker.json'))

    def test_two_summands(self):
        """Test P(2) + S(3) splits into two classes"""
        total, _, _ = direct_sum([projective(self.algebra, "2"), simple(self.algebra, "3")])
        result = decompose(total)
        self.assertEqual(result.size, 2)
        self.assertTrue(result.is_basic)
        self.assertTrue(result.verify())
        vectors = sorted(m.dimension_vector() for m, _ in result.summands)
        self.assertEqual(vectors, [(0, 0, 1), (1, 1, 0)])

    def test_multiplicity(self):
        """Test repeated summands are grouped"""
        module = direct_power(injective(self.algebra, "2"), 3)
        result = decompose(module)
        self.assertEqual(result.size, 1)
        self.assertEqual(result.summands[0][1], 3)
        self.assertFalse(result.is_basic)
        self.assertFalse(is_basic(module))
        self.assertEqual(len(result.pieces), 3)

    def test_zero_module(self):
        """Test the zero module has no summands"""
        result = decompose(Representation(self.algebra, {}))
        self.assertEqual(result.size, 0)
        self.assertTrue(result.verify())

    def test_twisted_sum(self):
        """Test a sum presented in a non-diagonal basis still splits"""
        module = Representation(self.algebra, {"1": 2, "2": 1},
                                {"α": Matrix.from_rows([[1], [1]])})
        result = decompose(module)
        self.assertEqual(sorted(m.dimension_vector() for m, _ in result.summands), [(1, 0, 0), (1, 1, 0)])

    def test_non_split_endomorphism_ring(self):
        """Test a module whose endomorphism ring is Q(i) cannot be split"""
        module = kronecker_module(self.kronecker, [[1, 0], [0, 1]], [[0, -1], [1, 0]])
        self.assertEqual(endomorphism_ring(module).top_dimension, 2)
        with self.assertRaises(errors.NonSplitEndomorphismError) as ctx:
            decompose(module)
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_reassemble(self):
        """Test the summands reassemble to an isomorphic module"""
        total, _, _ = direct_sum([simple(self.algebra, "3"), projective(self.algebra, "2"),
                                  simple(self.algebra, "3")])
        rebuilt, iso = reassemble(decompose(total))
        self.assertIsNotNone(iso)
        self.assertTrue(iso.is_isomorphism())
        self.assertTrue(iso.is_homomorphism())


class TestIsomorphism(unittest.TestCase):
    """Test cases for isomorphism search"""

    @classmethod
    def setUpClass(cls):
        cls.algebra = load_algebra(os.path.join(DATA, 'a3.json'))

    def test_shorthand_aliases(self):
        """Test P(1) = S(1) and P(3) = I(1) on the linear quiver"""
        self.assertTrue(is_isomorphic(projective(self.algebra, "1"), simple(self.algebra, "1")))
        self.assertTrue(is_isomorphic(projective(self.algebra, "3"), injective(self.algebra, "1")))
        self.assertFalse(is_isomorphic(projective(self.algebra, "2"), injective(self.algebra, "2")))

    def test_order_of_summands(self):
        """Test sums in different orders are isomorphic"""
        left, _, _ = direct_sum([projective(self.algebra, "2"), simple(self.algebra, "3")])
        right, _, _ = direct_sum([simple(self.algebra, "3"), projective(self.algebra, "2")])
        iso = find_isomorphism(left, right)
        self.assertIsNotNone(iso)
        self.assertTrue(iso.is_isomorphism())

    def test_different_dimension_vectors(self):
        """Test modules with different dimension vectors are never isomorphic"""
        self.assertIsNone(find_isomorphism(simple(self.algebra, "2"), simple(self.algebra, "3")))

    def test_algebra_mismatch(self):
        """Test comparing modules over different algebras"""
        other = load_algebra(os.path.join(DATA, 'a3.json'))
        with self.assertRaises(errors.AlgebraMismatchError):
            find_isomorphism(simple(self.algebra, "1"), simple(other, "1"))


if __name__ == '__main__':
    # Configure logging to reduce noise during tests
    import logging
    logging.getLogger().setLevel(logging.CRITICAL)

    # Run the tests
    unittest.main(verbosity=2)
