import unittest
import sys
import os
from collections import Counter

# Add the src directory to the path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
src_path = os.path.join(project_root, 'src')
sys.path.insert(0, src_path)

import errors
from quiver_algebra import load_algebra
from representation import simple, projective, injective, direct_sum
from ar_enum import IndecUniverse, enumerate_indecomposables, ar_quiver_dot

DATA = os.path.join(project_root, 'data')


class TestEnumerateA3(unittest.TestCase):
    """Test cases for the universe of the linear quiver 1 <- 2 <- 3"""

    @classmethod
    def setUpClass(cls):
        cls.algebra = load_algebra(os.path.join(DATA, 'a3.json'))
        cls.universe = enumerate_indecomposables(cls.algebra)

    def test_labels(self):
        """Test six indecomposables labelled with P before S before I"""
        self.assertEqual(self.universe.labels, ["P(1)", "P(2)", "P(3)", "S(2)", "S(3)", "I(2)"])
        self.assertTrue(self.universe.complete)

    def test_aliases(self):
        """Test coinciding shorthands resolve to the first label"""
        self.assertEqual(self.universe.canonical("S(1)"), "P(1)")
        self.assertEqual(self.universe.canonical("I(1)"), "P(3)")
        self.assertEqual(self.universe.canonical("I(3)"), "S(3)")
        self.assertEqual(self.universe.entry("P(3)").aliases, ["I(1)"])
        with self.assertRaises(errors.InputError):
            self.universe.entry("P(9)")

    def test_flags_and_translates(self):
        """Test projective/injective flags and the tau links"""
        p3 = self.universe.entry("P(3)")
        self.assertTrue(p3.is_projective and p3.is_injective)
        self.assertEqual(self.universe.entry("S(2)").tau, "P(1)")
        self.assertEqual(self.universe.entry("I(2)").tau, "P(2)")
        self.assertEqual(self.universe.entry("S(2)").tau_inverse, "S(3)")
        self.assertIsNone(self.universe.entry("P(1)").tau)

    def test_irreducible_maps(self):
        """Test the six arrows of the AR quiver"""
        expected = {("P(1)", "P(2)"), ("P(2)", "P(3)"), ("P(2)", "S(2)"),
                    ("P(3)", "I(2)"), ("S(2)", "I(2)"), ("I(2)", "S(3)")}
        self.assertEqual(self.universe.irreducible, expected)
        self.assertEqual(len(self.universe.components()), 1)

    def test_identify_and_decompose(self):
        """Test identifying modules and splitting them into labels"""
        self.assertEqual(self.universe.identify(simple(self.algebra, "1")), "P(1)")
        total, _, _ = direct_sum([projective(self.algebra, "2"), simple(self.algebra, "3"),
                                  projective(self.algebra, "2")])
        self.assertEqual(self.universe.decompose_to_labels(total), Counter({"P(2)": 2, "S(3)": 1}))

    def test_hom_dimension_cache(self):
        """Test Hom dimensions through labels and aliases"""
        self.assertEqual(self.universe.hom_dimension("S(1)", "P(3)"), 1)
        self.assertEqual(self.universe.hom_dimension("P(3)", "P(1)"), 0)

    def test_json_round_trip(self):
        """Test the universe survives its JSON document"""
        again = IndecUniverse.from_json(self.algebra, self.universe.to_json())
        self.assertEqual(again.labels, self.universe.labels)
        self.assertEqual(again.canonical("I(1)"), "P(3)")
        self.assertEqual(again.irreducible, self.universe.irreducible)

    def test_dot(self):
        """Test DOT output has every node and both edge styles"""
        text = ar_quiver_dot(self.universe)
        self.assertTrue(text.startswith("digraph ar_quiver {"))
        self.assertIn('"I(2)" [label="I(2)\\n(0,1,1)"];', text)
        self.assertIn('"P(1)" -> "P(2)" [style=solid];', text)
        self.assertIn('"S(2)" -> "P(1)" [style=dotted];', text)


class TestEnumerateOthers(unittest.TestCase):
    """Test cases for other algebras and the caps"""

    def test_gentle_algebra(self):
        """Test the gentle algebra with a zero relation has eight indecomposables"""
        algebra = load_algebra(os.path.join(DATA, 'gentle8.json'))
        universe = enumerate_indecomposables(algebra)
        self.assertEqual(len(universe), 8)
        self.assertEqual(universe.labels[:4], ["P(1)", "P(2)", "P(3)", "P(4)"])
        self.assertEqual(universe.identify(injective(algebra, "1")), "I(1)")

    def test_dim_cap_at_largest_indecomposable(self):
        """Test a dim cap equal to the largest indecomposable ignores larger middle terms"""
        algebra = load_algebra(os.path.join(DATA, 'gentle8.json'))
        universe = enumerate_indecomposables(algebra, dim_cap=3)
        self.assertEqual(len(universe), 8)
        self.assertTrue(universe.complete)
        self.assertEqual(max(e.module.total_dimension for e in universe), 3)
        self.assertIn(("P(1)", "P(2)"), universe.irreducible)
        with self.assertRaises(errors.CapExceededError):
            enumerate_indecomposables(algebra, dim_cap=2)

    def test_disconnected_algebra(self):
        """Test each component is closed separately"""
        from quiver_algebra import algebra_from_dict
        algebra = algebra_from_dict({"vertices": ["1", "2", "3"],
                                     "arrows": [{"name": "a", "from": "2", "to": "1"}]})
        universe = enumerate_indecomposables(algebra)
        self.assertEqual(len(universe), 4)
        self.assertEqual(len(universe.components()), 2)

    def test_kronecker_trips_the_cap(self):
        """Test the representation-infinite Kronecker algebra stops at the caps"""
        algebra = load_algebra(os.path.join(DATA, 'kronecker.json'))
        with self.assertRaises(errors.CapExceededError) as ctx:
            enumerate_indecomposables(algebra, dim_cap=12, count_cap=40)
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_bad_caps(self):
        """Test non-positive caps are rejected"""
        algebra = load_algebra(os.path.join(DATA, 'a3.json'))
        with self.assertRaises(errors.PreconditionError):
            enumerate_indecomposables(algebra, dim_cap=0)


if __name__ == '__main__':
    # Configure logging to reduce noise during tests
    import logging
    logging.getLogger().setLevel(logging.CRITICAL)

    # Run the tests
    unittest.main(verbosity=2)
