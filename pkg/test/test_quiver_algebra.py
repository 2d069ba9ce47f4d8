import unittest
import sys
import os

# Add the src directory to the path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
src_path = os.path.join(project_root, 'src')
sys.path.insert(0, src_path)

import errors
from quiver_algebra import Arrow, Path, Quiver, algebra_from_dict, parse_algebra, load_algebra, enumerate_paths

DATA = os.path.join(project_root, 'data')


def linear_a3():
    return algebra_from_dict({
        "vertices": ["1", "2", "3"],
        "arrows": [{"name": "α", "from": "2", "to": "1"}, {"name": "β", "from": "3", "to": "2"}],
    })


class TestAlgebraParsing(unittest.TestCase):
    """Test cases for reading algebra documents"""

    def test_load_data_files(self):
        """Test the bundled algebras load with their known dimensions"""
        expected = {"a3.json": 6, "gentle8.json": 7, "kronecker.json": 4, "commutative6.json": 18}
        for name, dim in expected.items():
            algebra = load_algebra(os.path.join(DATA, name))
            self.assertEqual(algebra.dimension, dim, name)

    def test_comments_allowed(self):
        """Test that line comments in the document are ignored"""
        algebra = parse_algebra('// one vertex\n{"vertices": ["x"]}')
        self.assertEqual(algebra.dimension, 1)
        self.assertEqual(algebra.max_path_length, 0)

    def test_unknown_vertex(self):
        """Test an arrow pointing at a missing vertex"""
        doc = {"vertices": ["1"], "arrows": [{"name": "a", "from": "1", "to": "2"}]}
        with self.assertRaises(errors.UnknownVertexError):
            algebra_from_dict(doc)

    def test_duplicate_arrow(self):
        """Test that arrow names must be unique"""
        doc = {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"},
                                                  {"name": "a", "from": "2", "to": "1"}]}
        with self.assertRaises(errors.ParseError):
            algebra_from_dict(doc)

    def test_non_composable_relation(self):
        """Test a relation whose arrows do not chain"""
        doc = {"vertices": ["1", "2", "3"],
               "arrows": [{"name": "α", "from": "2", "to": "1"}, {"name": "β", "from": "3", "to": "2"}],
               "relations": [[{"path": ["α", "β"]}]]}
        with self.assertRaises(errors.NonComposablePathError):
            algebra_from_dict(doc)

    def test_unknown_arrow_in_relation(self):
        """Test a relation naming a missing arrow"""
        doc = {"vertices": ["1"], "relations": [[{"path": ["z"]}]]}
        with self.assertRaises(errors.UnknownArrowError):
            algebra_from_dict(doc)

    def test_mixed_relation(self):
        """Test a relation mixing paths with different endpoints"""
        doc = {"vertices": ["1", "2", "3"],
               "arrows": [{"name": "α", "from": "2", "to": "1"}, {"name": "β", "from": "3", "to": "2"}],
               "relations": [[{"path": ["β", "α"]}, {"coef": "-1", "path": ["α"]}]]}
        with self.assertRaises(errors.MixedRelationError):
            algebra_from_dict(doc)

    def test_zero_coefficient_rejected(self):
        """Test that relation terms need nonzero coefficients"""
        doc = {"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}],
               "relations": [[{"coef": "0", "path": ["x", "x"]}]]}
        with self.assertRaises(errors.ParseError):
            algebra_from_dict(doc)

    def test_syntax_error_exit_code(self):
        """Test that malformed JSON maps to the input exit code"""
        with self.assertRaises(errors.ParseError) as ctx:
            parse_algebra('{"vertices": [1,}')
        self.assertEqual(ctx.exception.exit_code, 2)


class TestPathBasis(unittest.TestCase):
    """Test cases for the residue path basis"""

    def test_linear_basis(self):
        """Test A3 has trivial paths, two arrows and one composite"""
        algebra = linear_a3()
        self.assertEqual([str(p) for p in algebra.basis], ["e1", "e2", "e3", "α", "β", "β·α"])
        self.assertEqual(algebra.max_path_length, 2)
        self.assertEqual(len(algebra.basis_from("3")), 3)
        self.assertEqual(len(algebra.basis_to("3")), 1)

    def test_zero_relation(self):
        """Test that a monomial relation removes the path"""
        algebra = load_algebra(os.path.join(DATA, 'gentle8.json'))
        self.assertEqual(algebra.normal_form(Path("4", "1", ("γ", "β"))), {})
        self.assertEqual(algebra.basis_between("4", "1"), [])

    def test_commutativity_relation(self):
        """Test that both sides of a commutative square share a normal form"""
        algebra = load_algebra(os.path.join(DATA, 'commutative6.json'))
        left = algebra.normal_form(Path("6", "3", ("α", "β")))
        right = algebra.normal_form(Path("6", "3", ("γ", "δ")))
        self.assertEqual(left, right)
        self.assertEqual(len(algebra.basis_between("6", "1")), 1)
        self.assertEqual(algebra.max_path_length, 3)

    def test_multiply(self):
        """Test products of basis paths"""
        algebra = linear_a3()
        beta = Path("3", "2", ("β",))
        alpha = Path("2", "1", ("α",))
        self.assertEqual(algebra.multiply(beta, alpha), {Path("3", "1", ("β", "α")): 1})
        self.assertEqual(algebra.multiply(alpha, beta), {})
        self.assertEqual(algebra.right_multiply(Path("3", "3"), "β"), {beta: 1})
        self.assertEqual(algebra.left_multiply("β", alpha), {Path("3", "1", ("β", "α")): 1})

    def test_truncated_loop(self):
        """Test a loop killed at length two"""
        algebra = algebra_from_dict({"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}],
                                     "relations": [[{"path": ["x", "x"]}]]})
        self.assertEqual(algebra.dimension, 2)

    def test_infinite_dimensional(self):
        """Test that a free loop never stabilizes"""
        doc = {"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]}
        with self.assertRaises(errors.NonTerminationError) as ctx:
            algebra_from_dict(doc, path_length_cap=5)
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_path_explosion(self):
        """Test the path enumeration cap"""
        algebra = load_algebra(os.path.join(DATA, 'kronecker.json'))
        self.assertEqual(len(enumerate_paths(algebra.quiver, 3)), 4)
        doubled = Quiver(["1"], [Arrow("x", "1", "1"), Arrow("y", "1", "1")])
        with self.assertRaises(errors.NonTerminationError):
            enumerate_paths(doubled, 20, max_paths=100)


class TestOpposite(unittest.TestCase):
    """Test cases for the opposite algebra and components"""

    def test_opposite(self):
        """Test reversing arrows keeps dimension and is an involution"""
        algebra = load_algebra(os.path.join(DATA, 'commutative6.json'))
        op = algebra.opposite
        self.assertEqual(op.dimension, algebra.dimension)
        self.assertEqual(op.quiver.arrow("μ").source, "1")
        self.assertIs(op.opposite, algebra)

    def test_components(self):
        """Test connected components of the underlying graph"""
        algebra = algebra_from_dict({"vertices": ["1", "2", "3"],
                                     "arrows": [{"name": "a", "from": "3", "to": "1"}]})
        self.assertEqual(algebra.connected_components(), [["1", "3"], ["2"]])
        self.assertFalse(algebra.is_connected())
        self.assertTrue(linear_a3().is_connected())

    def test_summary(self):
        """Test the summary and the document round trip"""
        algebra = linear_a3()
        summary = algebra.summary()
        self.assertEqual(summary["dimension"], 6)
        self.assertEqual(summary["arrows"], 2)
        again = algebra_from_dict(algebra.to_dict())
        self.assertEqual(again.dimension, 6)


if __name__ == '__main__':
    # Configure logging to reduce noise during tests
    import logging
    logging.getLogger().setLevel(logging.CRITICAL)

    # Run the tests
    unittest.main(verbosity=2)
