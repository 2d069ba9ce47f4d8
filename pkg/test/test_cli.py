import unittest
import sys
import os
import io
import json

# Add the src directory to the path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
src_path = os.path.join(project_root, 'src')
sys.path.insert(0, src_path)

import cli
import config_loader
import module_store

DATA = os.path.join(project_root, 'data')
A3 = os.path.join(DATA, 'a3.json')


def run(*argv):
    """Run the CLI and return (exit code, output text)"""
    stream = io.StringIO()
    code = cli.execute(list(argv), stream)
    return code, stream.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


class TestCliCommands(unittest.TestCase):
    """Test cases for command dispatch and output"""

    def tearDown(self):
        config_loader.config.reset()
        module_store.clear_store()

    def test_check(self):
        """Test the algebra summary"""
        code, doc = run_json("--algebra", A3, "check")
        self.assertEqual(code, 0)
        self.assertTrue(doc["valid"])
        self.assertEqual(doc["algebra"]["dimension"], 6)

    def test_indecs(self):
        """Test the indecomposables listing"""
        code, doc = run_json("--algebra", A3, "indecs")
        self.assertEqual(code, 0)
        self.assertEqual(doc["count"], 6)
        p3 = [item for item in doc["indecomposables"] if item["label"] == "P(3)"][0]
        self.assertEqual(p3["aliases"], ["I(1)"])
        self.assertTrue(p3["injective"])

    def test_hom_and_ext(self):
        """Test Hom and Ext^1 dimensions from shorthands"""
        code, doc = run_json("--algebra", A3, "hom", "P(2)", "P(3)")
        self.assertEqual((code, doc["dim"]), (0, 1))
        code, doc = run_json("--algebra", A3, "ext", "S(2)", "S(1)")
        self.assertEqual((code, doc["dim"]), (0, 1))

    def test_translates(self):
        """Test tau and tau-minus report universe summands"""
        code, doc = run_json("--algebra", A3, "tau", "S(2)")
        self.assertEqual(doc["tau"]["summands"], {"P(1)": 1})
        code, doc = run_json("--algebra", A3, "tau-minus", "P(2)")
        self.assertEqual(doc["tau_inverse"]["summands"], {"I(2)": 1})

    def test_tau_rigid_exit_codes(self):
        """Test a failed rigidity check exits with 1"""
        code, doc = run_json("--algebra", A3, "tau-rigid", "S(2)+S(3)")
        self.assertEqual(code, 1)
        self.assertFalse(doc["tau_rigid"])
        code, doc = run_json("--algebra", A3, "tau-rigid", "--minus", "P(3)")
        self.assertEqual(code, 0)
        self.assertTrue(doc["tau_minus_rigid"])

    def test_torsion_commands(self):
        """Test closure and pair completion"""
        code, doc = run_json("--algebra", A3, "torsion-closure", "--gens", "P(2)")
        self.assertEqual(doc, {"torsion": ["P(2)", "S(2)"], "free": ["P(1)", "S(3)"]})
        code, doc = run_json("--algebra", A3, "pair-complete", '{"mode": "add", "modules": ["P(2)"]}')
        self.assertEqual(code, 1)
        self.assertEqual(doc["error"], "not-torsion-class")
        self.assertEqual(doc["witness"]["summand"], "S(2)")

    def test_family_commands(self):
        """Test nested verification, classification and strata on the A3 family"""
        family = os.path.join(DATA, 'a3_family.json')
        dec = '{"parts": ["P(2)+S(2)", "P(1)"]}'
        code, doc = run_json("--algebra", A3, "nested-verify", family)
        self.assertEqual(code, 0)
        self.assertEqual(doc["witnesses"], [{"k": "1", "l": "2", "module": "P(2)"}])
        code, doc = run_json("--algebra", A3, "classify", "--dec", dec, "--family", family)
        self.assertEqual((code, doc["inM"], doc["inMstar"], doc["inMdagger"]), (0, True, False, True))
        code, doc = run_json("--algebra", A3, "stratum", "--dec", dec, "--family", family)
        self.assertEqual(doc["parts"]["1"]["summands"], {"S(2)": 2})
        code, doc = run_json("--algebra", A3, "induce", "--dec", dec, "--family", family)
        self.assertEqual(doc["systems"], [{"order": ["1", "2"], "modules": {"1": "S(2)", "2": "P(1)"}}])
        code, doc = run_json("--algebra", A3, "expands", family, family)
        self.assertEqual((code, doc["expands"]), (0, True))

    def test_induced_families(self):
        """Test the certificate, the hom witness and the hypothesis failure of induced-families"""
        code, doc = run_json("--algebra", A3, "induced-families", "--dec", '{"parts": ["P(1)", "S(2)"]}')
        self.assertEqual(code, 0)
        self.assertEqual(doc["certificate"]["distinct"], {"k": "1", "module": "P(1)"})
        code, doc = run_json("--algebra", A3, "induced-families", "--dec", '{"parts": ["I(2)", "P(2)"]}')
        self.assertEqual(code, 0)
        self.assertFalse(doc["hom_orthogonal"])
        self.assertEqual(doc["hom_witness"], {"i": "1", "j": "2", "hom_dim": 1})
        self.assertNotIn("certificate", doc)
        code, doc = run_json("--algebra", A3, "induced-families", "--dec", '{"parts": ["P(2)+S(2)", "P(1)"]}')
        self.assertEqual(code, 1)
        self.assertEqual(doc["sub"]["error"], "hypothesis")
        self.assertIn("classes", doc["fac"])

    def test_system_commands(self):
        """Test verification, recovery and filtration with the A3 system"""
        system = os.path.join(DATA, 'a3_system.json')
        code, doc = run_json("--algebra", A3, "verify-ss", system)
        self.assertEqual((code, doc["modules"]), (0, {"1": "S(2)", "2": "P(1)"}))
        code, doc = run_json("--algebra", A3, "recover", system)
        self.assertTrue(doc["inMdagger"] and doc["inNdagger"])
        code, doc = run_json("--algebra", A3, "filtration", "P(2)", system)
        self.assertEqual(doc["multiplicities"], {"S(2)": 1, "P(1)": 1})

    def test_pipelines(self):
        """Test orderings and the tau-rigid pipeline"""
        code, doc = run_json("--algebra", A3, "tf-orderings", "P(2)+S(2)")
        self.assertEqual(doc["orderings"], [["P(2)", "S(2)"]])
        code, doc = run_json("--algebra", A3, "tau-pipeline", "P(2)+S(2)")
        self.assertEqual(doc["count"], 1)
        code, doc = run_json("--algebra", A3, "count-families", "P(2)+S(2)")
        self.assertEqual(doc["distinct"], 2)

    def test_opposite(self):
        """Test the opposite algebra document"""
        code, doc = run_json("--algebra", A3, "opposite")
        arrows = {a["name"]: (a["from"], a["to"]) for a in doc["arrows"]}
        self.assertEqual(arrows["α"], ("1", "2"))

    def test_dot_output(self):
        """Test DOT is only accepted for the AR quiver"""
        code, text = run("--algebra", A3, "--output", "dot", "ar-quiver")
        self.assertEqual(code, 0)
        self.assertTrue(text.startswith("digraph ar_quiver {"))
        code, _ = run("--algebra", A3, "--output", "dot", "hom", "P(1)", "P(2)")
        self.assertEqual(code, 2)

    def test_text_output(self):
        """Test the text renderer"""
        code, text = run("--algebra", A3, "--output", "text", "ext", "S(2)", "S(1)")
        self.assertEqual(code, 0)
        self.assertEqual(text, "dim: 1\n")


class TestCliErrors(unittest.TestCase):
    """Test cases for exit codes on failures"""

    def tearDown(self):
        config_loader.config.reset()
        module_store.clear_store()

    def test_usage_errors(self):
        """Test bad arguments and a missing algebra"""
        code, _ = run("no-such-command")
        self.assertEqual(code, 2)
        code, doc = run_json("indecs")
        self.assertEqual(code, 2)
        self.assertEqual(doc["error"], "usage")

    def test_missing_file(self):
        """Test an unreadable algebra file"""
        code, doc = run_json("--algebra", os.path.join(DATA, 'missing.json'), "check")
        self.assertEqual((code, doc["error"]), (2, "io"))

    def test_unknown_vertex(self):
        """Test shorthands at unknown vertices"""
        code, doc = run_json("--algebra", A3, "hom", "P(9)", "P(1)")
        self.assertEqual((code, doc["error"]), (2, "unknown-vertex"))

    def test_missing_config(self):
        """Test an unreadable configuration file"""
        code, _ = run("--config", os.path.join(DATA, 'missing.jsonc'), "--algebra", A3, "check")
        self.assertEqual(code, 2)

    def test_cap_exceeded(self):
        """Test the Kronecker algebra trips the caps with exit code 3"""
        code, doc = run_json("--config", os.path.join(DATA, 'small_caps.jsonc'),
                             "--algebra", os.path.join(DATA, 'kronecker.json'), "indecs")
        self.assertEqual((code, doc["error"]), (3, "cap-exceeded"))


if __name__ == '__main__':
    # Configure logging to reduce noise during tests
    import logging
    logging.getLogger().setLevel(logging.CRITICAL)

    # Run the tests
    unittest.main(verbosity=2)
