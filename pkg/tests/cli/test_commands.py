"""TestCommands"""
import json
import os
import tempfile
import unittest
from io import StringIO
from unittest import mock

from tropls.cli.commands import build_parser, run
from tropls.fixtures.builders import FANO_LINES


def _function(*breakpoints) -> dict:
    return {"edges": {"e": [{"t": offset, "val": value} for offset, value in breakpoints]}}


class TestCommands(unittest.TestCase):
    """
    Testing the command line interface.
    """

    def setUp(self):
        """
        Setting up the environment
        """
        self._directory = tempfile.TemporaryDirectory()
        self._stderr = mock.patch("sys.stderr", new_callable=StringIO)
        self._stderr.start()
        self.graph = self._write("graph.json", {
            "vertices": ["x", "y"],
            "edges": [{"id": "e", "tail": "x", "head": "y", "length": "1"}],
        })
        self.zero = self._write("zero.json", _function(("0", "0"), ("1", "0")))
        self.ramp = self._write("ramp.json", _function(("0", "0"), ("1", "1")))
        self.bent = self._write("bent.json", _function(("0", "-1/2"), ("1/2", "0"), ("1", "0")))
        self.fall = self._write("fall.json", _function(("0", "1"), ("1", "0")))
        self.module = self._write("module.json", {
            "divisor": {"coeffs": [{"at": {"vertex": "x"}, "n": 1}]},
            "generators": [_function(("0", "0"), ("1", "0")), _function(("0", "0"), ("1", "1"))],
        })

    def tearDown(self):
        """
        Executing after unittests
        """
        self._stderr.stop()
        self._directory.cleanup()

    def _write(self, name: str, data) -> str:
        path = os.path.join(self._directory.name, name)
        with open(path, "w", encoding="utf-8") as target:
            json.dump(data, target)
        return path

    def _run(self, *argv) -> tuple[int, str]:
        stdout = StringIO()
        code = run(list(argv), stdout)
        return code, stdout.getvalue()

    def _run_json(self, *argv) -> tuple[int, dict]:
        code, text = self._run(*argv, "--json")
        return code, json.loads(text)

    def test_parser_requires_a_command(self):
        """
        Tests the build_parser method and run without arguments
        """
        self.assertEqual("rank", build_parser().parse_args(["rank", "-g", "a", "-d", "b"]).command)
        self.assertEqual(2, self._run()[0])

    def test_rank(self):
        """
        Tests the rank command with both oracles on an interval
        """
        divisor = self._write("divisor.json", {"coeffs": [{"at": {"vertex": "x"}, "n": 2}]})
        code, envelope = self._run_json("rank", "-g", self.graph, "-d", divisor, "--brute-force", "--riemann-roch")
        self.assertEqual(0, code)
        self.assertEqual("pass", envelope["status"])
        self.assertEqual(2, envelope["result"]["rank"])
        self.assertEqual(2, envelope["result"]["brute_force_rank"])
        self.assertEqual(0, envelope["result"]["riemann_roch_residual"])
        self.assertEqual(0, envelope["result"]["genus"])

    def test_reduce(self):
        """
        Tests the reduce command, which moves a chip to the base point
        """
        divisor = self._write("divisor.json", {"coeffs": [{"at": {"vertex": "y"}, "n": 1}]})
        code, envelope = self._run_json("reduce", "-g", self.graph, "-d", divisor, "--base", '{"vertex": "x"}')
        self.assertEqual(0, code)
        self.assertEqual({"coeffs": [{"at": {"vertex": "x"}, "n": 1}]}, envelope["result"]["reduced"])
        self.assertTrue(envelope["result"]["effective"])

    def test_dep_decide(self):
        """
        Tests the dep decide command on an independent pair and a dependent triple
        """
        code, text = self._run("dep", "decide", "-g", self.graph, "-f", self.zero, "-f", self.ramp)
        self.assertEqual(1, code)
        self.assertIn("independent", text)
        code, envelope = self._run_json(
            "dep", "decide", "-g", self.graph, "-f", self.zero, "-f", self.ramp, "-f", self.bent
        )
        self.assertEqual(0, code)
        self.assertEqual("dependent", envelope["result"]["kind"])

    def test_dep_verify(self):
        """
        Tests the dep verify command with a valid and with a miscounted coefficient vector
        """
        functions = ["-f", self.zero, "-f", self.ramp, "-f", self.bent]
        code, envelope = self._run_json("dep", "verify", "-g", self.graph, *functions, "--coeffs", "1/2,0,1/2")
        self.assertEqual(0, code)
        self.assertEqual("dependence", envelope["result"]["kind"])
        self.assertEqual(["1/2", "0", "1/2"], envelope["result"]["coefficients"])
        code, envelope = self._run_json("dep", "verify", "-g", self.graph, *functions, "--coeffs", "0,0")
        self.assertEqual(2, code)
        self.assertEqual("input-error", envelope["status"])

    def test_floats_are_input_errors(self):
        """
        Tests the run method when an input file holds a floating point number
        """
        broken = self._write("broken.json", {"coeffs": [{"at": {"edge": "e", "t": 0.5}, "n": 1}]})
        code, envelope = self._run_json("rank", "-g", self.graph, "-d", broken)
        self.assertEqual(2, code)
        self.assertIn("floating point", envelope["result"]["error"])

    def test_tls_verify_with_seed(self):
        """
        Tests the tls verify command with the seed taken from the environment
        """
        with mock.patch.dict(os.environ, {"TROPLS_SEED": "7"}):
            code, envelope = self._run_json("tls", "verify", "-g", self.graph, "-m", self.module, "--rank", "1")
        self.assertEqual(0, code)
        self.assertTrue(envelope["result"]["passed"])
        code, _ = self._run("tls", "verify", "-g", self.graph, "-m", self.module, "--rank", "2", "--seed", "3")
        self.assertEqual(1, code)

    def test_module_member(self):
        """
        Tests the module member command
        """
        code, envelope = self._run_json("module", "member", "-g", self.graph, "-m", self.module, "-f", self.ramp)
        self.assertEqual(0, code)
        self.assertTrue(envelope["result"]["member"])
        code, _ = self._run("module", "member", "-g", self.graph, "-m", self.module, "-f", self.fall)
        self.assertEqual(1, code)

    def test_matroid_commands(self):
        """
        Tests the matroid flats and bergman commands
        """
        fano = self._write("fano.json", {
            "elements": [str(index) for index in range(1, 8)], "lines": [list(line) for line in FANO_LINES]
        })
        code, envelope = self._run_json("matroid", "flats", "-M", fano)
        self.assertEqual(0, code)
        self.assertEqual(7, len(envelope["result"]["flats"]))
        line = self._write("line.json", {
            "elements": ["0", "1", "2"], "valuated_circuits": [{"0": "1/2", "1": "0", "2": "1/2"}]
        })
        self.assertEqual(0, self._run("matroid", "bergman", "-M", line, "--point", "0,1/2,0")[0])
        self.assertEqual(1, self._run("matroid", "bergman", "-M", line, "--point", "0,0,0")[0])

    def test_morph_balance_dot(self):
        """
        Tests the morph balance command, whose DOT output labels the rays with their degrees
        """
        code, text = self._run("morph", "balance", "-g", self.graph, "-m", self.module, "--dot")
        self.assertEqual(0, code)
        self.assertIn("to1 d=1", text)

    def test_example(self):
        """
        Tests the example command with a parameter and with a parameter the fixture does not take
        """
        code, envelope = self._run_json("example", "lollipop", "--m", "3")
        self.assertEqual(0, code)
        self.assertEqual({"m": "3"}, envelope["result"]["params"])
        self.assertEqual(2, envelope["result"]["rank"])
        code, _ = self._run("example", "fano", "--m", "1")
        self.assertEqual(2, code)


if __name__ == "__main__":
    unittest.main()
