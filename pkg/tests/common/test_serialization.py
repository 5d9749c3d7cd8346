"""TestSerialization"""
import os
import tempfile
import unittest
from fractions import Fraction

from pandas import DataFrame

from tropls.common.constants import VerdictKind
from tropls.common.custom_exceptions import InputException
from tropls.common.serialization import (
    divisor_from_json,
    divisor_to_json,
    function_from_json,
    function_to_json,
    graph_from_json,
    graph_to_json,
    loads_json,
    matroid_from_json,
    module_from_json,
    read_json,
    tangent_from_json,
    to_jsonable,
    valuated_matroid_from_json,
)
from tropls.common.verdicts import Verdict
from tropls.graphs.metric_graph import Point


class TestSerialization(unittest.TestCase):
    """
    Testing the JSON forms of the core types.
    """

    def setUp(self):
        """
        Setting up the environment
        """
        self.graph_data = {
            "vertices": ["x", "y"],
            "edges": [{"id": "e", "tail": "x", "head": "y", "length": "3/2"}],
        }
        self.graph = graph_from_json(self.graph_data)

    def test_loads_json_rejects_floats(self):
        """
        Tests the loads_json method with a floating point number and with broken JSON
        """
        self.assertEqual({"t": "1/2"}, loads_json('{"t": "1/2"}'))
        with self.assertRaises(InputException):
            loads_json('{"t": 0.5}')
        with self.assertRaises(InputException):
            loads_json('{"t": ')

    def test_read_json(self):
        """
        Tests the read_json method with an existing and a missing file
        """
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "graph.json")
            with open(path, "w", encoding="utf-8") as target:
                target.write('{"vertices": ["v"], "edges": []}')
            self.assertEqual({"vertices": ["v"], "edges": []}, read_json(path))
            with self.assertRaises(InputException):
                read_json(os.path.join(directory, "missing.json"))

    def test_graph(self):
        """
        Tests the graph_from_json method and its inverse
        """
        self.assertEqual(Fraction(3, 2), self.graph.edge("e").length)
        self.assertEqual(self.graph_data, graph_to_json(self.graph))
        bad = {"vertices": ["x", "y"], "edges": [{"id": "e", "tail": "x", "head": "y", "length": "0"}]}
        with self.assertRaises(InputException):
            graph_from_json(bad)
        with self.assertRaises(InputException):
            graph_from_json({"vertices": ["x"]})

    def test_divisor(self):
        """
        Tests the divisor_from_json method, which merges repeated points
        """
        data = {"coeffs": [
            {"at": {"vertex": "x"}, "n": 1},
            {"at": {"edge": "e", "t": "1/2"}, "n": 2},
            {"at": {"vertex": "x"}, "n": 1},
        ]}
        divisor = divisor_from_json(self.graph, data)
        self.assertEqual(4, divisor.degree())
        self.assertEqual(2, divisor[Point(vertex="x")])
        self.assertEqual(
            {"coeffs": [{"at": {"vertex": "x"}, "n": 2}, {"at": {"edge": "e", "t": "1/2"}, "n": 2}]},
            divisor_to_json(divisor)
        )
        with self.assertRaises(InputException):
            divisor_from_json(self.graph, {"coeffs": [{"at": {"vertex": "x"}, "n": "1"}]})

    def test_function(self):
        """
        Tests the function_from_json method on a tent and on a broken slope
        """
        data = {"edges": {"e": [{"t": "0", "val": "0"}, {"t": "1", "val": "1"}, {"t": "3/2", "val": "1/2"}]}}
        function = function_from_json(self.graph, data)
        self.assertEqual(Fraction(1, 2), function.value_at(Point(vertex="y")))
        self.assertEqual(data, function_to_json(function))
        broken = {"edges": {"e": [{"t": "0", "val": "0"}, {"t": "3/2", "val": "1"}]}}
        with self.assertRaises(InputException):
            function_from_json(self.graph, broken)

    def test_tangent(self):
        """
        Tests the tangent_from_json method, which rejects tangents not leaving their base
        """
        tangent = tangent_from_json(self.graph, {"at": {"vertex": "x"}, "edge": "e", "toward_head": True})
        self.assertEqual("e", tangent.edge)
        with self.assertRaises(InputException):
            tangent_from_json(self.graph, {"at": {"vertex": "y"}, "edge": "e", "toward_head": True})

    def test_module(self):
        """
        Tests the module_from_json method
        """
        data = {
            "divisor": {"coeffs": [{"at": {"vertex": "x"}, "n": 1}]},
            "generators": [
                {"edges": {"e": [{"t": "0", "val": "0"}, {"t": "3/2", "val": "0"}]}},
                {"edges": {"e": [{"t": "0", "val": "0"}, {"t": "3/2", "val": "3/2"}]}},
            ],
        }
        module = module_from_json(self.graph, data)
        self.assertEqual(2, len(module))
        self.assertEqual(1, module.divisor.degree())

    def test_matroids(self):
        """
        Tests the matroid readers with circuits, lines and valuated circuits
        """
        by_circuits = matroid_from_json({"elements": ["1", "2", "3"], "circuits": [["1", "2", "3"]]})
        self.assertEqual(3, len(by_circuits.elements))
        by_lines = matroid_from_json({"elements": ["1", "2", "3", "4"], "lines": [["1", "2", "3"]]})
        self.assertEqual(1, len(by_lines.circuits))
        self.assertEqual(3, by_lines.rank())
        valuated = valuated_matroid_from_json(
            {"elements": ["0", "1", "2"], "valuated_circuits": [{"0": "1/2", "1": "0", "2": "1/2"}]}
        )
        self.assertEqual(2, valuated.rank())
        with self.assertRaises(InputException):
            matroid_from_json({"circuits": []})

    def test_to_jsonable(self):
        """
        Tests the to_jsonable method on nested result values
        """
        verdict = Verdict(VerdictKind.PASS, "ok", None)
        self.assertEqual({"kind": "pass", "reason": "ok", "witness": None}, to_jsonable(verdict))
        self.assertEqual(["1/2", 3, None, True], to_jsonable((Fraction(1, 2), 3, None, True)))
        self.assertEqual({"0,1": "-1/2"}, to_jsonable({frozenset(("0", "1")): Fraction(-1, 2)}))
        self.assertEqual({"vertex": "x"}, to_jsonable(Point(vertex="x")))
        self.assertEqual([{"a": "1/3", "b": "x"}], to_jsonable(DataFrame([{"a": Fraction(1, 3), "b": "x"}])))
        self.assertEqual([1, 2], to_jsonable({2, 1}))


if __name__ == "__main__":
    unittest.main()
