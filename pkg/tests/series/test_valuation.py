"""TestValuation"""
import unittest
from fractions import Fraction

from tropls.common.custom_exceptions import InconsistencyException
from tropls.graphs.divisor import Divisor
from tropls.graphs.metric_graph import MetricGraph, Point
from tropls.graphs.pl_function import PLFunction
from tropls.series.trop_module import TropicalSubmodule
from tropls.series.valuation import rank1_valuated_circuits


class TestValuation(unittest.TestCase):
    """
    Testing the rank1_valuated_circuits method.
    """

    def setUp(self):
        """
        Setting up the environment
        """
        self.graph = MetricGraph.build(["x", "y"], [("e", "x", "y", 1)])
        self.divisor = Divisor(self.graph, {Point(vertex="x"): 1})
        self.zero = PLFunction.constant(self.graph)
        self.ramp = PLFunction(self.graph, {"e": [(0, 0), (1, 1)]})
        self.bent = PLFunction(self.graph, {"e": [(0, "-1/2"), ("1/2", 0), (1, 0)]})

    def test_triple_circuit(self):
        """
        Tests the rank1_valuated_circuits method when three generators are dependent
        """
        module = TropicalSubmodule(self.divisor, (self.zero, self.ramp, self.bent))
        matroid = rank1_valuated_circuits(module)
        self.assertEqual(("0", "1", "2"), matroid.elements)
        self.assertEqual(1, len(matroid.circuits))
        self.assertEqual(frozenset({"0", "1", "2"}), matroid.circuits[0].support())
        self.assertEqual(2, matroid.rank())
        self.assertEqual(
            {"0": Fraction(1, 2), "1": Fraction(0), "2": Fraction(1, 2)}, matroid.circuits[0].as_dict()
        )

    def test_constant_pair(self):
        """
        Tests the rank1_valuated_circuits method when two generators differ by a constant
        """
        module = TropicalSubmodule(self.divisor, (self.zero, self.zero.shift(2)))
        matroid = rank1_valuated_circuits(module)
        self.assertEqual(1, len(matroid.circuits))
        self.assertEqual({"0": Fraction(2), "1": Fraction(0)}, matroid.circuits[0].as_dict())

    def test_independent_triple(self):
        """
        Tests the rank1_valuated_circuits method when a triple is independent
        """
        steep = PLFunction(self.graph, {"e": [(0, 0), (1, 2)]})
        divisor = Divisor(self.graph, {Point(vertex="x"): 2})
        module = TropicalSubmodule(divisor, (self.zero, self.ramp, steep))
        with self.assertRaises(InconsistencyException):
            rank1_valuated_circuits(module)


if __name__ == "__main__":
    unittest.main()
