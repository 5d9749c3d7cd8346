"""TestCartwright"""
import unittest
from fractions import Fraction

from tropls.common.constants import CombinationKind
from tropls.graphs.metric_graph import Point, TangentVector
from tropls.matroids.cartwright import cartwright_series, flat_name, levi_graph
from tropls.matroids.matroid import Matroid


class TestCartwright(unittest.TestCase):
    """
    Testing the Levi graph and the series of element functions.
    """

    def setUp(self):
        """
        Setting up the environment
        """
        self.matroid = Matroid.uniform(3, ["1", "2", "3", "4"])
        self.series = cartwright_series(self.matroid)

    def test_levi_graph(self):
        """
        Tests the levi_graph method on U(3, 4)
        """
        graph = levi_graph(self.matroid)
        self.assertEqual(10, len(graph.vertices))
        self.assertEqual(12, len(graph.edges))
        self.assertEqual(3, graph.genus())
        self.assertIn("f:1,2", graph.vertices)
        self.assertEqual(3, graph.valence("1"))
        self.assertEqual("f:2,4", flat_name(frozenset({"4", "2"}), self.matroid.elements))

    def test_element_functions(self):
        """
        Tests the values of the element functions at element and flat vertices
        """
        phi = self.series.element_functions["1"]
        self.assertEqual(Fraction(2), phi.value_at(Point(vertex="1")))
        self.assertEqual(Fraction(1), phi.value_at(Point(vertex="f:1,3")))
        self.assertEqual(Fraction(0), phi.value_at(Point(vertex="f:2,3")))
        self.assertEqual(Fraction(0), phi.value_at(Point(vertex="2")))
        self.assertEqual(4, self.series.divisor.degree())

    def test_flat_function(self):
        """
        Tests the flat_function method
        """
        function = self.series.flat_function(frozenset({"1", "2"}))
        self.assertEqual(Fraction(1), function.value_at(Point(vertex="f:1,2")))
        self.assertEqual(Fraction(0), function.value_at(Point(vertex="1")))
        self.assertEqual(Fraction(0), function.value_at(Point(vertex="f:3,4")))

    def test_circuit_dependences(self):
        """
        Tests the circuit_dependences method, where every circuit gives a dependence
        """
        results = self.series.circuit_dependences()
        self.assertEqual(1, len(results))
        self.assertEqual(frozenset({"1", "2", "3", "4"}), results[0][0])
        self.assertEqual(CombinationKind.DEPENDENCE, results[0][1].kind)

    def test_axiom3_witness(self):
        """
        Tests the axiom3_witness method at an element and at a flat
        """
        away = TangentVector(Point(vertex="1"), "1-f:1,2", True)
        witness = self.series.axiom3_witness(away, 1)
        self.assertEqual(4, len(witness))
        self.assertEqual(self.series.element_functions["1"], witness.generators[0])
        toward = TangentVector(Point(vertex="f:1,2"), "1-f:1,2", False)
        self.assertEqual(6, len(self.series.axiom3_witness(toward, 1)))
        self.assertIsNone(self.series.axiom3_witness(away, 0))


if __name__ == "__main__":
    unittest.main()
