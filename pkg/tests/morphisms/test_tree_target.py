"""TestTreeTarget"""
import unittest
from fractions import Fraction

from tropls.common.constants import LocationKind, VerdictKind
from tropls.common.custom_exceptions import InputException, UnsupportedException
from tropls.graphs.divisor import Divisor
from tropls.graphs.metric_graph import MetricGraph, Point, TangentVector
from tropls.graphs.pl_function import PLFunction
from tropls.matroids.matroid import ValuatedCircuit, ValuatedMatroid
from tropls.morphisms.tree_target import (
    DEGREE_TABLE_COLUMNS,
    harmonic_morphism,
    local_degree,
    plucker_vector,
    primitive,
    rank1_tree_target,
    tree_edge_degrees,
)
from tropls.series.trop_module import TropicalSubmodule


class TestTreeTarget(unittest.TestCase):
    """
    Testing the TreeTarget class and the balancing check.
    """

    def setUp(self):
        """
        Setting up the environment
        """
        self.graph = MetricGraph.build(["x", "y"], [("e", "x", "y", 1)])
        self.x = Point(vertex="x")
        self.zero = PLFunction.constant(self.graph)
        self.ramp = PLFunction(self.graph, {"e": [(0, 0), (1, 1)]})
        self.module = TropicalSubmodule(Divisor(self.graph, {self.x: 1}), (self.zero, self.ramp))
        self.line = ValuatedMatroid(
            ("0", "1", "2"), (ValuatedCircuit.of({"0": "1/2", "1": 0, "2": "1/2"}),)
        )

    def test_primitive(self):
        """
        Tests the primitive method on a scaled direction and on a constant vector
        """
        self.assertEqual(((0, 1), Fraction(2)), primitive([Fraction(2), Fraction(4)]))
        self.assertEqual(((1, 0, 2), Fraction(1, 2)), primitive([Fraction(1, 2), Fraction(0), Fraction(1)]))
        self.assertEqual(((0, 0), Fraction(0)), primitive([Fraction(3), Fraction(3)]))

    def test_plucker_vector(self):
        """
        Tests the plucker_vector method on a single 3-element circuit
        """
        plucker = plucker_vector(self.line)
        self.assertEqual(Fraction(0), plucker[frozenset((0, 1))])
        self.assertEqual(Fraction(-1, 2), plucker[frozenset((0, 2))])
        self.assertEqual(Fraction(0), plucker[frozenset((1, 2))])

    def test_rank1_tree_target_on_three_elements(self):
        """
        Tests the rank1_tree_target method and locate on a tropical line with one node
        """
        tree = rank1_tree_target(self.line)
        self.assertEqual({"n0": (Fraction(0), Fraction(1, 2), Fraction(0))}, tree.nodes)
        self.assertEqual((), tree.edges)
        self.assertEqual(["to0", "to1", "to2"], [ray.id for ray in tree.rays])
        self.assertEqual(LocationKind.NODE, tree.locate([1, Fraction(3, 2), 1]).kind)
        location = tree.locate([5, Fraction(1, 2), 0])
        self.assertEqual(LocationKind.RAY, location.kind)
        self.assertEqual("to0", location.name)
        self.assertEqual(Fraction(5), location.parameter)
        self.assertEqual(LocationKind.OUTSIDE, tree.locate([0, 1, 2]).kind)
        self.assertEqual(3, len(tree.directions_at(tree.locate([0, Fraction(1, 2), 0]))))

    def test_rank1_tree_target_on_two_elements(self):
        """
        Tests the rank1_tree_target method when the target is the tropical projective line
        """
        tree = rank1_tree_target(ValuatedMatroid(("0", "1"), ()))
        self.assertEqual(1, len(tree.nodes))
        self.assertEqual([(1, 0), (0, 1)], [ray.direction for ray in tree.rays])

    def test_rank1_tree_target_rejects_other_ranks(self):
        """
        Tests the rank1_tree_target method with a rank-3 matroid and a non-simple one
        """
        with self.assertRaises(InputException):
            rank1_tree_target(ValuatedMatroid(("0", "1", "2"), ()))
        with self.assertRaises(UnsupportedException):
            rank1_tree_target(ValuatedMatroid(("0", "1", "2"), (ValuatedCircuit.of({"0": 0, "1": 0}),)))

    def test_local_degree(self):
        """
        Tests the local_degree method along the interval
        """
        self.assertEqual(1, local_degree(self.module, TangentVector(self.x, "e", True)))
        flat = self.module.with_generators((self.zero,))
        with self.assertRaises(UnsupportedException):
            local_degree(flat, TangentVector(self.x, "e", True))

    def test_harmonic_morphism(self):
        """
        Tests the harmonic_morphism method on the degree-1 map of an interval to the projective line
        """
        morphism = harmonic_morphism(self.module)
        self.assertTrue(morphism.report.passed)
        self.assertEqual(VerdictKind.PASS, morphism.report.finiteness.kind)
        self.assertEqual(DEGREE_TABLE_COLUMNS, list(morphism.report.degree_table.columns))
        self.assertEqual([1, 1, 1, 1], morphism.report.degree_table["degree"].tolist())
        self.assertEqual(1, len(morphism.target.nodes))

    def test_tree_edge_degrees(self):
        """
        Tests the tree_edge_degrees method, which reads a degree of one on both rays of the line
        """
        self.assertEqual({"to0": 1, "to1": 1}, tree_edge_degrees(harmonic_morphism(self.module)))


if __name__ == "__main__":
    unittest.main()
