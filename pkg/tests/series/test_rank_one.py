"""TestRankOne"""
import unittest

from numpy.random import default_rng

from tropls.common.custom_exceptions import InputException, PreconditionException
from tropls.common.settings import TLSConfig
from tropls.graphs.divisor import Divisor
from tropls.graphs.metric_graph import MetricGraph, Point
from tropls.graphs.pl_function import PLFunction
from tropls.series.rank_one import (
    divisors_through,
    edge_extremal_functions,
    finite_vertex_set,
    interval_rank1_builder,
    rank1_canonical_generators,
    rank1_obstruction,
)
from tropls.series.tls import TLSVerifier
from tropls.series.trop_module import TropicalSubmodule, membership


class TestRankOne(unittest.TestCase):
    """
    Testing the rank-1 constructions.
    """

    def setUp(self):
        """
        Setting up the environment
        """
        self.graph = MetricGraph.build(["x", "y"], [("e", "x", "y", 1)])
        self.x = Point(vertex="x")
        self.y = Point(vertex="y")
        self.zero = PLFunction.constant(self.graph)
        self.ramp = PLFunction(self.graph, {"e": [(0, 0), (1, 1)]})
        self.bent = PLFunction(self.graph, {"e": [(0, "-1/2"), ("1/2", 0), (1, 0)]})
        self.module = TropicalSubmodule(Divisor(self.graph, {self.x: 1}), (self.zero, self.ramp, self.bent))
        self.verifier = TLSVerifier(TLSConfig(samples=10), default_rng(0))

    def test_edge_extremal_functions(self):
        """
        Tests the edge_extremal_functions method for both slope positions
        """
        self.assertEqual(self.zero, edge_extremal_functions(self.module, "e", 0))
        self.assertEqual(self.ramp, edge_extremal_functions(self.module, "e", 1))
        with self.assertRaises(InputException):
            edge_extremal_functions(self.module, "e", 2)
        with self.assertRaises(InputException):
            edge_extremal_functions(self.module, "f", 0)

    def test_rank1_canonical_generators(self):
        """
        Tests the rank1_canonical_generators method against the original generators
        """
        canonical = rank1_canonical_generators(self.module, self.verifier)
        self.assertEqual((self.zero, self.ramp), canonical.generators)
        for generator in self.module.generators:
            self.assertIsNotNone(membership(generator, canonical))

    def test_rank1_canonical_generators_precondition(self):
        """
        Tests the rank1_canonical_generators method when the module is not a series
        """
        constant = TropicalSubmodule(self.module.divisor, (self.zero,))
        with self.assertRaises(PreconditionException):
            rank1_canonical_generators(constant, self.verifier)

    def test_interval_rank1_builder(self):
        """
        Tests the interval_rank1_builder method with w_0 before and beyond w_1
        """
        divisor = Divisor(self.graph, {self.x: 2})
        early = interval_rank1_builder(self.graph, divisor, self.graph.point("e", "1/4"), self.graph.point("e", "3/4"))
        late = interval_rank1_builder(self.graph, divisor, self.graph.point("e", "3/4"), self.graph.point("e", "1/4"))
        self.assertEqual(2, len(early))
        self.assertEqual(3, len(late))
        self.assertTrue(self.verifier.verify(late, 1).passed)
        with self.assertRaises(InputException):
            interval_rank1_builder(self.graph, Divisor(self.graph, {self.x: 1}), self.x, self.y)

    def test_interval_rank1_builder_moves_divisor(self):
        """
        Tests the interval_rank1_builder method when the divisor is not supported at the tail
        """
        divisor = Divisor(self.graph, {self.y: 1, self.graph.point("e", "1/2"): 1})
        module = interval_rank1_builder(self.graph, divisor, self.graph.point("e", "1/4"), self.graph.point("e", "3/4"))
        self.assertEqual(divisor, module.divisor)
        self.assertTrue(all(module.divisor_of(generator).is_effective() for generator in module.generators))

    def test_rank1_obstruction(self):
        """
        Tests the rank1_obstruction method on a loop and on a divisor of rank 0
        """
        circle = MetricGraph.build(["v"], [("e", "v", "v", 1)])
        self.assertIsNone(rank1_obstruction(Divisor(circle, {Point(vertex="v"): 2})))
        with self.assertRaises(PreconditionException):
            rank1_obstruction(Divisor(circle, {Point(vertex="v"): 1}))

    def test_finite_vertex_set(self):
        """
        Tests the finite_vertex_set method on the interval series
        """
        self.assertEqual([self.x, self.y], finite_vertex_set(self.module))

    def test_divisors_through(self):
        """
        Tests the divisors_through method at an interior point
        """
        middle = self.graph.point("e", "1/2")
        self.assertEqual([Divisor(self.graph, {middle: 1})], divisors_through(self.module, middle))
        self.assertEqual([Divisor(self.graph, {self.y: 1})], divisors_through(self.module, self.y))


if __name__ == "__main__":
    unittest.main()
