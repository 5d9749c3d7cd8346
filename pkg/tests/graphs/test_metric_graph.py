"""TestMetricGraph"""
import unittest
from fractions import Fraction

from tropls.common.custom_exceptions import InputException
from tropls.graphs.metric_graph import MetricGraph, Point, Ray, TangentVector


class TestMetricGraph(unittest.TestCase):
    """
    Testing the MetricGraph class.
    """

    def setUp(self):
        """
        Setting up the environment
        """
        self.interval = MetricGraph.build(["x", "y"], [("e", "x", "y", "2")])
        self.circle = MetricGraph.build(["v"], [("e", "v", "v", 1)])
        self.theta = MetricGraph.build(
            ["u", "w"], [("a", "u", "w", 1), ("b", "u", "w", "1/2"), ("c", "w", "u", 3)]
        )

    def test_build_rejects_bad_input(self):
        """
        Tests the build method when lengths, vertices or connectivity are wrong
        """
        with self.assertRaises(InputException):
            MetricGraph.build(["x", "y"], [("e", "x", "y", 0)])
        with self.assertRaises(InputException):
            MetricGraph.build(["x", "y"], [("e", "x", "z", 1)])
        with self.assertRaises(InputException):
            MetricGraph.build(["x", "y"], [])
        with self.assertRaises(InputException):
            MetricGraph.build(["x", "y"], [("e", "x", "y", 0.5)])
        with self.assertRaises(InputException):
            MetricGraph.build([], [])

    def test_genus(self):
        """
        Tests the genus method on a tree, a loop and a graph with parallel edges
        """
        self.assertEqual(0, self.interval.genus())
        self.assertEqual(1, self.circle.genus())
        self.assertEqual(2, self.theta.genus())
        self.assertEqual(Fraction(9, 2), self.theta.total_length())

    def test_genus_with_rays(self):
        """
        Tests the genus method when the graph carries a ray
        """
        graph = MetricGraph.build(["x", "y"], [("e", "x", "y", 1)], [Ray("r", "y")])
        self.assertEqual(2, graph.valence("y"))
        with self.assertRaises(InputException):
            graph.genus()

    def test_point_is_canonical(self):
        """
        Tests the point method when the offset is an end of the edge or off the edge
        """
        self.assertEqual(Point(vertex="x"), self.interval.point("e", 0))
        self.assertEqual(Point(vertex="y"), self.interval.point("e", "2"))
        self.assertEqual(Point(edge="e", offset=Fraction(1, 2)), self.interval.point("e", "1/2"))
        self.assertEqual("e@1/2", str(self.interval.point("e", "1/2")))
        with self.assertRaises(InputException):
            self.interval.point("e", 3)
        with self.assertRaises(InputException):
            self.interval.point("f", 1)
        with self.assertRaises(InputException):
            self.interval.vertex_point("z")

    def test_tangent_vectors(self):
        """
        Tests the tangent_vectors method at a loop vertex, an interior point and a leaf
        """
        self.assertEqual(
            [TangentVector(Point(vertex="v"), "e", True), TangentVector(Point(vertex="v"), "e", False)],
            self.circle.tangent_vectors(Point(vertex="v"))
        )
        inner = self.interval.point("e", 1)
        self.assertEqual(2, len(self.interval.tangent_vectors(inner)))
        self.assertEqual([TangentVector(Point(vertex="y"), "e", False)],
                         self.interval.tangent_vectors(Point(vertex="y")))
        self.assertEqual(3, self.theta.valence("u"))

    def test_subdivide(self):
        """
        Tests the subdivide method and the point maps of the subdivision
        """
        subdivision = self.interval.subdivide([self.interval.point("e", "1/2"), Point(vertex="x")])
        refined = subdivision.refined
        self.assertEqual(("x", "y", "e@1/2"), refined.vertices)
        self.assertEqual(["e#0", "e#1"], [edge.id for edge in refined.edges])
        self.assertEqual(("e", Fraction(1, 2), Fraction(2)), subdivision.provenance["e#1"])
        self.assertEqual(Point(vertex="e@1/2"), subdivision.map_point(self.interval.point("e", "1/2")))
        self.assertEqual(refined.point("e#1", 1), subdivision.map_point(self.interval.point("e", "3/2")))
        self.assertEqual(self.interval.point("e", "1/2"), subdivision.unmap_point(Point(vertex="e@1/2")))
        self.assertEqual(
            TangentVector(self.interval.point("e", "1/2"), "e", False),
            subdivision.unmap_tangent(TangentVector(Point(vertex="e@1/2"), "e#0", False))
        )
        self.assertEqual(
            TangentVector(Point(vertex="x"), "e#0", True),
            subdivision.map_tangent(TangentVector(Point(vertex="x"), "e", True))
        )

    def test_subdivide_loop(self):
        """
        Tests the subdivide method on a loop, where the vertex is both ends
        """
        subdivision = self.circle.subdivide([self.circle.point("e", "1/2")])
        self.assertEqual(1, subdivision.refined.genus())
        self.assertEqual(
            TangentVector(Point(vertex="v"), "e#1", False),
            subdivision.map_tangent(TangentVector(Point(vertex="v"), "e", False))
        )

    def test_reversed_orientation(self):
        """
        Tests the reversed_orientation method
        """
        reversed_graph = self.interval.reversed_orientation()
        self.assertEqual("y", reversed_graph.edge("e").tail)
        self.assertEqual(self.interval.vertices, reversed_graph.vertices)


if __name__ == "__main__":
    unittest.main()
