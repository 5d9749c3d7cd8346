"""TestPLFunction"""
import unittest
from fractions import Fraction

from tropls.common.custom_exceptions import InputException
from tropls.graphs.divisor import Divisor
from tropls.graphs.metric_graph import MetricGraph, Point, TangentVector
from tropls.graphs.pl_function import (
    PLFunction,
    compare_up_to_constant,
    divisor_of,
    evaluate,
    lower_envelope,
    refinement_points,
    slope,
    tropical_combine,
)


class TestPLFunction(unittest.TestCase):
    """
    Testing the PLFunction class.
    """

    def setUp(self):
        """
        Setting up the environment
        """
        self.graph = MetricGraph.build(["x", "y"], [("e", "x", "y", 2)])
        self.x = Point(vertex="x")
        self.y = Point(vertex="y")
        self.tent = PLFunction(self.graph, {"e": [(0, 0), (1, 1), (2, 0)]})
        self.zero = PLFunction.constant(self.graph)
        self.ramp = PLFunction(self.graph, {"e": [(0, -1), (2, 1)]})

    def test_rejects_bad_pieces(self):
        """
        Tests the constructor when slopes are not integers or values jump
        """
        with self.assertRaises(InputException):
            PLFunction(self.graph, {"e": [(0, 0), (2, 1)]})
        with self.assertRaises(InputException):
            PLFunction(self.graph, {"e": [(0, 0), (1, 1), (1, 2), (2, 3)]})
        with self.assertRaises(InputException):
            PLFunction(self.graph, {"e": [(0, 0), (1, 1)]})
        with self.assertRaises(InputException):
            PLFunction(self.graph, {})

    def test_collinear_breakpoints_are_merged(self):
        """
        Tests the values method when the given breakpoints are collinear
        """
        function = PLFunction(self.graph, {"e": [(0, 0), ("1/2", "1/2"), (1, 1), (2, 2)]})
        self.assertEqual(((Fraction(0), Fraction(0)), (Fraction(2), Fraction(2))), function.values("e"))
        self.assertEqual(Fraction(3, 2), function.value_at(self.graph.point("e", "3/2")))

    def test_divisor_of_tent(self):
        """
        Tests the divisor method on a function with one interior breakpoint
        """
        expected = Divisor(self.graph, {self.x: -1, self.y: -1, self.graph.point("e", 1): 2})
        self.assertEqual(expected, self.tent.divisor())
        self.assertEqual(0, self.tent.divisor().degree())

    def test_module_level_operations(self):
        """
        Tests the evaluate, slope and divisor_of functions
        """
        self.assertEqual(Fraction(1), evaluate(self.tent, self.graph.point("e", 1)))
        self.assertEqual(1, slope(self.tent, TangentVector(self.x, "e", True)))
        self.assertEqual(self.tent.divisor(), divisor_of(self.tent))

    def test_slope(self):
        """
        Tests the slope method at the ends and in the middle of an edge
        """
        middle = self.graph.point("e", 1)
        self.assertEqual(1, self.tent.slope(TangentVector(self.x, "e", True)))
        self.assertEqual(1, self.tent.slope(TangentVector(self.y, "e", False)))
        self.assertEqual(-1, self.tent.slope(TangentVector(middle, "e", True)))
        self.assertEqual(-1, self.tent.slope(TangentVector(middle, "e", False)))
        with self.assertRaises(InputException):
            self.tent.slope(TangentVector(self.y, "e", True))

    def test_arithmetic(self):
        """
        Tests shifting, normalizing, sums and differences
        """
        middle = self.graph.point("e", 1)
        self.assertEqual(Fraction(6), self.tent.shift(5).value_at(middle))
        self.assertEqual(Fraction(0), self.ramp.normalized().minimum())
        self.assertEqual(Fraction(2), self.ramp.normalized().value_at(self.y))
        self.assertEqual(self.zero, self.tent - self.tent)
        total = self.tent + self.ramp
        self.assertEqual(Fraction(1), total.value_at(middle))
        self.assertEqual(Fraction(1), total.value_at(self.y))
        self.assertTrue((self.zero + 3).is_constant())

    def test_tropical_combine(self):
        """
        Tests the tropical_combine method against the expected pointwise minimum
        """
        combined = tropical_combine([(self.zero, 0), (self.ramp, 0)])
        expected = PLFunction(self.graph, {"e": [(0, -1), (1, 0), (2, 0)]})
        self.assertEqual(expected, combined)
        with self.assertRaises(InputException):
            tropical_combine([])

    def test_lower_envelope(self):
        """
        Tests the lower_envelope method where two functions cross once
        """
        cells = lower_envelope([self.zero, self.ramp])
        crossing = [cell for cell in cells if cell.point == self.graph.point("e", 1)]
        self.assertEqual(1, len(crossing))
        self.assertEqual(frozenset({0, 1}), crossing[0].achievers)
        self.assertFalse(crossing[0].is_open)
        opens = sorted((cell.start, cell.end, cell.achievers) for cell in cells if cell.is_open)
        self.assertEqual(
            [(Fraction(0), Fraction(1), frozenset({1})), (Fraction(1), Fraction(2), frozenset({0}))], opens
        )

    def test_compare_up_to_constant(self):
        """
        Tests the compare_up_to_constant method with equal and different shapes
        """
        self.assertEqual(Fraction(3), compare_up_to_constant(self.tent.shift(3), self.tent))
        self.assertIsNone(compare_up_to_constant(self.tent, self.ramp))

    def test_refinement_points(self):
        """
        Tests the refinement_points method
        """
        self.assertEqual(
            [self.x, self.y, self.graph.point("e", 1)], refinement_points([self.tent, self.ramp])
        )

    def test_transport(self):
        """
        Tests the transport method onto a subdivision
        """
        subdivision = self.graph.subdivide([self.graph.point("e", "1/2")])
        moved = self.tent.transport(subdivision)
        self.assertEqual(Fraction(1, 2), moved.value_at(Point(vertex="e@1/2")))
        self.assertEqual(Fraction(1), moved.value_at(subdivision.refined.point("e#1", "1/2")))


if __name__ == "__main__":
    unittest.main()
