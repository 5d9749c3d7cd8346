"""TestBuilders"""
import unittest
from fractions import Fraction

from tropls.common.constants import FixtureName
from tropls.common.custom_exceptions import InputException
from tropls.fixtures.builders import (
    FACT_TABLE_COLUMNS,
    barbell_function,
    build_fixture,
    check_fixture,
    fg_function,
    fixture_parameters,
    list_fixtures,
    render_value,
)
from tropls.graphs.metric_graph import MetricGraph, Point
from tropls.series.tls import restrict_tls


class TestBuilders(unittest.TestCase):
    """
    Testing the fixture builders.
    """

    def test_list_fixtures(self):
        """
        Tests the list_fixtures method, which keeps a stable order
        """
        self.assertEqual(
            ["lollipop", "barbell", "interval", "fg", "luo", "loop-of-loops", "fano", "u34"], list_fixtures()
        )

    def test_fixture_parameters(self):
        """
        Tests the fixture_parameters method
        """
        self.assertEqual(["m", "stem", "loop"], fixture_parameters("lollipop"))
        self.assertEqual(["l1", "l2", "l3", "x", "arc"], fixture_parameters(FixtureName.LOOP_OF_LOOPS))
        self.assertEqual([], fixture_parameters("fano"))

    def test_build_fixture_errors(self):
        """
        Tests the build_fixture method with an unknown name, an unknown parameter and a bad value
        """
        with self.assertRaises(InputException):
            build_fixture("petersen")
        with self.assertRaises(InputException):
            build_fixture("lollipop", n=3)
        with self.assertRaises(InputException):
            build_fixture("lollipop", m=0)
        with self.assertRaises(InputException):
            build_fixture("loop-of-loops", x=4)

    def test_lollipop(self):
        """
        Tests the lollipop builder and its fact table
        """
        with self.assertLogs("tropls.fixtures.builders", level="INFO"):
            fixture = build_fixture("lollipop", m=2)
        self.assertEqual(["phi0", "phi1", "phi2", "theta1"], list(fixture.functions))
        self.assertEqual(1, fixture.rank)
        self.assertEqual(2, fixture.divisor.degree())
        table = check_fixture(fixture)
        self.assertEqual(FACT_TABLE_COLUMNS, list(table.columns))
        self.assertTrue(table["passed"].all(), table.to_string())

    def test_interval(self):
        """
        Tests the interval builder in the easy and in the hard case
        """
        easy = build_fixture("interval", w0="1/4", w1="3/4")
        self.assertEqual(2, len(easy.module))
        self.assertTrue(check_fixture(easy)["passed"].all())
        hard = build_fixture("interval")
        self.assertEqual(3, len(hard.module))
        self.assertEqual({"w0": Fraction(3, 4), "w1": Fraction(1, 4), "length": Fraction(1)}, hard.params)

    def test_loop_of_loops_shape(self):
        """
        Tests the loop-of-loops builder graph
        """
        fixture = build_fixture("loop-of-loops")
        self.assertEqual(9, len(fixture.graph.vertices))
        self.assertEqual(12, len(fixture.graph.edges))
        self.assertEqual(4, fixture.graph.genus())
        self.assertEqual(3, fixture.divisor.degree())
        self.assertIsNone(fixture.rank)

    def test_barbell_function(self):
        """
        Tests the barbell_function method for the three families
        """
        graph = MetricGraph.build(
            ["v", "w"], [("left", "v", "v", 1), ("bridge", "v", "w", 1), ("right", "w", "w", 1)]
        )
        left = barbell_function(graph, "left", "1/4")
        self.assertEqual(Fraction(1, 4), left.value_at(graph.point("left", "1/2")))
        self.assertEqual(Fraction(-1), left.value_at(Point(vertex="w")))
        bridge = barbell_function(graph, "bridge", "1/2")
        self.assertEqual(Fraction(0), bridge.value_at(Point(vertex="w")))
        with self.assertRaises(InputException):
            barbell_function(graph, "left", 1)
        with self.assertRaises(InputException):
            barbell_function(graph, "middle", 0)

    def test_barbell_left_loop_restriction(self):
        """
        Tests the barbell fixture restricted to its left loop, whose boundary coefficient is D(v) plus one
        """
        fixture = build_fixture("barbell")
        restricted = restrict_tls(fixture.module, ["left"])
        self.assertEqual(1, fixture.divisor[Point(vertex="v")])
        self.assertEqual(2, restricted.divisor[Point(vertex="v")])
        facts = check_fixture(fixture).set_index("fact")
        self.assertEqual("2", facts.loc["left loop boundary coefficient", "expected"])

    def test_fg_function(self):
        """
        Tests the fg_function method
        """
        graph = MetricGraph.build(["a", "v", "b"], [("av", "a", "v", 1), ("vb", "v", "b", 1)])
        function = fg_function(graph, "1/2", 0)
        self.assertEqual(Fraction(1, 2), function.value_at(Point(vertex="a")))
        self.assertEqual(Fraction(0), function.value_at(Point(vertex="b")))
        with self.assertRaises(InputException):
            fg_function(graph, 2, 0)

    def test_render_value(self):
        """
        Tests the render_value method
        """
        self.assertEqual("true", render_value(True))
        self.assertEqual("(0, 1/2, -1)", render_value((0, Fraction(1, 2), -1)))
        self.assertEqual("none", render_value(None))
        self.assertEqual("independent", render_value("independent"))


if __name__ == "__main__":
    unittest.main()
