"""Integration Test Fixtures"""
from fractions import Fraction
from unittest import main, TestCase

from tropls.common.constants import AnswerKind
from tropls.fixtures.builders import build_fixture, check_fixture, list_fixtures


class IntTestFixtures(TestCase):
    """
    Integration testing the expected facts of every fixture.
    """

    def test_every_fixture(self):
        """
        Tests the check_fixture method on every fixture with its default parameters
        """
        for name in list_fixtures():
            with self.subTest(fixture=name):
                table = check_fixture(build_fixture(name))
                failed = table[~table["passed"]]
                self.assertTrue(failed.empty, failed.to_string())

    def test_lollipop_degrees(self):
        """
        Tests the lollipop facts for the coefficients 1 to 3
        """
        for m in (1, 2, 3):
            with self.subTest(m=m):
                self.assertTrue(check_fixture(build_fixture("lollipop", m=m))["passed"].all())

    def test_interval_cases(self):
        """
        Tests the interval facts on both sides of w0 = w1
        """
        for w0, w1 in (("1/4", "3/4"), ("3/4", "1/4"), ("2/3", "1/3")):
            with self.subTest(w0=w0, w1=w1):
                self.assertTrue(check_fixture(build_fixture("interval", w0=w0, w1=w1))["passed"].all())

    def test_loop_of_loops_positions(self):
        """
        Tests the forced triple of the loop of loops as w moves along its edge
        """
        cases = (
            (Fraction(1), AnswerKind.INDEPENDENT),
            (Fraction(2), AnswerKind.INDEPENDENT),
            (Fraction(3), AnswerKind.DEPENDENT),
            (Fraction(7, 2), AnswerKind.INDEPENDENT),
        )
        for x, expected in cases:
            with self.subTest(x=x):
                table = check_fixture(build_fixture("loop-of-loops", x=x)).set_index("fact")
                self.assertEqual(expected.value, table.loc["forced triple", "actual"])
                self.assertTrue(table["passed"].all())


if __name__ == "__main__":
    main()
