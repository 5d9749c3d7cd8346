"""TestConstraints"""
import unittest
from fractions import Fraction

from tropls.common.custom_exceptions import InconsistencyException
from tropls.series.constraints import minimum_cycle, solve_strict, solve_weak


class TestConstraints(unittest.TestCase):
    """
    Testing the difference constraint solvers.
    """

    def test_solve_weak_feasible(self):
        """
        Tests the solve_weak method when the constraints force an equality
        """
        self.assertEqual([Fraction(1), Fraction(0)], solve_weak(2, [(0, 1, Fraction(1)), (1, 0, Fraction(-1))]))
        self.assertEqual([Fraction(0)], solve_weak(1, []))

    def test_solve_weak_negative_cycle(self):
        """
        Tests the solve_weak method when a negative cycle makes the system infeasible
        """
        self.assertIsNone(solve_weak(2, [(0, 1, Fraction(-1)), (1, 0, Fraction(0))]))
        self.assertIsNone(solve_weak(1, [(0, 0, Fraction(-1))]))

    def test_solve_weak_unknown_variable(self):
        """
        Tests the solve_weak method when a constraint names an unknown variable
        """
        with self.assertRaises(InconsistencyException):
            solve_weak(2, [(0, 2, Fraction(1))])

    def test_solve_strict(self):
        """
        Tests the solve_strict method with a zero cycle and a positive cycle
        """
        self.assertIsNone(solve_strict(2, [(0, 1, Fraction(0)), (1, 0, Fraction(0))]))
        solution = solve_strict(2, [(0, 1, Fraction(1)), (1, 0, Fraction(0))])
        self.assertIsNotNone(solution)
        self.assertLess(solution[0] - solution[1], 1)
        self.assertLess(solution[1] - solution[0], 0)
        self.assertEqual(Fraction(0), min(solution))

    def test_minimum_cycle(self):
        """
        Tests the minimum_cycle method with and without cycles
        """
        self.assertIsNone(minimum_cycle(2, {(0, 1): Fraction(3)}))
        self.assertEqual(Fraction(1), minimum_cycle(2, {(0, 1): Fraction(3), (1, 0): Fraction(-2)}))


if __name__ == "__main__":
    unittest.main()
