"""TestVerdicts"""
import unittest

from tropls.common.constants import ExitCode, VerdictKind
from tropls.common.verdicts import Verdict, combine_exit_codes


class TestVerdicts(unittest.TestCase):
    """
    Testing the Verdict class.
    """

    def setUp(self):
        """
        Setting up the environment
        """
        self.passed = Verdict(VerdictKind.PASS, "ok")
        self.sampled = Verdict(VerdictKind.PASS_SAMPLED, "200 samples")
        self.failed = Verdict(VerdictKind.FAIL, "bad", witness=3)
        self.unknown = Verdict(VerdictKind.UNKNOWN, "undecided")

    def test_exit_code(self):
        """
        Tests the exit_code property for every verdict kind
        """
        self.assertEqual(ExitCode.PASS, self.passed.exit_code)
        self.assertEqual(ExitCode.PASS, self.sampled.exit_code)
        self.assertEqual(ExitCode.FAIL, self.failed.exit_code)
        self.assertEqual(ExitCode.UNDETERMINED, self.unknown.exit_code)

    def test_passed(self):
        """
        Tests the passed property when sampled verdicts count as passing
        """
        self.assertTrue(self.sampled.passed)
        self.assertFalse(self.unknown.passed)

    def test_combine_exit_codes(self):
        """
        Tests the combine_exit_codes method when fail beats unknown beats pass
        """
        self.assertEqual(ExitCode.PASS, combine_exit_codes([]))
        self.assertEqual(ExitCode.PASS, combine_exit_codes([self.passed, self.sampled]))
        self.assertEqual(ExitCode.UNDETERMINED, combine_exit_codes([self.passed, self.unknown]))
        self.assertEqual(ExitCode.FAIL, combine_exit_codes([self.unknown, self.failed, self.passed]))


if __name__ == "__main__":
    unittest.main()
