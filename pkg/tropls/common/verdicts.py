"""Verdicts of the structural checks"""
from dataclasses import dataclass
from typing import Any

from tropls.common.constants import ExitCode, VerdictKind


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of one check with a human readable reason and a witness
    """
    kind: VerdictKind
    reason: str = ""
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.kind in (VerdictKind.PASS, VerdictKind.PASS_SAMPLED)

    @property
    def exit_code(self) -> ExitCode:
        match self.kind:
            case VerdictKind.PASS | VerdictKind.PASS_SAMPLED:
                return ExitCode.PASS
            case VerdictKind.FAIL:
                return ExitCode.FAIL
            case _:
                return ExitCode.UNDETERMINED


def combine_exit_codes(verdicts) -> ExitCode:
    """
    Fail beats unknown beats pass
    """
    codes = {verdict.exit_code for verdict in verdicts}
    for code in (ExitCode.FAIL, ExitCode.UNDETERMINED):
        if code in codes:
            return code
    return ExitCode.PASS
