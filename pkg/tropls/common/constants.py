"""
File to store constants
"""
from enum import Enum, IntEnum


class CombinationKind(Enum):
    """
    outcome of verifying one coefficient vector
    """
    DEPENDENCE = "dependence"
    CERTIFICATE = "certificate"
    NEITHER = "neither"


class AnswerKind(Enum):
    """
    outcome of deciding tropical dependence
    """
    DEPENDENT = "dependent"
    INDEPENDENT = "independent"
    UNDETERMINED = "undetermined"


class VerdictKind(Enum):
    """
    verdicts of the tropical linear series checks
    """
    PASS = "pass"
    PASS_SAMPLED = "pass (sampled)"
    FAIL = "fail"
    UNKNOWN = "unknown"


class ExitCode(IntEnum):
    """
    process exit codes of the command line interface
    """
    PASS = 0
    FAIL = 1
    INPUT_ERROR = 2
    UNDETERMINED = 3


class FixtureName(Enum):
    """
    named fixtures in their stable listing order
    """
    LOLLIPOP = "lollipop"
    BARBELL = "barbell"
    INTERVAL = "interval"
    FG = "fg"
    LUO = "luo"
    LOOP_OF_LOOPS = "loop-of-loops"
    FANO = "fano"
    U34 = "u34"


class LocationKind(Enum):
    """
    where a point of tropical projective space sits on a tree target
    """
    NODE = "node"
    EDGE = "edge"
    RAY = "ray"
    OUTSIDE = "outside"


class EngineDefaults(Enum):
    """
    default numeric settings of the engines
    """
    ITERATION_FACTOR = 64
    CANDIDATE_FRACTIONS = ("1/4", "1/2", "3/4")
    BRUTE_FORCE_PARTS = 4
    SAMPLES = 200
    SEED = 0
    POINT_DENOMINATOR = 8


class Messages(Enum):
    """
    fixed report texts
    """
    NOT_TLS = "slope counts differ from r+1: not a tropical linear series"
    AXIOM4 = "holds by finite generation"
    AXIOM3_TRIVIAL = "principal subseries realise every slope"
