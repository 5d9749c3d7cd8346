"""Exact rational arithmetic helpers"""
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Union

from tropls.common.custom_exceptions import InputException

RationalLike = Union[Fraction, int, str]


def parse_rational(value: RationalLike) -> Fraction:
    """
    Converts a string "p/q", an integer or a Fraction to a Fraction

    :param value: the value to convert; floats and booleans are rejected

    returns:
      the exact rational value
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InputException(f"rationals must be exact, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise InputException(f"rationals must be written as p/q, got {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as error:
            raise InputException(f"malformed rational {value!r}") from error
    raise InputException(f"unsupported rational value {value!r}")


def format_rational(value: RationalLike) -> str:
    """
    Formats a rational as "n" or "p/q"
    """
    number = parse_rational(value)
    if number.denominator == 1:
        return str(number.numerator)
    return f"{number.numerator}/{number.denominator}"


def as_integer(value: Fraction, what: str = "value") -> int:
    """
    Returns the integer value of an integral Fraction

    :param value: the rational to convert
    :param what: name used in the error message
    """
    if value.denominator != 1:
        raise InputException(f"{what} must be an integer, got {format_rational(value)}")
    return value.numerator


def common_denominator(values: Iterable[Fraction]) -> int:
    """
    Least common multiple of the denominators of the values (1 when empty)
    """
    result = 1
    for value in values:
        result = lcm(result, Fraction(value).denominator)
    return result


def rational_gcd(values: Iterable[Fraction]) -> Fraction:
    """
    Largest rational g such that every value is an integer multiple of g

    returns:
      Fraction(0) when every value is zero
    """
    values = [Fraction(value) for value in values]
    denominator = common_denominator(values)
    numerator = 0
    for value in values:
        numerator = gcd(numerator, (value * denominator).numerator)
    return Fraction(numerator, denominator)
