"""Matroids and valuated matroids given by their circuits"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from logging import getLogger
from typing import Iterable, Mapping, Optional, Sequence

from tropls.common.constants import VerdictKind
from tropls.common.custom_exceptions import InputException
from tropls.common.rationals import RationalLike, parse_rational
from tropls.common.verdicts import Verdict

_logger = getLogger(__name__)

_PASS = VerdictKind.PASS
_FAIL = VerdictKind.FAIL

REALIZABILITY_NOTES = {
    "fano": "realizable only in characteristic 2",
    "u34": "realizable over every infinite field",
}


def realizability_note(name: str) -> Optional[str]:
    return REALIZABILITY_NOTES.get(name)


def _independent_size(elements: Sequence[str], supports: Iterable[frozenset[str]]) -> int:
    supports = list(supports)
    for size in range(len(elements), -1, -1):
        for subset in combinations(elements, size):
            chosen = set(subset)
            if not any(support <= chosen for support in supports):
                return size
    return 0


@dataclass(frozen=True)
class Matroid:
    """
    Matroid on named elements given by its circuits
    """
    elements: tuple[str, ...]
    circuits: frozenset[frozenset[str]]

    def __post_init__(self):
        known = set(self.elements)
        if len(known) != len(self.elements):
            raise InputException("duplicate matroid elements")
        for circuit in self.circuits:
            if not circuit <= known:
                raise InputException(f"circuit {sorted(circuit)} uses unknown elements")

    @classmethod
    def from_circuits(cls, elements: Iterable[str], circuits: Iterable[Iterable[str]]) -> "Matroid":
        return cls(tuple(elements), frozenset(frozenset(circuit) for circuit in circuits))

    @classmethod
    def from_lines(cls, elements: Iterable[str], lines: Iterable[Iterable[str]]) -> "Matroid":
        """
        Simple rank-3 matroid from its lines of three or more collinear points

        Circuits are the collinear triples and the quadruples without a
        collinear triple.
        """
        elements = tuple(elements)
        lines = [frozenset(line) for line in lines]
        for line in lines:
            if len(line) < 3:
                raise InputException(f"line {sorted(line)} has fewer than three points")
            if not line <= set(elements):
                raise InputException(f"line {sorted(line)} uses unknown elements")
        for first, second in combinations(lines, 2):
            if len(first & second) > 1:
                raise InputException("two lines share more than one point")
        triples = {frozenset(triple) for line in lines for triple in combinations(sorted(line), 3)}
        quadruples = {
            frozenset(quadruple) for quadruple in combinations(elements, 4)
            if not any(frozenset(triple) in triples for triple in combinations(quadruple, 3))
        }
        return cls(elements, frozenset(triples | quadruples))

    @classmethod
    def uniform(cls, rank: int, elements: Iterable[str]) -> "Matroid":
        elements = tuple(elements)
        return cls(elements, frozenset(frozenset(subset) for subset in combinations(elements, rank + 1)))

    def rank(self) -> int:
        return _independent_size(self.elements, self.circuits)


def matroid_axioms_check(matroid: Matroid, rank: Optional[int] = None) -> Verdict:
    """
    Checks the circuit axioms, strong elimination and optionally the rank
    """
    if frozenset() in matroid.circuits:
        return Verdict(_FAIL, "the empty set is a circuit", [])
    for first, second in combinations(matroid.circuits, 2):
        if first < second or second < first:
            smaller, larger = sorted((first, second), key=len)
            return Verdict(_FAIL, "a circuit contains another circuit", [sorted(smaller), sorted(larger)])
    for first in matroid.circuits:
        for second in matroid.circuits:
            if first == second:
                continue
            for shared in first & second:
                for kept in first - second:
                    pool = (first | second) - {shared}
                    if not any(kept in third and third <= pool for third in matroid.circuits):
                        return Verdict(
                            _FAIL,
                            "circuit elimination fails",
                            {"circuits": [sorted(first), sorted(second)], "removed": shared, "kept": kept}
                        )
    actual = matroid.rank()
    if rank is not None and actual != rank:
        return Verdict(_FAIL, f"rank is {actual}, expected {rank}", actual)
    return Verdict(_PASS, f"matroid of rank {actual}", actual)


def rank2_flats(matroid: Matroid) -> list[frozenset[str]]:
    """
    Rank-2 flats (lines) of a simple rank-3 matroid

    A flat f has at least two elements and contains every 3-circuit meeting
    it in two or more elements.
    """
    if any(len(circuit) <= 2 for circuit in matroid.circuits):
        raise InputException("rank-2 flats need a simple matroid")
    if matroid.rank() != 3:
        raise InputException("rank-2 flats need a matroid of rank 3")
    triples = [circuit for circuit in matroid.circuits if len(circuit) == 3]
    flats = set()
    for pair in combinations(matroid.elements, 2):
        flat = set(pair)
        grown = True
        while grown:
            grown = False
            for triple in triples:
                if len(triple & flat) >= 2 and not triple <= flat:
                    flat |= triple
                    grown = True
        flats.add(frozenset(flat))
    order = {element: index for index, element in enumerate(matroid.elements)}
    return sorted(flats, key=lambda flat: sorted(order[element] for element in flat))


@dataclass(frozen=True)
class ValuatedCircuit:
    """
    Valuated circuit: finite values on its support, infinity elsewhere

    Values are stored up to a common shift, normalized to minimum 0.
    """
    values: tuple[tuple[str, Fraction], ...]

    @classmethod
    def of(cls, values: Mapping[str, RationalLike]) -> "ValuatedCircuit":
        parsed = {element: parse_rational(value) for element, value in values.items()}
        if not parsed:
            return cls(())
        least = min(parsed.values())
        return cls(tuple(sorted((element, value - least) for element, value in parsed.items())))

    def support(self) -> frozenset[str]:
        return frozenset(element for element, _ in self.values)

    def value(self, element: str) -> Optional[Fraction]:
        for name, value in self.values:
            if name == element:
                return value
        return None

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.values)


@dataclass(frozen=True)
class ValuatedMatroid:
    """
    Valuated matroid given by one representative per class of valuated circuits
    """
    elements: tuple[str, ...]
    circuits: tuple[ValuatedCircuit, ...]

    def __post_init__(self):
        known = set(self.elements)
        for circuit in self.circuits:
            if not circuit.support() <= known:
                raise InputException("valuated circuit uses unknown elements")

    def rank(self) -> int:
        return _independent_size(self.elements, [circuit.support() for circuit in self.circuits])

    def underlying(self) -> Matroid:
        return Matroid(self.elements, frozenset(circuit.support() for circuit in self.circuits))


def _elimination_witness(matroid: ValuatedMatroid, first: ValuatedCircuit, second: ValuatedCircuit):
    first_values = first.as_dict()
    for shared in first.support() & second.support():
        offset = first_values[shared] - second.value(shared)
        second_values = {element: value + offset for element, value in second.as_dict().items()}
        lower = {
            element: min(
                value for value in (first_values.get(element), second_values.get(element))
                if value is not None
            )
            for element in first.support() | second.support()
        }
        for kept, kept_value in first_values.items():
            other = second_values.get(kept)
            if other is not None and kept_value >= other:
                continue
            found = False
            for third in matroid.circuits:
                third_values = third.as_dict()
                if shared in third_values or kept not in third_values:
                    continue
                shift = kept_value - third_values[kept]
                if all(
                    element in lower and value + shift >= lower[element]
                    for element, value in third_values.items()
                ):
                    found = True
                    break
            if not found:
                return {"shared": shared, "kept": kept}
    return None


def valuated_axioms_check(matroid: ValuatedMatroid, rank: Optional[int] = None) -> Verdict:
    """
    Checks the valuated circuit axioms and optionally the rank

    Checked: no circuit is identically infinite, circuits with one support
    agree up to shift, supports are incomparable, the rank, and valuated
    elimination.
    """
    for circuit in matroid.circuits:
        if not circuit.support():
            return Verdict(_FAIL, "a valuated circuit is identically infinite", [])
    for first, second in combinations(matroid.circuits, 2):
        if first.support() == second.support() and first != second:
            return Verdict(_FAIL, "two circuits with one support differ beyond a shift", [first, second])
        if first.support() < second.support() or second.support() < first.support():
            return Verdict(_FAIL, "a support contains another support", [first, second])
    actual = matroid.rank()
    if rank is not None and actual != rank:
        return Verdict(_FAIL, f"rank is {actual}, expected {rank}", actual)
    for first in matroid.circuits:
        for second in matroid.circuits:
            if first == second:
                continue
            failure = _elimination_witness(matroid, first, second)
            if failure is not None:
                _logger.info("Valuated elimination fails for %s and %s", first, second)
                return Verdict(
                    _FAIL, "valuated circuit elimination fails",
                    {"circuits": [first, second], **failure}
                )
    return Verdict(_PASS, f"valuated matroid of rank {actual}", actual)


def bergman_membership(point: Sequence[Optional[RationalLike]], matroid: ValuatedMatroid) -> bool:
    """
    Whether min over e of V(e) + x_e is attained at least twice for every circuit V

    :param point: one coordinate per element, None for infinity
    :param matroid: the valuated matroid
    """
    if len(point) != len(matroid.elements):
        raise InputException(
            f"point has {len(point)} coordinates, the matroid has {len(matroid.elements)} elements"
        )
    coordinates = {
        element: None if value is None else parse_rational(value)
        for element, value in zip(matroid.elements, point)
    }
    for circuit in matroid.circuits:
        terms = [
            value + coordinates[element]
            for element, value in circuit.values if coordinates[element] is not None
        ]
        if not terms:
            continue
        least = min(terms)
        if terms.count(least) < 2:
            return False
    return True
