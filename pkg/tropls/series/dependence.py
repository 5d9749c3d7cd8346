"""Deciding tropical dependence of finitely many PL functions"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from logging import getLogger
from typing import Optional, Sequence

import numpy as np

from tropls.common.constants import AnswerKind, CombinationKind
from tropls.common.custom_exceptions import InputException
from tropls.common.rationals import RationalLike, common_denominator, parse_rational
from tropls.common.settings import DependenceConfig
from tropls.graphs.metric_graph import Point
from tropls.graphs.pl_function import (
    PLFunction,
    compare_up_to_constant,
    lower_envelope,
    refinement_points,
    tropical_combine,
)
from tropls.series.constraints import solve_strict

_DEPENDENCE = CombinationKind.DEPENDENCE
_CERTIFICATE = CombinationKind.CERTIFICATE
_NEITHER = CombinationKind.NEITHER


@dataclass(frozen=True)
class CombinationVerdict:
    """
    Result of verifying one coefficient vector

    tie_cells lists a point of every open envelope cell with its achievers
    (dependence); unique_points gives for every index a point where it alone
    attains the minimum (certificate); for neither, lonely is a point with a
    single achiever and missing an index that is never the unique achiever.
    """
    kind: CombinationKind
    coefficients: tuple[Fraction, ...]
    tie_cells: tuple[tuple[Point, frozenset[int]], ...] = ()
    unique_points: tuple[tuple[int, Point], ...] = ()
    lonely: Optional[tuple[int, Point]] = None
    missing: Optional[int] = None


@dataclass(frozen=True)
class DependenceAnswer:
    """
    Answer of decide_dependence

    evidence is "verified" when the verdict re-checks the answer,
    "exhaustion" when the exhaustive search for three functions found no
    dependence, and "collapse" when the raising loop left at most one
    function active without a certificate being found.
    """
    kind: AnswerKind
    coefficients: Optional[tuple[Fraction, ...]] = None
    verdict: Optional[CombinationVerdict] = None
    evidence: str = "verified"
    log: tuple[str, ...] = field(default=(), compare=False)


def normalize_coefficients(coefficients: Sequence[Fraction]) -> tuple[Fraction, ...]:
    least = min(coefficients)
    return tuple(coefficient - least for coefficient in coefficients)


def verify_combination(
    functions: Sequence[PLFunction], coefficients: Sequence[RationalLike]
) -> CombinationVerdict:
    """
    Classifies min_i(f_i + c_i) as a dependence, a certificate or neither
    """
    coefficients = tuple(parse_rational(coefficient) for coefficient in coefficients)
    cells = lower_envelope(functions, coefficients)
    unique: dict[int, Point] = {}
    lonely = None
    for cell in cells:
        if len(cell.achievers) == 1:
            (index,) = cell.achievers
            unique.setdefault(index, cell.point)
            if lonely is None:
                lonely = (index, cell.point)
    if lonely is None:
        return CombinationVerdict(
            _DEPENDENCE,
            coefficients,
            tie_cells=tuple((cell.point, cell.achievers) for cell in cells if cell.is_open)
        )
    missing = [index for index in range(len(functions)) if index not in unique]
    if not missing:
        return CombinationVerdict(
            _CERTIFICATE, coefficients, unique_points=tuple(sorted(unique.items()))
        )
    return CombinationVerdict(_NEITHER, coefficients, lonely=lonely, missing=missing[0])


def recheck_verdict(functions: Sequence[PLFunction], verdict: CombinationVerdict) -> bool:
    """
    Re-verifies a dependence or certificate by evaluating at its witness points
    """
    def achievers(point: Point) -> frozenset[int]:
        values = [
            function.value_at(point) + coefficient
            for function, coefficient in zip(functions, verdict.coefficients)
        ]
        least = min(values)
        return frozenset(index for index, value in enumerate(values) if value == least)

    if verdict.kind == _CERTIFICATE:
        return sorted(index for index, _ in verdict.unique_points) == list(range(len(functions))) and all(
            achievers(point) == {index} for index, point in verdict.unique_points
        )
    if verdict.kind == _DEPENDENCE:
        return verify_combination(functions, verdict.coefficients).kind == _DEPENDENCE and all(
            len(achievers(point)) >= 2 for point, _ in verdict.tie_cells
        )
    return False


def ind3_applies(functions: Sequence[PLFunction], first: Point, second: Point) -> bool:
    """
    Whether f1(x) = f2(x) < f3(x) and f1(y) = f3(y) <= f2(y)

    For a dependent triple these conditions make min(f1, f2, f3) itself a
    dependence.
    """
    if len(functions) != 3:
        raise InputException("the three-function criterion needs exactly three functions")
    at_x = [function.value_at(first) for function in functions]
    at_y = [function.value_at(second) for function in functions]
    return at_x[0] == at_x[1] < at_x[2] and at_y[0] == at_y[2] <= at_y[1]


class DependenceEngine:
    """
    Decides tropical dependence of a finite set of functions

    The decision tries, in order: a constant-difference pair, a cell where all
    slopes differ, the monotone raising loop, a certificate search over
    candidate points and, for three functions, an exhaustive search.
    """

    def __init__(self, config: Optional[DependenceConfig] = None):
        """
        Constructor for DependenceEngine

        :param config: NamedTuple class with the engine configuration
        """
        self._logger = getLogger(__name__)
        self._config = config or DependenceConfig()
        self._fractions = [parse_rational(value) for value in self._config.candidate_fractions]

    def decide(self, functions: Sequence[PLFunction]) -> DependenceAnswer:
        """
        Dependent with coefficients, Independent, or Undetermined

        :param functions: functions on one graph
        """
        functions = list(functions)
        if not functions:
            raise InputException("dependence of an empty set is undefined")
        log: list[str] = []
        pair = self.constant_pair(functions)
        if pair is not None:
            log.append("two functions differ by a constant")
            return self._answer(functions, pair, log)
        certificate = self.distinct_slope_certificate(functions)
        if certificate is not None:
            log.append("a refinement cell has pairwise distinct slopes")
            return self._answer(functions, certificate, log)
        raised, collapsed = self.raising_loop(functions, log)
        if raised is not None:
            return self._answer(functions, raised, log)
        certificate = self.search_certificate(functions)
        if certificate is not None:
            log.append("certificate found by point assignment")
            return self._answer(functions, certificate, log)
        if len(functions) == 3:
            log.append("falling back to the exhaustive search")
            answer = self.exhaustive_3(functions, with_certificate=False)
            return DependenceAnswer(answer.kind, answer.coefficients, answer.verdict, answer.evidence, tuple(log))
        if collapsed:
            return DependenceAnswer(AnswerKind.INDEPENDENT, evidence="collapse", log=tuple(log))
        self._logger.info("Dependence of %s functions is undetermined", len(functions))
        return DependenceAnswer(AnswerKind.UNDETERMINED, evidence="none", log=tuple(log))

    def _answer(
        self, functions: list[PLFunction], coefficients: Sequence[Fraction], log: list[str]
    ) -> DependenceAnswer:
        verdict = verify_combination(functions, normalize_coefficients(coefficients))
        if verdict.kind == _DEPENDENCE:
            return DependenceAnswer(AnswerKind.DEPENDENT, verdict.coefficients, verdict, log=tuple(log))
        if verdict.kind == _CERTIFICATE:
            return DependenceAnswer(AnswerKind.INDEPENDENT, verdict.coefficients, verdict, log=tuple(log))
        log.append("candidate coefficients did not verify")
        return DependenceAnswer(AnswerKind.UNDETERMINED, evidence="none", log=tuple(log))

    @staticmethod
    def constant_pair(functions: list[PLFunction]) -> Optional[list[Fraction]]:
        """
        Coefficients of a dependence between two functions differing by a constant
        """
        for first, second in combinations(range(len(functions)), 2):
            difference = compare_up_to_constant(functions[second], functions[first])
            if difference is None:
                continue
            coefficients = [Fraction(0)] * len(functions)
            coefficients[first] = difference
            envelope = functions[second]
            for index in range(len(functions)):
                if index not in (first, second):
                    coefficients[index] = (envelope - functions[index]).maximum() + 1
            return coefficients
        return None

    @staticmethod
    def distinct_slope_certificate(functions: list[PLFunction]) -> Optional[list[Fraction]]:
        """
        Certificate built on a cell where all functions have distinct slopes

        The shifted lines are chained through increasing crossing points in
        decreasing slope order, so their minimum is concave and each line is
        the unique minimum on its own piece.
        """
        count = len(functions)
        graph = functions[0].graph
        for edge in graph.edges:
            offsets = sorted({offset for function in functions for offset in function.breakpoint_offsets(edge.id)})
            for start, end in zip(offsets, offsets[1:]):
                slopes = [function.segment_slope(edge.id, start) for function in functions]
                if len(set(slopes)) != count:
                    continue
                order = sorted(range(count), key=lambda index: -slopes[index])
                coefficients = [Fraction(0)] * count
                for step in range(count - 1):
                    crossing = start + (end - start) * (step + 1) / count
                    current, following = order[step], order[step + 1]
                    coefficients[following] = (
                        functions[current].value_on_edge(edge.id, crossing)
                        + coefficients[current]
                        - functions[following].value_on_edge(edge.id, crossing)
                    )
                return coefficients
        return None

    def raising_loop(
        self, functions: list[PLFunction], log: list[str]
    ) -> tuple[Optional[list[Fraction]], bool]:
        """
        Monotone raising of unique achievers

        Every step raises, by the least amount, the coefficient of a function
        that alone attains the minimum somewhere until it no longer does.
        Functions raised more than the bound above the least active
        coefficient can never attain the minimum again and are deactivated.

        returns:
          (dependence coefficients or None, whether at most one function
          stayed active)
        """
        count = len(functions)
        anchor = Point(vertex=functions[0].graph.vertices[0])
        shifts = [function.value_at(anchor) for function in functions]
        normalized = [function.shift(-shift) for function, shift in zip(functions, shifts)]
        oscillation = max(
            ((normalized[a] - normalized[b]).maximum() - (normalized[a] - normalized[b]).minimum()
             for a, b in combinations(range(count), 2)),
            default=Fraction(0)
        )
        bound = 1 + count * oscillation
        pieces = sum(
            len(function.values(edge.id)) - 1 for function in functions for edge in function.graph.edges
        )
        cap = self._config.iteration_factor * count * max(pieces, 1)
        coefficients = [Fraction(0)] * count
        active = list(range(count))
        for iteration in range(cap):
            if len(active) <= 1:
                log.append(f"raising loop left one function after {iteration} steps")
                return None, True
            cells = lower_envelope(
                [normalized[index] for index in active], [coefficients[index] for index in active]
            )
            unique = sorted({active[next(iter(cell.achievers))] for cell in cells if len(cell.achievers) == 1})
            if not unique:
                log.append(f"raising loop reached a dependence after {iteration} steps")
                envelope = tropical_combine([(normalized[index], coefficients[index]) for index in active])
                for index in range(count):
                    if index not in active:
                        coefficients[index] = (envelope - normalized[index]).maximum() + 1
                return [coefficient - shift for coefficient, shift in zip(coefficients, shifts)], False
            best = None
            for index in unique:
                others = tropical_combine([
                    (normalized[other], coefficients[other]) for other in active if other != index
                ])
                target = (others - normalized[index]).maximum()
                if best is None or target - coefficients[index] < best[1] - coefficients[best[0]]:
                    best = (index, target)
            index, target = best
            coefficients[index] = target
            self._logger.debug("Raising step %s: coefficient %s set to %s", iteration, index, target)
            if target - min(coefficients[other] for other in active) > bound:
                active.remove(index)
                self._logger.debug("Function %s deactivated", index)
        log.append(f"raising loop hit its cap of {cap} steps")
        return None, False

    def candidate_points(self, functions: list[PLFunction]) -> list[Point]:
        """
        Refinement points and interior sample points of every refinement cell
        """
        graph = functions[0].graph
        points = list(refinement_points(functions))
        for edge in graph.edges:
            offsets = sorted({offset for function in functions for offset in function.breakpoint_offsets(edge.id)})
            for start, end in zip(offsets, offsets[1:]):
                points.extend(graph.point(edge.id, start + (end - start) * fraction) for fraction in self._fractions)
        return points

    def search_certificate(self, functions: list[PLFunction]) -> Optional[list[Fraction]]:
        """
        Certificate search by assigning a candidate point to every index

        For fixed points x_i the certificate conditions are the strict
        difference constraints a_i - a_j < f_j(x_i) - f_i(x_i).
        """
        count = len(functions)
        points = self.candidate_points(functions)
        values = [[function.value_at(point) for function in functions] for point in points]
        options: list[list[tuple[Fraction, ...]]] = []
        for index in range(count):
            vectors = {
                tuple(row[other] - row[index] for other in range(count))
                for row in values
            }
            pareto = [
                vector for vector in vectors
                if not any(other != vector and all(b >= a for a, b in zip(vector, other)) for other in vectors)
            ]
            options.append(sorted(pareto, reverse=True))
        order = sorted(range(count), key=lambda index: len(options[index]))
        explored = [0]
        limit = 50000

        def extend(position: int, constraints: list) -> Optional[list[Fraction]]:
            if position == count:
                return solve_strict(count, constraints)
            index = order[position]
            for vector in options[index]:
                explored[0] += 1
                if explored[0] > limit:
                    return None
                added = constraints + [
                    (index, other, vector[other]) for other in range(count) if other != index
                ]
                if solve_strict(count, added) is None:
                    continue
                solution = extend(position + 1, added)
                if solution is not None:
                    return solution
            return None

        solution = extend(0, [])
        self._logger.debug("Certificate search explored %s assignments", explored[0])
        if solution is None:
            return None
        if verify_combination(functions, solution).kind != _CERTIFICATE:
            return None
        return solution

    def exhaustive_3(self, functions: Sequence[PLFunction], with_certificate: bool = True) -> DependenceAnswer:
        """
        Complete dependence search for three functions

        In a dependence either two functions differ by a constant or two
        different pairs tie on open sets. A pair tying on an open set fixes
        the difference of its coefficients to a value the difference of the
        functions takes at a refinement point, so finitely many coefficient
        vectors need checking. An independent answer carries a certificate
        when the certificate search finds one.

        :param functions: exactly three functions on one graph
        :param with_certificate: whether to search a certificate after exhaustion
        """
        functions = list(functions)
        if len(functions) != 3:
            raise InputException("the exhaustive search handles exactly three functions")
        pair = self.constant_pair(functions)
        if pair is not None:
            return self._answer(functions, pair, ["two functions differ by a constant"])
        points = refinement_points(functions)
        table = [[function.value_at(point) for point in points] for function in functions]
        differences = {
            (first, second): sorted({a - b for a, b in zip(table[first], table[second])})
            for first, second in ((0, 1), (0, 2), (1, 2))
        }
        candidates = {(Fraction(0), a1, a2) for a1 in differences[(0, 1)] for a2 in differences[(0, 2)]}
        for d in differences[(1, 2)]:
            candidates.update((Fraction(0), a1, a1 + d) for a1 in differences[(0, 1)])
            candidates.update((Fraction(0), a2 - d, a2) for a2 in differences[(0, 2)])
        ordered = sorted(candidates)
        for coefficients in self._tie_filter(table, ordered):
            verdict = verify_combination(functions, coefficients)
            if verdict.kind == _DEPENDENCE:
                return DependenceAnswer(
                    AnswerKind.DEPENDENT, normalize_coefficients(coefficients),
                    verify_combination(functions, normalize_coefficients(coefficients))
                )
        certificate = self.search_certificate(functions) if with_certificate else None
        if certificate is not None:
            verdict = verify_combination(functions, normalize_coefficients(certificate))
            return DependenceAnswer(AnswerKind.INDEPENDENT, verdict.coefficients, verdict, evidence="exhaustion")
        return DependenceAnswer(AnswerKind.INDEPENDENT, evidence="exhaustion")

    @staticmethod
    def _tie_filter(table: list[list[Fraction]], candidates: list[tuple[Fraction, ...]]):
        """
        Candidates for which the minimum is attained twice at every refinement point
        """
        if not candidates:
            return []
        scale = common_denominator([value for row in table for value in row] + [c for cand in candidates for c in cand])
        values = np.array([[int(value * scale) for value in row] for row in table], dtype=object)
        shifts = np.array([[int(c * scale) for c in cand] for cand in candidates], dtype=object)
        shifted = values[np.newaxis, :, :] + shifts[:, :, np.newaxis]
        least = shifted.min(axis=1, keepdims=True)
        ties = (shifted == least).sum(axis=1)
        keep = (ties >= 2).all(axis=1)
        return [candidate for candidate, flag in zip(candidates, keep) if flag]


def decide_dependence(
    functions: Sequence[PLFunction], config: Optional[DependenceConfig] = None
) -> DependenceAnswer:
    return DependenceEngine(config).decide(functions)


def exhaustive_dependence_3(
    functions: Sequence[PLFunction], config: Optional[DependenceConfig] = None
) -> DependenceAnswer:
    return DependenceEngine(config).exhaustive_3(functions)
