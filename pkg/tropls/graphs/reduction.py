"""Reduced divisors, Baker-Norine rank and extremal functions"""
from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger
from typing import Iterable, Mapping, NamedTuple, Optional

from tropls.graphs.divisor import Divisor, canonical_divisor
from tropls.graphs.metric_graph import Edge, MetricGraph, Point
from tropls.graphs.pl_function import PLFunction

Chips = dict[Point, int]


@dataclass(frozen=True)
class ReductionResult:
    """
    q-reduced divisor equivalent to an input divisor

    witness satisfies divisor_of(witness) = reduced - input.
    """
    reduced: Divisor
    witness: PLFunction
    base: Point


class Segment(NamedTuple):
    """
    Piece of an edge between two consecutive marked points
    """
    edge: Edge
    start: Fraction
    end: Fraction
    first: Point
    second: Point


class Firing(NamedTuple):
    """
    One firing of a closed set by a distance

    intervals holds, per edge id, the offset intervals of the fired set on
    that edge. The firing adds min(distance, dist(x, fired set)) to the
    witness, which vanishes on the fired set.
    """
    intervals: dict[str, list[tuple[Fraction, Fraction]]]
    distance: Fraction

    def value(self, edge_id: str, offset: Fraction) -> Fraction:
        nearest = min(
            (max(start - offset, offset - end, Fraction(0)) for start, end in self.intervals.get(edge_id, ())),
            default=self.distance
        )
        return min(self.distance, nearest)


def _cleaned(chips: Mapping[Point, int]) -> Chips:
    return {point: count for point, count in chips.items() if count}


class BurningReducer:
    """
    Dhar's burning algorithm run directly on a metric graph

    Marked points (vertices, chips and the base) cut the edges into
    segments. Fire spreads from the base through chip-free segments and
    burns a point once more flames reach it than it holds chips. While an
    unburnt set remains, it fires by the shortest segment leaving it, so
    every boundary chip walks one segment piece towards the fire. Debt away
    from the base is paid one chip at a time by remove_chip.
    """

    def __init__(self, graph: MetricGraph):
        """
        Constructor for BurningReducer

        :param graph: the metric graph
        """
        self._logger = getLogger(__name__)
        self.graph = graph

    def _point(self, edge: Edge, offset: Fraction) -> Point:
        if offset == 0:
            return Point(vertex=edge.tail)
        if offset == edge.length:
            return Point(vertex=edge.head)
        return Point(edge=edge.id, offset=offset)

    def _segments(self, chips: Chips, base: Point) -> list[Segment]:
        marks: dict[str, set[Fraction]] = {edge.id: set() for edge in self.graph.edges}
        for point in [*chips, base]:
            if not point.is_vertex:
                marks[point.edge].add(point.offset)
        segments = []
        for edge in self.graph.edges:
            offsets = [Fraction(0), *sorted(marks[edge.id]), edge.length]
            segments.extend(
                Segment(edge, start, end, self._point(edge, start), self._point(edge, end))
                for start, end in zip(offsets, offsets[1:])
            )
        return segments

    def _unburnt(self, chips: Chips, base: Point, segments: list[Segment]) -> set[Point]:
        incident: dict[Point, list[Point]] = {}
        for segment in segments:
            if segment.first != segment.second:
                incident.setdefault(segment.first, []).append(segment.second)
                incident.setdefault(segment.second, []).append(segment.first)
        burnt = {base}
        reached: dict[Point, int] = {}
        stack = [base]
        while stack:
            node = stack.pop()
            for neighbour in incident.get(node, ()):
                if neighbour in burnt:
                    continue
                reached[neighbour] = reached.get(neighbour, 0) + 1
                if reached[neighbour] > chips.get(neighbour, 0):
                    burnt.add(neighbour)
                    stack.append(neighbour)
        return set(incident) - burnt

    def burn_down(self, chips: Mapping[Point, int], base: Point) -> tuple[Chips, list[Firing]]:
        """
        Base-reduced form of a divisor that is effective away from the base

        :param chips: coefficients keyed by canonical points
        :param base: the canonical base point

        returns:
          (reduced coefficients, firings whose witness moves chips onto them)
        """
        chips = _cleaned(chips)
        firings: list[Firing] = []
        while True:
            segments = self._segments(chips, base)
            unburnt = self._unburnt(chips, base, segments)
            if not unburnt:
                break
            intervals: dict[str, list[tuple[Fraction, Fraction]]] = {}
            leaving: list[tuple[Segment, bool]] = []
            for segment in segments:
                first_in, second_in = segment.first in unburnt, segment.second in unburnt
                pieces = intervals.setdefault(segment.edge.id, [])
                if first_in and second_in:
                    pieces.append((segment.start, segment.end))
                    continue
                if first_in:
                    pieces.append((segment.start, segment.start))
                    leaving.append((segment, True))
                if second_in:
                    pieces.append((segment.end, segment.end))
                    leaving.append((segment, False))
            distance = min(segment.end - segment.start for segment, _ in leaving)
            for segment, forward in leaving:
                source = segment.first if forward else segment.second
                offset = segment.start + distance if forward else segment.end - distance
                target = self._point(segment.edge, offset)
                chips[source] -= 1
                chips[target] = chips.get(target, 0) + 1
            chips = _cleaned(chips)
            firings.append(Firing(intervals, distance))
        self._logger.debug("Burning from %s finished after %s firings", base, len(firings))
        return chips, firings

    def remove_chip(self, chips: Mapping[Point, int], point: Point, base: Point) -> tuple[Chips, list[Firing]]:
        """
        Base-reduced form of reduced - point for a base-reduced divisor

        When point holds no chip, enough chips are lent to the base for the
        point-reduced form to carry a chip at point; that chip is dropped, the
        rest is burnt down to the base and the loan is paid back. A loan that
        lifts the degree to genus + 1 always suffices.
        """
        chips = dict(chips)
        if point == base or chips.get(point, 0) >= 1:
            chips[point] = chips.get(point, 0) - 1
            return _cleaned(chips), []
        loan = max(0, -chips.get(base, 0))
        while True:
            lifted = dict(chips)
            lifted[base] = lifted.get(base, 0) + loan
            at_point, firings = self.burn_down(lifted, point)
            if at_point.get(point, 0) >= 1:
                at_point[point] -= 1
                reduced, back = self.burn_down(at_point, base)
                reduced[base] = reduced.get(base, 0) - loan
                return _cleaned(reduced), firings + back
            loan += 1

    def reduce(self, chips: Mapping[Point, int], base: Point) -> tuple[Chips, list[Firing]]:
        """
        Base-reduced form of any divisor

        :param chips: coefficients keyed by canonical points
        :param base: the canonical base point
        """
        debts = {point: -count for point, count in chips.items() if count < 0 and point != base}
        reduced, firings = self.burn_down(
            {point: count for point, count in chips.items() if point not in debts}, base
        )
        for point, count in debts.items():
            for _ in range(count):
                reduced, more = self.remove_chip(reduced, point, base)
                firings.extend(more)
        return reduced, firings

    def witness(self, firings: Iterable[Firing]) -> PLFunction:
        """
        Sum of the firing functions as one piecewise-linear function
        """
        firings = list(firings)
        pieces = {}
        for edge in self.graph.edges:
            offsets = {Fraction(0), edge.length}
            for firing in firings:
                for start, end in firing.intervals.get(edge.id, ()):
                    offsets.update(
                        offset
                        for offset in (start - firing.distance, start, end, end + firing.distance)
                        if 0 <= offset <= edge.length
                    )
            pieces[edge.id] = [
                (offset, sum((firing.value(edge.id, offset) for firing in firings), Fraction(0)))
                for offset in sorted(offsets)
            ]
        return PLFunction(self.graph, pieces)


def dhar_reduce(divisor: Divisor, base: Point) -> ReductionResult:
    """
    Unique base-reduced divisor linearly equivalent to the input

    :param divisor: any divisor
    :param base: the base point q
    """
    graph = divisor.graph
    base = graph.canonical(base)
    reducer = BurningReducer(graph)
    chips, firings = reducer.reduce(divisor.coefficients, base)
    return ReductionResult(Divisor(graph, chips), reducer.witness(firings), base)


def is_equivalent_effective(divisor: Divisor) -> bool:
    """
    Whether the divisor is linearly equivalent to an effective divisor
    """
    base = Point(vertex=divisor.graph.vertices[0])
    return dhar_reduce(divisor, base).reduced.is_effective()


def extremal_function(divisor: Divisor, target: Divisor) -> Optional[PLFunction]:
    """
    A function phi with D + div(phi) >= E, normalized to minimum 0

    :param divisor: D
    :param target: the effective divisor E

    returns:
      None when D - E is not equivalent to an effective divisor
    """
    base = Point(vertex=divisor.graph.vertices[0])
    result = dhar_reduce(divisor - target, base)
    if not result.reduced.is_effective():
        return None
    return result.witness.normalized()


def loopless_model_points(graph: MetricGraph) -> list[Point]:
    """
    Vertices of a loopless model: all vertices plus the midpoint of each loop
    """
    points = [Point(vertex=vertex) for vertex in graph.vertices]
    points.extend(graph.point(edge.id, edge.length / 2) for edge in graph.edges if edge.is_loop)
    return points


class RankEngine:
    """
    Baker-Norine rank over a rank-determining point set

    r(D) >= k iff D - p has rank >= k - 1 for every p of the set. States are
    memoized by their base-reduced form. Every divisor of degree at least the
    genus is equivalent to an effective one, which settles most states
    without search.
    """

    def __init__(self, graph: MetricGraph, rank_points: Iterable[Point]):
        """
        Constructor for RankEngine

        :param graph: the metric graph
        :param rank_points: a rank-determining set of points
        """
        self._logger = getLogger(__name__)
        self.graph = graph
        self.rank_points = sorted(
            {graph.canonical(point) for point in rank_points}, key=lambda point: point.sort_key
        )
        self.base = self.rank_points[0]
        self.genus = graph.genus()
        self._reducer = BurningReducer(graph)
        self._memo: dict[tuple[frozenset, int], bool] = {}

    def rank(self, divisor: Divisor) -> int:
        degree = divisor.degree()
        if degree < 0:
            return -1
        reduced, _ = self._reducer.reduce(divisor.coefficients, self.base)
        if reduced.get(self.base, 0) < 0:
            return -1
        lower = max(0, degree - self.genus)
        upper = degree
        for point in self.rank_points:
            if upper <= lower:
                break
            at_point, _ = self._reducer.reduce(divisor.coefficients, point)
            upper = min(upper, at_point.get(point, 0))
        rank = lower
        while rank < upper and self._rank_at_least(frozenset(reduced.items()), rank + 1):
            rank += 1
        self._logger.debug("Rank of %s is %s (bounds %s..%s)", divisor, rank, lower, upper)
        return rank

    def _rank_at_least(self, state: frozenset, wanted: int) -> bool:
        chips = dict(state)
        if chips.get(self.base, 0) < 0:
            return False
        if wanted <= 0:
            return True
        degree = sum(chips.values())
        if degree < wanted:
            return False
        if degree - wanted >= self.genus:
            return True
        key = (state, wanted)
        if key in self._memo:
            return self._memo[key]
        result = True
        for point in self.rank_points:
            lowered, _ = self._reducer.remove_chip(chips, point, self.base)
            if not self._rank_at_least(frozenset(lowered.items()), wanted - 1):
                result = False
                break
        self._memo[key] = result
        return result


def bn_rank(divisor: Divisor) -> int:
    """
    Baker-Norine rank over the vertices of a loopless model and the support
    """
    points = loopless_model_points(divisor.graph) + divisor.support()
    return RankEngine(divisor.graph, points).rank(divisor)


def bn_rank_brute_force(divisor: Divisor, parts: int = 4) -> int:
    """
    Rank over the far larger point set of the parts-fold edge subdivision
    """
    graph = divisor.graph
    points = [Point(vertex=vertex) for vertex in graph.vertices]
    for edge in graph.edges:
        points.extend(graph.point(edge.id, edge.length * k / parts) for k in range(1, parts))
    points.extend(divisor.support())
    return RankEngine(graph, points).rank(divisor)


def riemann_roch_residual(divisor: Divisor) -> int:
    """
    (r(D) - r(K - D)) - (deg D - g + 1); zero by Riemann-Roch
    """
    graph = divisor.graph
    dual = canonical_divisor(graph) - divisor
    return (bn_rank(divisor) - bn_rank(dual)) - (divisor.degree() - graph.genus() + 1)
