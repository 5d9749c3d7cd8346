"""Piecewise-linear functions with integer slopes and their tropical calculus"""
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from logging import getLogger
from typing import Iterable, Mapping, Optional, Sequence, Union

from tropls.common.custom_exceptions import InputException, UnsupportedException
from tropls.common.rationals import RationalLike, format_rational, parse_rational
from tropls.graphs.divisor import Divisor
from tropls.graphs.metric_graph import Edge, MetricGraph, Point, Subdivision, TangentVector

_logger = getLogger(__name__)

Breakpoints = tuple[tuple[Fraction, Fraction], ...]


def _canonical_breakpoints(edge: Edge, raw: Sequence[tuple]) -> Breakpoints:
    points = sorted(
        ((parse_rational(offset), parse_rational(value)) for offset, value in raw),
        key=lambda item: item[0]
    )
    if not points or points[0][0] != 0 or points[-1][0] != edge.length:
        raise InputException(f"breakpoints on {edge.id} must start at 0 and end at its length")
    kept = [points[0]]
    slopes = []
    for offset, value in points[1:]:
        previous_offset, previous_value = kept[-1]
        if offset == previous_offset:
            if value != previous_value:
                raise InputException(f"function is discontinuous on {edge.id}")
            continue
        slope = (value - previous_value) / (offset - previous_offset)
        if slope.denominator != 1:
            raise InputException(
                f"slope {format_rational(slope)} on {edge.id} is not an integer"
            )
        if slopes and slopes[-1] == slope:
            kept[-1] = (offset, value)
        else:
            kept.append((offset, value))
            slopes.append(slope)
    if len(kept) == 1:
        kept.append((edge.length, kept[0][1]))
    return tuple(kept)


class PLFunction:
    """
    Continuous piecewise-linear function on a metric graph with integer slopes

    On each edge the function is stored as breakpoints (offset, value) from
    the tail to the head, collinear breakpoints removed.
    """

    def __init__(
        self,
        graph: MetricGraph,
        pieces: Mapping[str, Sequence[tuple]],
        vertex_values: Optional[Mapping[str, RationalLike]] = None
    ):
        """
        Constructor for PLFunction

        :param graph: the metric graph
        :param pieces: for every edge id a sequence of (offset, value) pairs
        :param vertex_values: values at vertices without incident edges
        """
        self.graph = graph
        self._pieces: dict[str, Breakpoints] = {}
        for edge in graph.edges:
            if edge.id not in pieces:
                raise InputException(f"no values given on edge {edge.id}")
            self._pieces[edge.id] = _canonical_breakpoints(edge, pieces[edge.id])
        unknown = set(pieces) - set(self._pieces)
        if unknown:
            raise InputException(f"values given on unknown edges {sorted(unknown)}")
        self._vertex_values: dict[str, Fraction] = {}
        for edge in graph.edges:
            for vertex, value in (
                (edge.tail, self._pieces[edge.id][0][1]),
                (edge.head, self._pieces[edge.id][-1][1])
            ):
                known = self._vertex_values.setdefault(vertex, value)
                if known != value:
                    raise InputException(f"function is discontinuous at vertex {vertex}")
        for vertex in graph.vertices:
            if vertex not in self._vertex_values:
                given = (vertex_values or {}).get(vertex, 0)
                self._vertex_values[vertex] = parse_rational(given)

    @classmethod
    def constant(cls, graph: MetricGraph, value: RationalLike = 0) -> "PLFunction":
        value = parse_rational(value)
        return cls(
            graph,
            {edge.id: [(0, value), (edge.length, value)] for edge in graph.edges},
            {vertex: value for vertex in graph.vertices}
        )

    @classmethod
    def from_vertex_values(
        cls, graph: MetricGraph, values: Mapping[str, RationalLike]
    ) -> "PLFunction":
        """
        Function that is linear on every edge with the given vertex values
        """
        return cls(
            graph,
            {
                edge.id: [(0, values[edge.tail]), (edge.length, values[edge.head])]
                for edge in graph.edges
            },
            values
        )

    def values(self, edge_id: str) -> Breakpoints:
        self.graph.edge(edge_id)
        return self._pieces[edge_id]

    def breakpoint_offsets(self, edge_id: str) -> list[Fraction]:
        return [offset for offset, _ in self.values(edge_id)]

    def value_on_edge(self, edge_id: str, offset: Fraction) -> Fraction:
        points = self._pieces[edge_id]
        index = bisect_right(points, offset, key=lambda item: item[0]) - 1
        if index >= len(points) - 1:
            return points[-1][1]
        start, value = points[index]
        end, next_value = points[index + 1]
        return value + (next_value - value) * (offset - start) / (end - start)

    def segment_slope(self, edge_id: str, offset: Fraction, toward_head: bool = True) -> int:
        """
        Slope of the linear piece leaving the offset in the given direction
        """
        points = self._pieces[edge_id]
        index = bisect_right(points, offset, key=lambda item: item[0]) - 1
        if toward_head:
            index = min(index, len(points) - 2)
            start, value = points[index]
            end, next_value = points[index + 1]
            return int((next_value - value) / (end - start))
        if points[index][0] == offset:
            index -= 1
        index = max(index, 0)
        start, value = points[index]
        end, next_value = points[index + 1]
        return -int((next_value - value) / (end - start))

    def value_at(self, point: Point) -> Fraction:
        point = self.graph.canonical(point)
        if point.is_vertex:
            return self._vertex_values[point.vertex]
        return self.value_on_edge(point.edge, point.offset)

    def slope(self, tangent: TangentVector) -> int:
        """
        Outgoing slope along a tangent vector
        """
        if tangent.ray is not None:
            raise UnsupportedException("ray tangents need an extended function")
        base = self.graph.canonical(tangent.base)
        edge = self.graph.edge(tangent.edge)
        offsets = self.graph.edge_location(base, edge.id)
        if not offsets:
            raise InputException(f"tangent {tangent} does not start on its edge")
        if len(offsets) == 2:
            offset = Fraction(0) if tangent.toward_head else edge.length
        else:
            offset = offsets[0]
        if (tangent.toward_head and offset == edge.length) or (
            not tangent.toward_head and offset == 0
        ):
            raise InputException(f"tangent {tangent} points out of its edge")
        return self.segment_slope(edge.id, offset, tangent.toward_head)

    def divisor(self) -> Divisor:
        """
        Principal divisor: ord_x = - sum of outgoing slopes at x
        """
        counts: dict[Point, int] = {}
        for vertex in self.graph.vertices:
            total = 0
            for edge_id, toward_head in self.graph.incident_ends(vertex):
                edge = self.graph.edge(edge_id)
                offset = Fraction(0) if toward_head else edge.length
                total += self.segment_slope(edge_id, offset, toward_head)
            counts[Point(vertex=vertex)] = -total
        for edge in self.graph.edges:
            points = self._pieces[edge.id]
            for k in range(1, len(points) - 1):
                left = (points[k][1] - points[k - 1][1]) / (points[k][0] - points[k - 1][0])
                right = (points[k + 1][1] - points[k][1]) / (points[k + 1][0] - points[k][0])
                counts[Point(edge=edge.id, offset=points[k][0])] = int(left - right)
        return Divisor(self.graph, counts)

    def minimum(self) -> Fraction:
        return min(
            [value for points in self._pieces.values() for _, value in points]
            + list(self._vertex_values.values())
        )

    def maximum(self) -> Fraction:
        return max(
            [value for points in self._pieces.values() for _, value in points]
            + list(self._vertex_values.values())
        )

    def is_constant(self) -> bool:
        return self.minimum() == self.maximum()

    def shift(self, constant: RationalLike) -> "PLFunction":
        constant = parse_rational(constant)
        return PLFunction(
            self.graph,
            {
                edge_id: [(offset, value + constant) for offset, value in points]
                for edge_id, points in self._pieces.items()
            },
            {vertex: value + constant for vertex, value in self._vertex_values.items()}
        )

    def normalized(self) -> "PLFunction":
        """
        Representative of the function modulo constants with minimum 0
        """
        return self.shift(-self.minimum())

    def __add__(self, other: Union["PLFunction", RationalLike]) -> "PLFunction":
        if isinstance(other, PLFunction):
            return pointwise_sum(self, other)
        return self.shift(other)

    __radd__ = __add__

    def __neg__(self) -> "PLFunction":
        return PLFunction(
            self.graph,
            {
                edge_id: [(offset, -value) for offset, value in points]
                for edge_id, points in self._pieces.items()
            },
            {vertex: -value for vertex, value in self._vertex_values.items()}
        )

    def __sub__(self, other: Union["PLFunction", RationalLike]) -> "PLFunction":
        if isinstance(other, PLFunction):
            return pointwise_sum(self, -other)
        return self.shift(-parse_rational(other))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PLFunction):
            return NotImplemented
        return (
            self.graph == other.graph
            and self._pieces == other._pieces
            and self._vertex_values == other._vertex_values
        )

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._pieces.items())))

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{edge_id}: " + " ".join(
                f"({format_rational(offset)},{format_rational(value)})" for offset, value in points
            )
            for edge_id, points in self._pieces.items()
        )
        return f"PLFunction({parts})"

    def transport(self, subdivision: Subdivision) -> "PLFunction":
        """
        The same function on a refinement of its graph
        """
        if subdivision.original != self.graph:
            raise InputException("subdivision belongs to another graph")
        pieces = {}
        for piece, (source, start, end) in subdivision.provenance.items():
            inner = [offset for offset in self.breakpoint_offsets(source) if start < offset < end]
            pieces[piece] = [
                (offset - start, self.value_on_edge(source, offset))
                for offset in [start] + inner + [end]
            ]
        vertex_values = {
            vertex: self.value_at(subdivision.unmap_point(Point(vertex=vertex)))
            for vertex in subdivision.refined.vertices
        }
        return PLFunction(subdivision.refined, pieces, vertex_values)

    def restrict(self, subgraph: MetricGraph) -> "PLFunction":
        """
        Restriction to a graph whose edges and vertices are a part of this one
        """
        return PLFunction(
            subgraph,
            {edge.id: self.values(edge.id) for edge in subgraph.edges},
            {vertex: self._vertex_values[vertex] for vertex in subgraph.vertices}
        )


@dataclass(frozen=True)
class EnvelopeCell:
    """
    Cell of the lower envelope of finitely many shifted functions

    Open cells are open subintervals of an edge (start < end); point cells
    have start == end. achievers are the indices attaining the minimum.
    """
    point: Point
    achievers: frozenset[int]
    edge: Optional[str] = None
    start: Fraction = Fraction(0)
    end: Fraction = Fraction(0)

    @property
    def is_open(self) -> bool:
        return self.start < self.end


def _check_terms(functions: Sequence[PLFunction]) -> MetricGraph:
    if not functions:
        raise InputException("an empty tropical combination is undefined")
    graph = functions[0].graph
    if any(function.graph != graph for function in functions[1:]):
        raise InputException("functions live on different graphs")
    return graph


def edge_grid(
    functions: Sequence[PLFunction], offsets: Sequence[Fraction], edge_id: str
) -> list[Fraction]:
    """
    Breakpoints of all shifted functions on an edge plus all pairwise crossings

    Between consecutive grid offsets every function is linear and the order of
    the shifted functions does not change.
    """
    base = sorted({offset for function in functions for offset in function.breakpoint_offsets(edge_id)})
    grid = set(base)
    for start, end in zip(base, base[1:]):
        lines = [
            (function.value_on_edge(edge_id, start) + shift, function.segment_slope(edge_id, start))
            for function, shift in zip(functions, offsets)
        ]
        for (value_a, slope_a), (value_b, slope_b) in combinations(lines, 2):
            if slope_a != slope_b:
                crossing = start + (value_b - value_a) / (slope_a - slope_b)
                if start < crossing < end:
                    grid.add(crossing)
    return sorted(grid)


def _achievers(values: list[Fraction]) -> frozenset[int]:
    least = min(values)
    return frozenset(index for index, value in enumerate(values) if value == least)


def lower_envelope(
    functions: Sequence[PLFunction], offsets: Optional[Sequence[RationalLike]] = None
) -> list[EnvelopeCell]:
    """
    Cells of min_i (f_i + c_i) with the indices achieving the minimum

    :param functions: functions on a common graph
    :param offsets: the constants c_i, all 0 when None

    returns:
      vertex cells, interior point cells and open cells covering the graph
    """
    graph = _check_terms(functions)
    offsets = [parse_rational(offset) for offset in (offsets or [0] * len(functions))]
    if len(offsets) != len(functions):
        raise InputException("one coefficient per function is required")
    cells = [
        EnvelopeCell(
            Point(vertex=vertex),
            _achievers([
                function.value_at(Point(vertex=vertex)) + shift
                for function, shift in zip(functions, offsets)
            ])
        )
        for vertex in graph.vertices
    ]
    for edge in graph.edges:
        grid = edge_grid(functions, offsets, edge.id)
        for start, end in zip(grid, grid[1:]):
            middle = (start + end) / 2
            cells.append(EnvelopeCell(
                graph.point(edge.id, middle),
                _achievers([
                    function.value_on_edge(edge.id, middle) + shift
                    for function, shift in zip(functions, offsets)
                ]),
                edge.id,
                start,
                end
            ))
            if end < edge.length:
                cells.append(EnvelopeCell(
                    graph.point(edge.id, end),
                    _achievers([
                        function.value_on_edge(edge.id, end) + shift
                        for function, shift in zip(functions, offsets)
                    ]),
                    edge.id,
                    end,
                    end
                ))
    return cells


def tropical_combine(terms: Sequence[tuple[PLFunction, RationalLike]]) -> PLFunction:
    """
    Pointwise minimum of f_i + c_i

    :param terms: (function, constant) pairs on a common graph
    """
    functions = [function for function, _ in terms]
    graph = _check_terms(functions)
    offsets = [parse_rational(offset) for _, offset in terms]
    pieces = {}
    for edge in graph.edges:
        pieces[edge.id] = [
            (offset, min(
                function.value_on_edge(edge.id, offset) + shift
                for function, shift in zip(functions, offsets)
            ))
            for offset in edge_grid(functions, offsets, edge.id)
        ]
    vertex_values = {
        vertex: min(
            function.value_at(Point(vertex=vertex)) + shift
            for function, shift in zip(functions, offsets)
        )
        for vertex in graph.vertices
    }
    return PLFunction(graph, pieces, vertex_values)


def pointwise_sum(first: PLFunction, second: PLFunction) -> PLFunction:
    """
    Ordinary sum of two functions
    """
    graph = _check_terms([first, second])
    pieces = {}
    for edge in graph.edges:
        grid = sorted(set(first.breakpoint_offsets(edge.id)) | set(second.breakpoint_offsets(edge.id)))
        pieces[edge.id] = [
            (offset, first.value_on_edge(edge.id, offset) + second.value_on_edge(edge.id, offset))
            for offset in grid
        ]
    vertex_values = {
        vertex: first.value_at(Point(vertex=vertex)) + second.value_at(Point(vertex=vertex))
        for vertex in graph.vertices
    }
    return PLFunction(graph, pieces, vertex_values)


def compare_up_to_constant(first: PLFunction, second: PLFunction) -> Optional[Fraction]:
    """
    The constant c with first = second + c, or None when none exists
    """
    difference = first - second
    if difference.is_constant():
        return difference.minimum()
    return None


def evaluate(function: PLFunction, point: Point) -> Fraction:
    return function.value_at(point)


def slope(function: PLFunction, tangent: TangentVector) -> int:
    return function.slope(tangent)


def divisor_of(function: PLFunction) -> Divisor:
    return function.divisor()


def refinement_points(functions: Iterable[PLFunction]) -> list[Point]:
    """
    Vertices and all breakpoints of the given functions, as canonical points
    """
    functions = list(functions)
    graph = _check_terms(functions)
    points = {Point(vertex=vertex) for vertex in graph.vertices}
    for function in functions:
        for edge in graph.edges:
            for offset in function.breakpoint_offsets(edge.id):
                points.add(graph.point(edge.id, offset))
    return sorted(points, key=lambda point: point.sort_key)
