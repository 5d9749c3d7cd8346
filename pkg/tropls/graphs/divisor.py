"""Divisors on metric graphs"""
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from tropls.common.custom_exceptions import InputException
from tropls.graphs.metric_graph import MetricGraph, Point


@dataclass(frozen=True, eq=False)
class Divisor:
    """
    Finite integer combination of points of a metric graph

    Only non-zero coefficients are stored, keyed by canonical points.
    """
    graph: MetricGraph
    coefficients: Mapping[Point, int] = field(default_factory=dict)

    def __post_init__(self):
        cleaned: dict[Point, int] = {}
        for point, count in self.coefficients.items():
            if isinstance(count, bool) or not isinstance(count, int):
                raise InputException(f"divisor coefficient at {point} must be an integer")
            point = self.graph.canonical(point)
            cleaned[point] = cleaned.get(point, 0) + count
        object.__setattr__(
            self, "coefficients", {point: count for point, count in cleaned.items() if count}
        )

    @classmethod
    def zero(cls, graph: MetricGraph) -> "Divisor":
        return cls(graph, {})

    @classmethod
    def from_points(cls, graph: MetricGraph, points: Iterable[Point]) -> "Divisor":
        """
        Effective divisor with one chip per listed point (repetitions add up)
        """
        counts: dict[Point, int] = {}
        for point in points:
            point = graph.canonical(point)
            counts[point] = counts.get(point, 0) + 1
        return cls(graph, counts)

    def __getitem__(self, point: Point) -> int:
        return self.coefficients.get(self.graph.canonical(point), 0)

    def degree(self) -> int:
        return sum(self.coefficients.values())

    def support(self) -> list[Point]:
        return sorted(self.coefficients, key=lambda point: point.sort_key)

    def is_effective(self) -> bool:
        return all(count > 0 for count in self.coefficients.values())

    def _check_graph(self, other: "Divisor"):
        if other.graph != self.graph:
            raise InputException("divisors live on different graphs")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check_graph(other)
        counts = dict(self.coefficients)
        for point, count in other.coefficients.items():
            counts[point] = counts.get(point, 0) + count
        return Divisor(self.graph, counts)

    def __neg__(self) -> "Divisor":
        return Divisor(self.graph, {point: -count for point, count in self.coefficients.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, factor: int) -> "Divisor":
        return Divisor(
            self.graph, {point: factor * count for point, count in self.coefficients.items()}
        )

    __rmul__ = __mul__

    def __ge__(self, other: "Divisor") -> bool:
        return (self - other).is_effective()

    def __le__(self, other: "Divisor") -> bool:
        return (other - self).is_effective()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.graph == other.graph and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(frozenset(self.coefficients.items()))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        return " + ".join(
            f"{count}*{point}" if count != 1 else str(point)
            for point, count in ((point, self.coefficients[point]) for point in self.support())
        )


def canonical_divisor(graph: MetricGraph) -> Divisor:
    """
    K = sum over vertices of (valence - 2) v

    Interior points have valence 2 and contribute nothing, so K does not
    depend on the chosen model.
    """
    return Divisor(
        graph,
        {Point(vertex=vertex): graph.valence(vertex) - 2 for vertex in graph.vertices}
    )
