"""Finitely generated tropical submodules of R(D)"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from logging import getLogger
from typing import Optional, Sequence

from tropls.common.custom_exceptions import InputException
from tropls.graphs.divisor import Divisor
from tropls.graphs.metric_graph import MetricGraph, Point, TangentVector
from tropls.graphs.pl_function import PLFunction, tropical_combine
from tropls.series.constraints import solve_weak

_logger = getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TropicalSubmodule:
    """
    Tropical module generated by finitely many functions of R(D)
    """
    divisor: Divisor
    generators: tuple[PLFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.generators:
            raise InputException("a tropical submodule needs at least one generator")
        for index, generator in enumerate(self.generators):
            if generator.graph != self.divisor.graph:
                raise InputException(f"generator {index} lives on another graph")
            if not (self.divisor + generator.divisor()).is_effective():
                raise InputException(f"generator {index} is not in R(D)")

    @property
    def graph(self) -> MetricGraph:
        return self.divisor.graph

    def __len__(self) -> int:
        return len(self.generators)

    def with_generators(self, generators: Sequence[PLFunction]) -> "TropicalSubmodule":
        return TropicalSubmodule(self.divisor, tuple(generators))

    def divisor_of(self, function: PLFunction) -> Divisor:
        """
        The effective divisor D + div(function)
        """
        return self.divisor + function.divisor()


def membership(function: PLFunction, module: TropicalSubmodule) -> Optional[list[Fraction]]:
    """
    Coefficients a with function = min_i(phi_i + a_i), or None

    The candidate a_i = max(function - phi_i) is the least coefficient keeping
    phi_i + a_i above the function; membership holds iff these reach it.
    """
    coefficients = [(function - generator).maximum() for generator in module.generators]
    combined = tropical_combine(list(zip(module.generators, coefficients)))
    if combined == function:
        return coefficients
    return None


def minimize_generators(module: TropicalSubmodule) -> TropicalSubmodule:
    """
    Drops generators that lie in the module generated by the others
    """
    kept = list(module.generators)
    for index in range(len(kept) - 1, -1, -1):
        if len(kept) == 1:
            break
        others = kept[:index] + kept[index + 1:]
        if membership(kept[index], module.with_generators(others)) is not None:
            _logger.debug("Generator %s is redundant", index)
            kept = others
    return module.with_generators(kept)


def slope_vector(module: TropicalSubmodule, tangent: TangentVector) -> tuple[int, ...]:
    """
    Sorted distinct outgoing slopes of the module along a tangent

    A combination has slope min over its achievers, which is one of the
    generator slopes, so the generators already give every value.
    """
    return tuple(sorted({generator.slope(tangent) for generator in module.generators}))


def tangent_slopes(module: TropicalSubmodule, point: Point) -> list[tuple[TangentVector, list[int]]]:
    """
    Generator slopes along every tangent at a point
    """
    return [
        (tangent, [generator.slope(tangent) for generator in module.generators])
        for tangent in module.graph.tangent_vectors(point)
    ]


def tied_order(module: TropicalSubmodule, point: Point, indices: Sequence[int]) -> int:
    """
    ord at the point of the combination where the given generators tie there

    Equals D(x) - sum over tangents of the least slope among the indices.
    """
    total = module.divisor[point]
    for _, slopes in tangent_slopes(module, point):
        total -= min(slopes[index] for index in indices)
    return total


@dataclass(frozen=True)
class LocusCell:
    """
    Open subinterval or refinement point with its covered status
    """
    point: Point
    covered: bool
    edge: Optional[str] = None
    start: Fraction = Fraction(0)
    end: Fraction = Fraction(0)

    @property
    def is_open(self) -> bool:
        return self.start < self.end


@dataclass(frozen=True)
class CoveredLocus:
    """
    Points x for which some element psi has D + div(psi) >= x
    """
    graph: MetricGraph
    cells: tuple[LocusCell, ...]

    def is_everything(self) -> bool:
        return all(cell.covered for cell in self.cells)

    def uncovered_points(self) -> list[Point]:
        return [cell.point for cell in self.cells if not cell.covered]

    def covered_segments(self) -> list[tuple[str, Fraction, Fraction]]:
        return [(cell.edge, cell.start, cell.end) for cell in self.cells if cell.is_open and cell.covered]

    def contains(self, point: Point) -> bool:
        point = self.graph.canonical(point)
        for cell in self.cells:
            if not cell.is_open and cell.point == point:
                return cell.covered
        for cell in self.cells:
            if cell.is_open and point.edge == cell.edge and cell.start < point.offset < cell.end:
                return cell.covered
        raise InputException(f"point {point} is not in any cell")


def covered_locus(module: TropicalSubmodule) -> CoveredLocus:
    """
    Locus of points contained in the support of some divisor of the module

    At a refinement point every generator can be made to tie, which gives the
    largest possible order there; inside an open cell a point is covered iff
    two generators have different slopes on the cell.
    """
    graph = module.graph
    all_indices = range(len(module.generators))
    cells = [
        LocusCell(point, tied_order(module, point, all_indices) > 0)
        for point in (Point(vertex=vertex) for vertex in graph.vertices)
    ]
    support = module.divisor.support()
    for edge in graph.edges:
        offsets = {offset for generator in module.generators for offset in generator.breakpoint_offsets(edge.id)}
        offsets.update(point.offset for point in support if point.edge == edge.id)
        offsets = sorted(offsets)
        for start, end in zip(offsets, offsets[1:]):
            slopes = {generator.segment_slope(edge.id, start) for generator in module.generators}
            cells.append(LocusCell(graph.point(edge.id, (start + end) / 2), len(slopes) > 1, edge.id, start, end))
            if end < edge.length:
                point = graph.point(edge.id, end)
                cells.append(LocusCell(point, tied_order(module, point, all_indices) > 0, edge.id, end, end))
    return CoveredLocus(graph, tuple(cells))


def _minimal_good_sets(module: TropicalSubmodule, point: Point, needed: int) -> list[frozenset[int]]:
    count = len(module.generators)
    slopes = tangent_slopes(module, point)
    base = module.divisor[point]
    found: list[frozenset[int]] = []
    for size in range(1, count + 1):
        for subset in combinations(range(count), size):
            candidate = frozenset(subset)
            if any(good <= candidate for good in found):
                continue
            order = base - sum(min(values[index] for index in subset) for _, values in slopes)
            if order >= needed:
                found.append(candidate)
    return found


def element_containing(module: TropicalSubmodule, target: Divisor) -> Optional[PLFunction]:
    """
    An element psi with D + div(psi) >= target, or None when none exists

    Each support point x of the target needs a set of generators tying as the
    minimum at x that gives enough order there. One minimal set is chosen per
    point and the resulting tie constraints are solved as difference
    constraints on the coefficients.
    """
    if not target.is_effective():
        raise InputException("the target divisor must be effective")
    points = target.support()
    if not points:
        return module.generators[0]
    options = []
    for point in points:
        good = _minimal_good_sets(module, point, target[point])
        if not good:
            return None
        options.append(good)
    for choice in product(*options):
        used = sorted(set().union(*choice))
        local = {index: position for position, index in enumerate(used)}
        constraints = []
        for point, tied in zip(points, choice):
            values = {index: module.generators[index].value_at(point) for index in used}
            for index in tied:
                for other in used:
                    if other != index:
                        constraints.append((local[index], local[other], values[other] - values[index]))
        coefficients = solve_weak(len(used), constraints)
        if coefficients is None:
            continue
        candidate = tropical_combine([
            (module.generators[index], coefficients[local[index]]) for index in used
        ])
        if module.divisor_of(candidate) >= target:
            return candidate
    return None


def generator_subset(function: PLFunction, module: TropicalSubmodule) -> Optional[list[int]]:
    """
    A minimal set of generator indices whose span contains the function
    """
    if membership(function, module) is None:
        return None
    kept = list(range(len(module.generators)))
    for index in list(kept):
        trial = [other for other in kept if other != index]
        if trial and membership(
            function, module.with_generators([module.generators[other] for other in trial])
        ) is not None:
            kept = trial
    return kept


def divisor_path(
    module: TropicalSubmodule, first: PLFunction, second: PLFunction, steps: int
) -> list[Divisor]:
    """
    Divisors along psi_t = min(t + first, (M - t) + second), t in [0, M]

    M is large enough that the path starts at the divisor of first and ends
    at the divisor of second.
    """
    if steps < 1:
        raise InputException("a divisor path needs at least one step")
    span = max((first - second).maximum(), (second - first).maximum(), Fraction(0))
    path = []
    for step in range(steps + 1):
        shift = span * step / steps
        path.append(module.divisor_of(tropical_combine([(first, shift), (second, span - shift)])))
    return path
