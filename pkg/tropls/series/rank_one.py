"""Constructive machinery for tropical linear series of rank 1"""
from fractions import Fraction
from itertools import combinations
from logging import getLogger
from typing import Optional

from tropls.common.constants import AnswerKind
from tropls.common.custom_exceptions import InconsistencyException, InputException, PreconditionException
from tropls.graphs.divisor import Divisor
from tropls.graphs.metric_graph import MetricGraph, Point, TangentVector
from tropls.graphs.pl_function import PLFunction, compare_up_to_constant, tropical_combine
from tropls.graphs.reduction import bn_rank, dhar_reduce, extremal_function, loopless_model_points
from tropls.series.dependence import DependenceAnswer, DependenceEngine
from tropls.series.tls import TLSVerifier, slope_subdivision
from tropls.series.trop_module import TropicalSubmodule, membership, minimize_generators, slope_vector

_logger = getLogger(__name__)


def _candidates(module: TropicalSubmodule) -> list[PLFunction]:
    functions = list(module.generators)
    for first, second in combinations(module.generators, 2):
        functions.append(tropical_combine([(first, 0), (second, 0)]))
    return functions


def _has_constant_slope(function: PLFunction, edge_id: str, start: Fraction, end: Fraction, slope: int) -> bool:
    if any(start < offset < end for offset in function.breakpoint_offsets(edge_id)):
        return False
    return function.segment_slope(edge_id, start) == slope


def edge_extremal_functions(module: TropicalSubmodule, piece: str, index: int) -> PLFunction:
    """
    Element of the module with slope s[index] along the whole of an edge

    :param module: a rank-1 series
    :param piece: edge id of the slope subdivision, oriented from its tail
    :param index: position in the slope vector
    """
    subdivision = slope_subdivision(module)
    if piece not in subdivision.provenance:
        raise InputException(f"{piece} is not an edge of the slope subdivision")
    source, start, end = subdivision.provenance[piece]
    tangent = TangentVector(module.graph.point(source, start), source, True)
    slopes = slope_vector(module, tangent)
    if not 0 <= index < len(slopes):
        raise InputException(f"slope index {index} is out of range for {slopes}")
    for function in _candidates(module):
        if _has_constant_slope(function, source, start, end, slopes[index]):
            return function
    raise InconsistencyException(f"no function has constant slope {slopes[index]} along {piece}")


def rank1_canonical_generators(
    module: TropicalSubmodule, verifier: Optional[TLSVerifier] = None
) -> TropicalSubmodule:
    """
    The module generated by the two edge-extremal functions of every edge

    The result and the input contain each other's generators.
    """
    verifier = verifier or TLSVerifier()
    if not verifier.is_series(module, 1):
        raise PreconditionException("canonical generators need a tropical linear series of rank 1")
    subdivision = slope_subdivision(module)
    functions: list[PLFunction] = []
    for piece in subdivision.provenance:
        for index in (0, 1):
            function = edge_extremal_functions(module, piece, index)
            if function not in functions:
                functions.append(function)
    canonical = minimize_generators(module.with_generators(functions))
    for generator in module.generators:
        if membership(generator, canonical) is None:
            raise InconsistencyException("a generator is not spanned by the edge-extremal functions")
    _logger.info(
        "Canonical generating set of %s functions from %s edges",
        len(canonical), len(subdivision.provenance)
    )
    return canonical


def _interval_offset(graph: MetricGraph, point: Point) -> Fraction:
    point = graph.canonical(point)
    edge = graph.edges[0]
    if point.is_vertex:
        return Fraction(0) if point.vertex == edge.tail else edge.length
    return point.offset


def _ramp(graph: MetricGraph, first: int, bend: Fraction, second: int) -> PLFunction:
    edge = graph.edges[0]
    pieces = [(0, 0), (bend, first * bend), (edge.length, first * bend + second * (edge.length - bend))]
    return PLFunction(graph, {edge.id: pieces})


def interval_rank1_builder(graph: MetricGraph, divisor: Divisor, w0: Point, w1: Point) -> TropicalSubmodule:
    """
    The rank-1 series of a degree-2 divisor on an interval with given w_0, w_1

    Built for D = 2x, x the tail of the interval, and moved to D by a
    function h with D + div(h) = 2x.
    phi_0 has slope 1 up to w_0, then 0; phi_1 slope 2 up to w_1, then 1.
    When w_0 lies beyond w_1, phi_2 has slope 2 up to the midpoint z of
    w_1 and w_0, then 0.

    :param graph: a single edge between two distinct vertices
    :param divisor: a divisor of degree 2
    :param w0: point of div(phi_0) + D other than x
    :param w1: point of div(phi_1) + D other than y
    """
    if len(graph.edges) != 1 or graph.edges[0].is_loop:
        raise InputException("the interval builder needs a graph with a single non-loop edge")
    if divisor.graph != graph or divisor.degree() != 2:
        raise InputException("the interval builder needs a degree-2 divisor on the interval")
    start, end = _interval_offset(graph, w0), _interval_offset(graph, w1)
    generators = [_ramp(graph, 1, start, 0), _ramp(graph, 2, end, 1)]
    if start > end:
        middle = (start + end) / 2
        generators.append(_ramp(graph, 2, middle, 0))
        _logger.info("w_0 lies beyond w_1, third generator bends at %s", middle)
    base = Divisor(graph, {Point(vertex=graph.edges[0].tail): 2})
    shift = extremal_function(divisor, base)
    if shift is None:
        raise InconsistencyException("degree-2 divisors on an interval are equivalent")
    return TropicalSubmodule(divisor, tuple(generator + shift for generator in generators))


def _forced_function(divisor: Divisor, point: Point, bases: list[Point]) -> Optional[PLFunction]:
    """
    The function phi with D + div(phi) >= point when it is unique up to a constant
    """
    shifted = divisor - Divisor(divisor.graph, {point: 1})
    found = None
    for base in bases:
        result = dhar_reduce(shifted, base)
        if not result.reduced.is_effective():
            return None
        candidate = result.witness.normalized()
        if found is None:
            found = candidate
        elif compare_up_to_constant(candidate, found) is None:
            return None
    return found


def rank1_obstruction(
    divisor: Divisor, engine: Optional[DependenceEngine] = None
) -> Optional[tuple[list[Point], list[PLFunction], DependenceAnswer]]:
    """
    Three forced functions that are tropically independent, or None

    A point u forces phi_u when D - u has a single effective representative;
    every rank-1 series in R(D) then contains phi_u, so an independent triple
    of forced functions rules all of them out. Points outside the support of
    D are tried first.
    """
    if bn_rank(divisor) < 1:
        raise PreconditionException("the divisor must have rank at least 1")
    engine = engine or DependenceEngine()
    graph = divisor.graph
    support = set(divisor.support())
    points = list(dict.fromkeys(loopless_model_points(graph) + divisor.support()))
    points.sort(key=lambda point: point in support)
    forced: list[tuple[Point, PLFunction]] = []
    for point in points:
        function = _forced_function(divisor, point, points)
        if function is None:
            continue
        if any(compare_up_to_constant(function, other) is not None for _, other in forced):
            continue
        forced.append((point, function))
    _logger.info("%s forced functions among %s points", len(forced), len(points))
    for triple in combinations(forced, 3):
        functions = [function for _, function in triple]
        answer = engine.decide(functions)
        if answer.kind == AnswerKind.INDEPENDENT and answer.verdict is not None:
            return [point for point, _ in triple], functions, answer
    return None


def finite_vertex_set(module: TropicalSubmodule) -> list[Point]:
    """
    Points outside of which a point lies on exactly one divisor of the series

    On each edge E of the slope subdivision, delta = phi_0^E - phi_1^E is
    strictly monotone; W_E holds the points of E where delta takes a value
    that delta also takes on an open set of the graph.
    """
    graph = module.graph
    subdivision = slope_subdivision(module)
    points = {Point(vertex=vertex) for vertex in graph.vertices}
    points.update(subdivision.unmap_point(Point(vertex=vertex)) for vertex in subdivision.refined.vertices)
    for piece, (source, start, end) in subdivision.provenance.items():
        difference = edge_extremal_functions(module, piece, 0) - edge_extremal_functions(module, piece, 1)
        flat_values = set()
        for edge in graph.edges:
            breakpoints = difference.values(edge.id)
            for (_, value), (_, next_value) in zip(breakpoints, breakpoints[1:]):
                if value == next_value:
                    flat_values.add(value)
        low = difference.value_on_edge(source, start)
        rate = difference.segment_slope(source, start)
        for value in flat_values:
            if rate == 0:
                continue
            offset = start + (value - low) / rate
            if start < offset < end:
                points.add(graph.point(source, offset))
    return sorted(points, key=lambda point: point.sort_key)


def divisors_through(module: TropicalSubmodule, point: Point) -> list[Divisor]:
    """
    Divisors D + div(psi) containing the point, psi a generator or two tied generators
    """
    point = module.graph.canonical(point)
    generators = module.generators
    found: list[Divisor] = []
    candidates = list(generators)
    for first, second in combinations(generators, 2):
        gap = first.value_at(point) - second.value_at(point)
        candidates.append(tropical_combine([(first, 0), (second, gap)]))
    for function in candidates:
        divisor = module.divisor_of(function)
        if divisor[point] > 0 and divisor not in found:
            found.append(divisor)
    return found
