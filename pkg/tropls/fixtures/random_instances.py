"""Seeded random graphs, divisors and functions for the property suites"""
from fractions import Fraction
from math import floor

from numpy.random import Generator

from tropls.graphs.divisor import Divisor
from tropls.graphs.metric_graph import MetricGraph, Point
from tropls.graphs.pl_function import PLFunction


def random_length(rng: Generator, denominator: int = 4) -> Fraction:
    return Fraction(int(rng.integers(1, 2 * denominator + 1)), int(rng.integers(1, denominator + 1)))


def random_metric_graph(rng: Generator, max_vertices: int = 4, max_edges: int = 6,
                        denominator: int = 4) -> MetricGraph:
    """
    Connected multigraph: a random spanning tree plus extra edges, loops allowed

    :param rng: numpy random generator
    :param max_vertices: upper bound on the vertex count
    :param max_edges: upper bound on the edge count
    :param denominator: upper bound on the denominators of the lengths
    """
    count = int(rng.integers(1, max_vertices + 1))
    vertices = [f"v{index}" for index in range(count)]
    pairs = [(vertices[int(rng.integers(index))], vertices[index]) for index in range(1, count)]
    lower = max(len(pairs), 1)
    total = int(rng.integers(lower, max(max_edges, lower) + 1))
    while len(pairs) < total:
        pairs.append((vertices[int(rng.integers(count))], vertices[int(rng.integers(count))]))
    edges = [
        (f"e{index}", tail, head, random_length(rng, denominator)) for index, (tail, head) in enumerate(pairs)
    ]
    return MetricGraph.build(vertices, edges)


def random_point(graph: MetricGraph, rng: Generator, parts: int = 4) -> Point:
    """
    A vertex or a point at a multiple of length / parts on an edge
    """
    if rng.random() < 0.5:
        return Point(vertex=graph.vertices[int(rng.integers(len(graph.vertices)))])
    edge = graph.edges[int(rng.integers(len(graph.edges)))]
    return graph.point(edge.id, edge.length * int(rng.integers(1, parts)) / parts)


def random_divisor(graph: MetricGraph, rng: Generator, degree: int, support: int = 3) -> Divisor:
    """
    Divisor of the given degree on at most support random points
    """
    points = [random_point(graph, rng) for _ in range(int(rng.integers(1, support + 1)))]
    coefficients: dict[Point, int] = {}
    for point in points[1:]:
        coefficients[point] = coefficients.get(point, 0) + int(rng.integers(-2, 3))
    rest = degree - sum(coefficients.values())
    coefficients[points[0]] = coefficients.get(points[0], 0) + rest
    return Divisor(graph, coefficients)


def random_pl_function(graph: MetricGraph, rng: Generator, denominator: int = 4) -> PLFunction:
    """
    Random vertex values joined on every edge by a two-slope integer path

    With q = floor(delta / length) the slopes s1 > q >= s2 meet at the
    offset where the path reaches the head value.
    """
    values = {vertex: Fraction(int(rng.integers(-2 * denominator, 2 * denominator + 1)), denominator)
              for vertex in graph.vertices}
    pieces = {}
    for edge in graph.edges:
        start, end = values[edge.tail], values[edge.head]
        delta = end - start
        base = floor(delta / edge.length)
        rising = base + 1 + int(rng.integers(2))
        falling = base - int(rng.integers(2))
        bend = (delta - falling * edge.length) / (rising - falling)
        pieces[edge.id] = [(0, start), (bend, start + rising * bend), (edge.length, end)]
    return PLFunction(graph, pieces, values)
