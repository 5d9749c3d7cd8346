"""Tropical lines of rank-2 valuated matroids and balancing of maps onto them"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from logging import getLogger
from typing import Optional, Sequence

from pandas import DataFrame

from tropls.common.constants import LocationKind, VerdictKind
from tropls.common.custom_exceptions import InputException, UnsupportedException
from tropls.common.rationals import format_rational, rational_gcd
from tropls.common.verdicts import Verdict
from tropls.graphs.metric_graph import Point, TangentVector
from tropls.graphs.pl_function import refinement_points
from tropls.matroids.matroid import ValuatedMatroid
from tropls.morphisms.modification import ModifiedGraph, PLMap, coordinate_map, projective, tropical_modification
from tropls.series.dependence import DependenceEngine
from tropls.series.trop_module import TropicalSubmodule, minimize_generators, slope_vector
from tropls.series.valuation import rank1_valuated_circuits

_logger = getLogger(__name__)

Vector = tuple[Fraction, ...]
Direction = tuple[int, ...]

DEGREE_TABLE_COLUMNS = ["point", "tangent", "image", "direction", "degree"]


def primitive(vector: Sequence[Fraction]) -> tuple[Direction, Fraction]:
    """
    Primitive integer direction with minimum 0 and the lattice length of a vector

    returns:
      (direction, length); the zero direction has length 0
    """
    shifted = [Fraction(value) - min(vector) for value in vector]
    length = rational_gcd(shifted)
    if length == 0:
        return tuple(0 for _ in shifted), Fraction(0)
    return tuple(int(value / length) for value in shifted), length


def format_vector(vector: Sequence[Fraction]) -> str:
    return "(" + ", ".join(format_rational(value) for value in vector) + ")"


@dataclass(frozen=True)
class TreeEdge:
    """
    Bounded edge of the tree between two nodes
    """
    id: str
    tail: str
    head: str
    direction: Direction
    length: Fraction


@dataclass(frozen=True)
class TreeRay:
    """
    Unbounded end of the tree leaving a node toward coordinate element
    """
    id: str
    node: str
    element: str
    direction: Direction


@dataclass(frozen=True)
class Location:
    kind: LocationKind
    name: Optional[str] = None
    parameter: Fraction = Fraction(0)


@dataclass(frozen=True, eq=False)
class TreeTarget:
    """
    Tropical line of a rank-2 valuated matroid as a metric tree with rays

    Node coordinates are projective representatives with first coordinate 0.
    """
    elements: tuple[str, ...]
    nodes: dict[str, Vector]
    edges: tuple[TreeEdge, ...]
    rays: tuple[TreeRay, ...]

    def locate(self, point: Sequence[Fraction]) -> Location:
        """
        Node, bounded edge or ray containing a point of tropical projective space
        """
        point = projective(point)
        for name, node in self.nodes.items():
            if node == point:
                return Location(LocationKind.NODE, name)
        for edge in self.edges:
            start, end = self.nodes[edge.tail], self.nodes[edge.head]
            parameter = _parameter(start, [b - a for a, b in zip(start, end)], point)
            if parameter is not None and 0 < parameter < 1:
                return Location(LocationKind.EDGE, edge.id, parameter)
        for ray in self.rays:
            parameter = _parameter(self.nodes[ray.node], projective(ray.direction), point)
            if parameter is not None and parameter > 0:
                return Location(LocationKind.RAY, ray.id, parameter)
        return Location(LocationKind.OUTSIDE)

    def directions_at(self, location: Location) -> list[Direction]:
        """
        Primitive outgoing directions of the tree at a located point
        """
        if location.kind == LocationKind.NODE:
            directions = []
            for edge in self.edges:
                if edge.tail == location.name:
                    directions.append(edge.direction)
                if edge.head == location.name:
                    directions.append(_reverse(edge.direction))
            directions.extend(ray.direction for ray in self.rays if ray.node == location.name)
            return directions
        if location.kind == LocationKind.EDGE:
            edge = next(edge for edge in self.edges if edge.id == location.name)
            return [edge.direction, _reverse(edge.direction)]
        if location.kind == LocationKind.RAY:
            ray = next(ray for ray in self.rays if ray.id == location.name)
            return [ray.direction, _reverse(ray.direction)]
        return []


def _reverse(direction: Direction) -> Direction:
    negated = [-value for value in direction]
    least = min(negated)
    return tuple(value - least for value in negated)


def _parameter(start: Vector, step: Sequence[Fraction], point: Vector) -> Optional[Fraction]:
    """
    t with point = start + t * step in projective coordinates, or None
    """
    step = projective(step)
    difference = [b - a for a, b in zip(start, point)]
    parameter = None
    for delta, rate in zip(difference, step):
        if rate == 0:
            if delta != 0:
                return None
            continue
        value = delta / rate
        if parameter is None:
            parameter = value
        elif parameter != value:
            return None
    return parameter


def plucker_vector(matroid: ValuatedMatroid) -> dict[frozenset[int], Fraction]:
    """
    Plucker coordinates p_ij, p_01 = 0, recovered from the 3-element circuits

    A circuit on {i, j, k} is (p_jk, p_ik, p_ij) up to a shift.
    """
    count = len(matroid.elements)
    values = {}
    for circuit in matroid.circuits:
        support = circuit.support()
        if len(support) == 3:
            values[support] = circuit.as_dict()
    names = matroid.elements

    def circuit(*indices) -> dict[str, Fraction]:
        key = frozenset(names[index] for index in indices)
        if key not in values:
            raise InputException(f"missing circuit on {sorted(key)}")
        return values[key]

    plucker = {frozenset((0, 1)): Fraction(0)}
    for k in range(2, count):
        values_01k = circuit(0, 1, k)
        plucker[frozenset((1, k))] = values_01k[names[0]] - values_01k[names[k]]
        plucker[frozenset((0, k))] = values_01k[names[1]] - values_01k[names[k]]
    for j, k in combinations(range(2, count), 2):
        values_0jk = circuit(0, j, k)
        plucker[frozenset((j, k))] = values_0jk[names[0]] - values_0jk[names[k]] + plucker[frozenset((0, j))]
    return plucker


def _attachment_points(count: int, plucker: dict[frozenset[int], Fraction]) -> list[Vector]:
    points = []
    for i in range(count):
        others = [j for j in range(count) if j != i]
        if len(others) < 2:
            points.append(tuple(Fraction(0) for _ in range(count)))
            continue
        coordinates = [Fraction(0)] * count
        for j in others:
            coordinates[j] = plucker[frozenset((i, j))]
        coordinates[i] = max(
            plucker[frozenset((i, j))] + plucker[frozenset((i, k))] - plucker[frozenset((j, k))]
            for j, k in combinations(others, 2)
        )
        points.append(projective(coordinates))
    return points


def _segment(first: Vector, second: Vector) -> list[Vector]:
    """
    Breakpoints of the min-plus segment from second to first
    """
    shifts = sorted({a - b for a, b in zip(first, second)})
    points = []
    for shift in shifts:
        point = projective(min(a, b + shift) for a, b in zip(first, second))
        if not points or points[-1] != point:
            points.append(point)
    return points


def rank1_tree_target(matroid: ValuatedMatroid) -> TreeTarget:
    """
    The tropical line of a rank-2 valuated matroid as a tree

    Leaves r_i have (r_i)_j = p_ij and (r_i)_i = max over j, k of
    p_ij + p_ik - p_jk; the bounded part is the union of the min-plus
    segments between leaves and a ray in direction e_i leaves r_i.
    """
    if matroid.rank() != 2:
        raise InputException(f"a tree target needs a valuated matroid of rank 2, got rank {matroid.rank()}")
    if any(len(circuit.support()) < 3 for circuit in matroid.circuits):
        raise UnsupportedException("tree targets need a simple valuated matroid")
    count = len(matroid.elements)
    leaves = _attachment_points(count, plucker_vector(matroid))
    pieces = []
    for first, second in combinations(leaves, 2):
        path = _segment(first, second)
        pieces.extend(zip(path, path[1:]))
    node_points = list(dict.fromkeys(leaves + [point for piece in pieces for point in piece]))
    split = set()
    for start, end in pieces:
        step = [b - a for a, b in zip(start, end)]
        inside = sorted(
            (_parameter(start, step, node), node) for node in node_points
            if _parameter(start, step, node) is not None and 0 < _parameter(start, step, node) < 1
        )
        chain = [start] + [node for _, node in inside] + [end]
        for a, b in zip(chain, chain[1:]):
            split.add(frozenset((a, b)))
    names = {point: f"n{index}" for index, point in enumerate(node_points)}
    nodes = {names[point]: point for point in node_points}
    edges = []
    for index, pair in enumerate(sorted(split, key=lambda pair: sorted(names[point] for point in pair))):
        tail, head = sorted(pair, key=lambda point: names[point])
        direction, length = primitive([b - a for a, b in zip(tail, head)])
        edges.append(TreeEdge(f"t{index}", names[tail], names[head], direction, length))
    rays = []
    for index, leaf in enumerate(leaves):
        direction = tuple(1 if position == index else 0 for position in range(count))
        rays.append(TreeRay(f"to{matroid.elements[index]}", names[leaf], matroid.elements[index], direction))
    _logger.info("Tree target with %s nodes, %s bounded edges and %s rays", len(nodes), len(edges), len(rays))
    return TreeTarget(tuple(matroid.elements), nodes, tuple(edges), tuple(rays))


@dataclass
class BalancingReport:
    """
    Balancing and finiteness verdicts with the local degree of every source tangent
    """
    balancing: Verdict
    finiteness: Verdict
    degree_table: DataFrame

    @property
    def passed(self) -> bool:
        return self.balancing.passed and self.finiteness.passed


def _source_points(mapping: PLMap, target: TreeTarget) -> list[Point]:
    """
    Refinement points of the coordinates and the preimages of tree nodes
    """
    graph = mapping.source.graph
    points = set(mapping.refinement_points())
    for edge in graph.edges:
        offsets = sorted({
            offset for coordinate in mapping.coordinates for offset in coordinate.function.breakpoint_offsets(edge.id)
        })
        for start, end in zip(offsets, offsets[1:]):
            origin = mapping.image(graph.point(edge.id, start))
            rates = [coordinate.function.segment_slope(edge.id, start) for coordinate in mapping.coordinates]
            for node in target.nodes.values():
                parameter = _parameter(origin, [Fraction(rate) for rate in rates], node)
                if parameter is not None and 0 < parameter < end - start:
                    points.add(graph.point(edge.id, start + parameter))
    return sorted(points, key=lambda point: point.sort_key)


def balancing_check(mapping: PLMap, target: TreeTarget) -> BalancingReport:
    """
    Checks that the map is balanced onto the tree and finite on the base graph

    At every source point the local degrees of the source tangents are summed
    per tree direction and all sums must agree. Finiteness asks
    d = s[1] - s[0] >= 1 on every tangent of the base graph.
    """
    module = mapping.source.module
    graph = mapping.source.graph
    rows = []
    failure = None
    for point in _source_points(mapping, target):
        location = target.locate(mapping.image(point))
        if location.kind == LocationKind.OUTSIDE:
            failure = failure or ("image outside the tree", point)
            continue
        directions = target.directions_at(location)
        sums = {direction: 0 for direction in directions}
        for tangent in graph.tangent_vectors(point):
            direction, degree = primitive([Fraction(value) for value in mapping.slope_vector(tangent)])
            if degree == 0:
                continue
            if direction not in sums:
                failure = failure or ("source direction leaves the tree", tangent)
                continue
            sums[direction] += int(degree)
            rows.append({
                "point": str(point),
                "tangent": str(tangent),
                "image": format_vector(mapping.image(point)),
                "direction": " ".join(str(value) for value in direction),
                "degree": int(degree),
            })
        if len(set(sums.values())) > 1:
            failure = failure or ("unbalanced point", (point, sums))
    table = DataFrame(rows, columns=DEGREE_TABLE_COLUMNS)
    if failure is not None:
        _logger.info("Balancing fails: %s at %s", failure[0], failure[1])
        balancing = Verdict(VerdictKind.FAIL, failure[0], failure[1])
    else:
        balancing = Verdict(VerdictKind.PASS, "balanced at every refinement point")
    return BalancingReport(balancing, _finiteness(module), table)


def local_degree(module: TropicalSubmodule, tangent: TangentVector) -> int:
    """
    d = s[1] - s[0] along a tangent of the base graph
    """
    slopes = slope_vector(module, tangent)
    if len(slopes) != 2:
        raise UnsupportedException("balancing onto a tree needs a series of rank 1")
    return slopes[1] - slopes[0]


def _finiteness(module: TropicalSubmodule) -> Verdict:
    base = module.graph
    points = set(refinement_points(module.generators)) | set(module.divisor.support())
    for point in sorted(points, key=lambda point: point.sort_key):
        for tangent in base.tangent_vectors(point):
            if local_degree(module, tangent) < 1:
                return Verdict(VerdictKind.FAIL, "the map contracts a tangent", tangent)
    return Verdict(VerdictKind.PASS, "local degree s[1] - s[0] is positive on every tangent")


@dataclass(frozen=True, eq=False)
class HarmonicMorphism:
    """
    The modified graph of a rank-1 series with its balanced map to a tree
    """
    modified: ModifiedGraph
    mapping: PLMap
    matroid: ValuatedMatroid
    target: TreeTarget
    report: BalancingReport


def harmonic_morphism(module: TropicalSubmodule, engine: Optional[DependenceEngine] = None) -> HarmonicMorphism:
    """
    Modifies the graph, maps it by the minimal generators and checks balancing

    :param module: a rank-1 series
    :param engine: dependence engine for the valuated circuits
    """
    module = minimize_generators(module)
    matroid = rank1_valuated_circuits(module, engine)
    modified = tropical_modification(module)
    mapping = coordinate_map(modified, matroid)
    target = rank1_tree_target(matroid)
    report = balancing_check(mapping, target)
    _logger.info("Harmonic morphism check: %s", report.balancing.kind.value)
    return HarmonicMorphism(modified, mapping, matroid, target, report)


def tree_edge_degrees(morphism: HarmonicMorphism) -> dict[str, int]:
    """
    Degree of the map over every bounded edge and ray of the tree

    The degree is read off at the node the edge or ray leaves, summing the
    local degrees of the source tangents pointing along it.
    """
    table = morphism.report.degree_table
    target = morphism.target
    leaving = [(edge.id, edge.tail, edge.direction) for edge in target.edges]
    leaving.extend((ray.id, ray.node, ray.direction) for ray in target.rays)
    degrees = {}
    for name, node, direction in leaving:
        rows = table[
            (table["image"] == format_vector(target.nodes[node]))
            & (table["direction"] == " ".join(str(value) for value in direction))
        ]
        degrees[name] = int(rows["degree"].sum())
    return degrees
