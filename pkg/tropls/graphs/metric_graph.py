"""Metric graphs, their points, tangent vectors and subdivisions"""
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from logging import getLogger
from typing import Iterable, Optional

import networkx as nx

from tropls.common.custom_exceptions import InputException
from tropls.common.rationals import RationalLike, format_rational, parse_rational

_logger = getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    """
    Edge of a metric graph, oriented from tail to head
    """
    id: str
    tail: str
    head: str
    length: Fraction

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Point:
    """
    Point of a metric graph: either a vertex or an interior edge point

    Interior points keep their offset from the tail of the edge. Points are
    canonical only when built through MetricGraph.point or vertex_point.
    """
    vertex: Optional[str] = None
    edge: Optional[str] = None
    offset: Optional[Fraction] = None

    def __post_init__(self):
        if (self.vertex is None) == (self.edge is None):
            raise InputException("a point is either a vertex or an edge point")
        if self.edge is not None and self.offset is None:
            raise InputException(f"edge point on {self.edge} needs an offset")

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    @property
    def sort_key(self) -> tuple:
        if self.is_vertex:
            return (0, self.vertex, Fraction(0))
        return (1, self.edge, self.offset)

    def __str__(self) -> str:
        if self.is_vertex:
            return self.vertex
        return f"{self.edge}@{format_rational(self.offset)}"


@dataclass(frozen=True)
class Ray:
    """
    Infinite edge attached at a vertex (only produced by tropical modification)
    """
    id: str
    base: str


@dataclass(frozen=True)
class TangentVector:
    """
    Outgoing unit direction at a point

    Along an edge the direction is given by toward_head; along a ray the ray
    id is set and the direction points away from the base.
    """
    base: Point
    edge: Optional[str] = None
    toward_head: bool = True
    ray: Optional[str] = None

    @property
    def sort_key(self) -> tuple:
        return (self.base.sort_key, self.edge or "", not self.toward_head, self.ray or "")

    def __str__(self) -> str:
        if self.ray is not None:
            return f"{self.base}->{self.ray}"
        arrow = "+" if self.toward_head else "-"
        return f"{self.base}->{self.edge}{arrow}"


@dataclass(frozen=True)
class MetricGraph:
    """
    Finite connected metric graph with rational edge lengths

    Loops and parallel edges are allowed. Rays only appear on graphs produced
    by tropical modification.
    """
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    rays: tuple[Ray, ...] = ()
    _edge_index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.vertices:
            raise InputException("a metric graph needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputException("duplicate vertex names")
        index = {}
        vertex_set = set(self.vertices)
        for edge in self.edges:
            if edge.id in index or edge.id in vertex_set:
                raise InputException(f"duplicate edge id {edge.id}")
            if edge.tail not in vertex_set or edge.head not in vertex_set:
                raise InputException(f"edge {edge.id} uses an unknown vertex")
            if not isinstance(edge.length, Fraction) or edge.length <= 0:
                raise InputException(f"edge {edge.id} needs a positive rational length")
            index[edge.id] = edge
        for ray in self.rays:
            if ray.base not in vertex_set:
                raise InputException(f"ray {ray.id} is based at an unknown vertex")
        object.__setattr__(self, "_edge_index", index)
        if not nx.is_connected(self.to_networkx()):
            raise InputException("the metric graph is not connected")

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str, str, RationalLike]],
        rays: Iterable[Ray] = ()
    ) -> "MetricGraph":
        """
        Builds a graph from (id, tail, head, length) tuples

        :param vertices: vertex names
        :param edges: edge tuples with rational-like lengths
        :param rays: optional rays
        """
        return cls(
            tuple(vertices),
            tuple(
                Edge(str(edge_id), str(tail), str(head), parse_rational(length))
                for edge_id, tail, head, length in edges
            ),
            tuple(rays)
        )

    def to_networkx(self) -> nx.MultiGraph:
        """
        Combinatorial multigraph of the vertices and finite edges
        """
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for edge in self.edges:
            graph.add_edge(edge.tail, edge.head, key=edge.id, length=edge.length)
        return graph

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_index[edge_id]
        except KeyError as error:
            raise InputException(f"unknown edge {edge_id}") from error

    def vertex_point(self, vertex: str) -> Point:
        if vertex not in self.vertices:
            raise InputException(f"unknown vertex {vertex}")
        return Point(vertex=vertex)

    def point(self, edge_id: str, offset: RationalLike) -> Point:
        """
        Canonical point at the given offset from the tail of an edge

        Offsets 0 and the edge length are the end vertices.
        """
        edge = self.edge(edge_id)
        offset = parse_rational(offset)
        if offset < 0 or offset > edge.length:
            raise InputException(
                f"offset {format_rational(offset)} is not on edge {edge_id}"
            )
        if offset == 0:
            return Point(vertex=edge.tail)
        if offset == edge.length:
            return Point(vertex=edge.head)
        return Point(edge=edge_id, offset=offset)

    def canonical(self, point: Point) -> Point:
        """
        Validates a point and returns its canonical form
        """
        if point.is_vertex:
            return self.vertex_point(point.vertex)
        return self.point(point.edge, point.offset)

    def edge_location(self, point: Point, edge_id: str) -> list[Fraction]:
        """
        Offsets at which a point lies on the closed edge (two for a loop vertex)
        """
        edge = self.edge(edge_id)
        if point.is_vertex:
            return [
                offset for offset, vertex in ((Fraction(0), edge.tail), (edge.length, edge.head))
                if vertex == point.vertex
            ]
        return [point.offset] if point.edge == edge_id else []

    def incident_ends(self, vertex: str) -> list[tuple[str, bool]]:
        """
        Outgoing edge directions at a vertex as (edge id, toward head) pairs
        """
        ends = []
        for edge in self.edges:
            if edge.tail == vertex:
                ends.append((edge.id, True))
            if edge.head == vertex:
                ends.append((edge.id, False))
        return ends

    def valence(self, vertex: str) -> int:
        """
        Number of tangent directions at a vertex, rays included
        """
        return len(self.incident_ends(vertex)) + sum(
            1 for ray in self.rays if ray.base == vertex
        )

    def tangent_vectors(self, point: Point) -> list[TangentVector]:
        """
        All outgoing unit directions at a point
        """
        point = self.canonical(point)
        if point.is_vertex:
            tangents = [
                TangentVector(point, edge_id, toward_head)
                for edge_id, toward_head in self.incident_ends(point.vertex)
            ]
            tangents.extend(
                TangentVector(point, ray=ray.id) for ray in self.rays
                if ray.base == point.vertex
            )
            return tangents
        return [TangentVector(point, point.edge, True), TangentVector(point, point.edge, False)]

    def genus(self) -> int:
        """
        First Betti number |E| - |V| + 1 of the underlying graph
        """
        if self.rays:
            raise InputException("genus is only defined for graphs without rays")
        return len(self.edges) - len(self.vertices) + 1

    def total_length(self) -> Fraction:
        return sum((edge.length for edge in self.edges), Fraction(0))

    def reversed_orientation(self) -> "MetricGraph":
        """
        Same metric graph with every edge oriented the other way
        """
        return MetricGraph(
            self.vertices,
            tuple(Edge(edge.id, edge.head, edge.tail, edge.length) for edge in self.edges),
            self.rays
        )

    def subdivide(self, points: Iterable[Point]) -> "Subdivision":
        """
        Inserts the given points as vertices

        Pieces of a split edge e are named e#0, e#1, ... from the tail and new
        vertices are named e@t. Edges without new points keep their id.

        :param points: points of this graph, vertices are ignored
        """
        cuts: dict[str, set[Fraction]] = {}
        for point in points:
            point = self.canonical(point)
            if not point.is_vertex:
                cuts.setdefault(point.edge, set()).add(point.offset)
        used = set(self.vertices) | set(self._edge_index)
        vertices = list(self.vertices)
        edges = []
        provenance: dict[str, tuple[str, Fraction, Fraction]] = {}
        new_vertex: dict[tuple[str, Fraction], str] = {}
        for edge in self.edges:
            offsets = sorted(cuts.get(edge.id, ()))
            if not offsets:
                edges.append(edge)
                provenance[edge.id] = (edge.id, Fraction(0), edge.length)
                continue
            names = []
            for offset in offsets:
                name = f"{edge.id}@{format_rational(offset)}"
                while name in used:
                    name += "'"
                used.add(name)
                names.append(name)
                vertices.append(name)
                new_vertex[(edge.id, offset)] = name
            ends = [edge.tail] + names + [edge.head]
            marks = [Fraction(0)] + offsets + [edge.length]
            for k in range(len(marks) - 1):
                piece = f"{edge.id}#{k}"
                while piece in used:
                    piece += "'"
                used.add(piece)
                edges.append(Edge(piece, ends[k], ends[k + 1], marks[k + 1] - marks[k]))
                provenance[piece] = (edge.id, marks[k], marks[k + 1])
        refined = MetricGraph(tuple(vertices), tuple(edges), self.rays)
        _logger.debug("Subdivided %s edges into %s pieces", len(self.edges), len(edges))
        return Subdivision(self, refined, provenance, new_vertex)


@dataclass(frozen=True, eq=False)
class Subdivision:
    """
    A refinement of a metric graph with the maps between the two point sets

    provenance maps each refined edge to (original edge, start, end).
    """
    original: MetricGraph
    refined: MetricGraph
    provenance: dict[str, tuple[str, Fraction, Fraction]]
    new_vertices: dict[tuple[str, Fraction], str]

    def pieces(self, edge_id: str) -> list[tuple[str, Fraction, Fraction]]:
        """
        Refined pieces of an original edge ordered from its tail
        """
        self.original.edge(edge_id)
        return sorted(
            ((piece, start, end) for piece, (source, start, end) in self.provenance.items()
             if source == edge_id),
            key=lambda item: item[1]
        )

    def map_point(self, point: Point) -> Point:
        """
        Image in the refined graph of any point of the original graph
        """
        point = self.original.canonical(point)
        if point.is_vertex:
            return Point(vertex=point.vertex)
        name = self.new_vertices.get((point.edge, point.offset))
        if name is not None:
            return Point(vertex=name)
        pieces = self.pieces(point.edge)
        starts = [start for _, start, _ in pieces]
        piece, start, _ = pieces[bisect_right(starts, point.offset) - 1]
        return self.refined.point(piece, point.offset - start)

    def unmap_point(self, point: Point) -> Point:
        """
        Point of the original graph for a point of the refined graph
        """
        point = self.refined.canonical(point)
        if point.is_vertex:
            if point.vertex in self.original.vertices:
                return Point(vertex=point.vertex)
            for (edge_id, offset), name in self.new_vertices.items():
                if name == point.vertex:
                    return self.original.point(edge_id, offset)
        source, start, _ = self.provenance[point.edge]
        return self.original.point(source, start + point.offset)

    def unmap_tangent(self, tangent: TangentVector) -> TangentVector:
        """
        Tangent of the original graph for a tangent of the refined graph
        """
        base = self.unmap_point(tangent.base)
        if tangent.ray is not None:
            return TangentVector(base, ray=tangent.ray)
        source, _, _ = self.provenance[tangent.edge]
        return TangentVector(base, source, tangent.toward_head)

    def map_tangent(self, tangent: TangentVector) -> TangentVector:
        """
        Tangent of the refined graph for a tangent of the original graph
        """
        base = self.map_point(tangent.base)
        if tangent.ray is not None:
            return TangentVector(base, ray=tangent.ray)
        original = self.original.canonical(tangent.base)
        offsets = self.original.edge_location(original, tangent.edge)
        if not offsets:
            raise InputException(f"tangent {tangent} does not start on its edge")
        edge = self.original.edge(tangent.edge)
        if len(offsets) == 2:
            offset = Fraction(0) if tangent.toward_head else edge.length
        else:
            offset = offsets[0]
        for piece, start, end in self.pieces(tangent.edge):
            if tangent.toward_head and start <= offset < end:
                return TangentVector(base, piece, True)
            if not tangent.toward_head and start < offset <= end:
                return TangentVector(base, piece, False)
        raise InputException(f"tangent {tangent} points out of its edge")
