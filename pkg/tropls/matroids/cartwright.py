"""Rank-2 tropical linear series on Levi graphs of rank-3 matroids"""
from dataclasses import dataclass
from logging import getLogger
from typing import Optional

from tropls.graphs.divisor import Divisor
from tropls.graphs.metric_graph import MetricGraph, Point, TangentVector
from tropls.graphs.pl_function import PLFunction, tropical_combine
from tropls.matroids.matroid import Matroid, rank2_flats
from tropls.series.dependence import CombinationVerdict, verify_combination
from tropls.series.trop_module import TropicalSubmodule

_logger = getLogger(__name__)


def flat_name(flat: frozenset[str], elements: tuple[str, ...]) -> str:
    return "f:" + ",".join(element for element in elements if element in flat)


def levi_graph(matroid: Matroid) -> MetricGraph:
    """
    Bipartite incidence graph of elements and rank-2 flats, unit edge lengths

    Edges are oriented from the element to the flat.
    """
    flats = rank2_flats(matroid)
    names = [flat_name(flat, matroid.elements) for flat in flats]
    edges = [
        (f"{element}-{name}", element, name, 1)
        for flat, name in zip(flats, names)
        for element in matroid.elements if element in flat
    ]
    return MetricGraph.build(list(matroid.elements) + names, edges)


@dataclass(frozen=True, eq=False)
class CartwrightSeries:
    """
    The series generated by the element functions on the Levi graph

    element_functions[e] is 2 at e, 1 at the flats through e and 0 at every
    other vertex, linear on edges.
    """
    matroid: Matroid
    graph: MetricGraph
    divisor: Divisor
    module: TropicalSubmodule
    flats: tuple[frozenset[str], ...]
    element_functions: dict[str, PLFunction]

    def flat_function(self, flat: frozenset[str]) -> PLFunction:
        """
        min over e in the flat of phi_e: 1 at the flat vertex, 0 elsewhere
        """
        return tropical_combine([(self.element_functions[element], 0) for element in sorted(flat)])

    def axiom3_witness(self, tangent: TangentVector, rank: int) -> Optional[TropicalSubmodule]:
        """
        Rank-1 subseries with slopes at most s_1 along a tangent of the Levi graph

        Toward an element the flat functions generate it; away from an
        element e it is generated by phi_e and the flats avoiding e.
        """
        if rank != 1 or tangent.edge is None:
            return None
        base = tangent.base
        if not base.is_vertex:
            return None
        if base.vertex in self.matroid.elements:
            element = base.vertex
            generators = [self.element_functions[element]] + [
                self.flat_function(flat) for flat in self.flats if element not in flat
            ]
        else:
            generators = [self.flat_function(flat) for flat in self.flats]
        return TropicalSubmodule(self.divisor, tuple(generators))

    def circuit_dependences(self) -> list[tuple[frozenset[str], CombinationVerdict]]:
        """
        Verdict of min over e in C of phi_e for every circuit C
        """
        results = []
        for circuit in sorted(self.matroid.circuits, key=lambda c: (len(c), sorted(c))):
            members = sorted(circuit)
            verdict = verify_combination([self.element_functions[e] for e in members], [0] * len(members))
            results.append((circuit, verdict))
        return results


def cartwright_series(matroid: Matroid) -> CartwrightSeries:
    """
    D_M = sum of the element vertices and the series of the element functions
    """
    graph = levi_graph(matroid)
    flats = tuple(rank2_flats(matroid))
    names = {flat: flat_name(flat, matroid.elements) for flat in flats}
    functions = {}
    for element in matroid.elements:
        values = {vertex: 0 for vertex in graph.vertices}
        values[element] = 2
        for flat in flats:
            if element in flat:
                values[names[flat]] = 1
        functions[element] = PLFunction.from_vertex_values(graph, values)
    divisor = Divisor.from_points(graph, [Point(vertex=element) for element in matroid.elements])
    module = TropicalSubmodule(divisor, tuple(functions[element] for element in matroid.elements))
    _logger.info(
        "Levi graph with %s vertices and %s edges, divisor of degree %s",
        len(graph.vertices), len(graph.edges), divisor.degree()
    )
    return CartwrightSeries(matroid, graph, divisor, module, flats, functions)
