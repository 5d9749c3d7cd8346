"""Checks of the tropical linear series axioms and derived constructions"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from logging import getLogger
from typing import Callable, Optional, Sequence

import networkx as nx
from numpy.random import Generator
from pandas import DataFrame

from tropls.common.constants import AnswerKind, Messages, VerdictKind
from tropls.common.custom_exceptions import InputException, UnsupportedException
from tropls.common.rationals import format_rational, parse_rational
from tropls.common.settings import TLSConfig, make_rng, resolve_seed
from tropls.common.verdicts import Verdict
from tropls.graphs.divisor import Divisor
from tropls.graphs.metric_graph import MetricGraph, Point, Subdivision, TangentVector
from tropls.graphs.pl_function import PLFunction, lower_envelope, refinement_points, tropical_combine
from tropls.series.dependence import DependenceEngine
from tropls.series.trop_module import (
    TropicalSubmodule,
    covered_locus,
    element_containing,
    membership,
    minimize_generators,
    slope_vector,
)
from tropls.series.valuation import VALUATION_CAVEAT, rank1_valuated_circuits

_PASS = VerdictKind.PASS
_SAMPLED = VerdictKind.PASS_SAMPLED
_FAIL = VerdictKind.FAIL
_UNKNOWN = VerdictKind.UNKNOWN

WitnessProvider = Callable[[TangentVector, int], Optional[TropicalSubmodule]]

SLOPE_TABLE_COLUMNS = ["edge", "start", "end", "direction", "slopes", "count"]


@dataclass
class TLSReport:
    """
    Verdicts of every check run for one module and rank
    """
    rank: int
    verdicts: dict[str, Verdict]
    slope_table: DataFrame = field(repr=False)

    @property
    def passed(self) -> bool:
        return all(verdict.passed for verdict in self.verdicts.values())


def slope_subdivision(module: TropicalSubmodule) -> Subdivision:
    """
    Coarsest subdivision through the divisor with constant slope vectors on edges

    A generator breakpoint is kept only where the set of generator slopes
    changes.
    """
    graph = module.graph
    cuts = [point for point in module.divisor.support() if not point.is_vertex]
    for edge in graph.edges:
        offsets = sorted({
            offset for generator in module.generators for offset in generator.breakpoint_offsets(edge.id)
            if 0 < offset < edge.length
        })
        for offset in offsets:
            before = {-generator.segment_slope(edge.id, offset, False) for generator in module.generators}
            after = {generator.segment_slope(edge.id, offset, True) for generator in module.generators}
            if before != after:
                cuts.append(graph.point(edge.id, offset))
    return graph.subdivide(cuts)


def subdivision_tangents(subdivision: Subdivision) -> list[tuple[str, TangentVector]]:
    """
    Tangents of the original graph at both ends of every refined edge

    returns:
      (refined edge id, tangent) pairs
    """
    tangents = []
    for edge in subdivision.refined.edges:
        for vertex, toward_head in ((edge.tail, True), (edge.head, False)):
            tangent = subdivision.unmap_tangent(TangentVector(Point(vertex=vertex), edge.id, toward_head))
            tangents.append((edge.id, tangent))
    return tangents


def sample_points(graph: MetricGraph, rng: Generator, count: int, denominator: int,
                  special: Sequence[Point] = ()) -> list[Point]:
    """
    Random points: refinement points half of the time, grid points otherwise
    """
    points = []
    for _ in range(count):
        if special and rng.random() < 0.5:
            points.append(special[int(rng.integers(len(special)))])
            continue
        if not graph.edges:
            points.append(Point(vertex=graph.vertices[int(rng.integers(len(graph.vertices)))]))
            continue
        edge = graph.edges[int(rng.integers(len(graph.edges)))]
        step = int(rng.integers(denominator + 1))
        points.append(graph.point(edge.id, edge.length * step / denominator))
    return points


class TLSVerifier:
    """
    Runs the slope count and the axiom checks on a tropical submodule
    """

    def __init__(
        self,
        config: Optional[TLSConfig] = None,
        rng: Optional[Generator] = None,
        engine: Optional[DependenceEngine] = None
    ):
        """
        Constructor for TLSVerifier

        :param config: NamedTuple class with sampling configuration
        :param rng: random generator; seeded from TROPLS_SEED when None
        :param engine: dependence engine used by axiom (2)
        """
        self._logger = getLogger(__name__)
        self._config = config or TLSConfig()
        self._rng = rng if rng is not None else make_rng(resolve_seed(self._config.seed))
        self._engine = engine or DependenceEngine()
        self._rank_one_cache: dict[tuple, bool] = {}

    @staticmethod
    def _check_rank(rank: int):
        if rank < 0:
            raise InputException("the rank of a series is non-negative")

    def slope_count_check(self, module: TropicalSubmodule, rank: int) -> tuple[Verdict, DataFrame]:
        """
        Every slope vector on the slope subdivision must have r + 1 entries
        """
        self._check_rank(rank)
        subdivision = slope_subdivision(module)
        rows = []
        failure = None
        for piece, tangent in subdivision_tangents(subdivision):
            slopes = slope_vector(module, tangent)
            source, start, end = subdivision.provenance[piece]
            rows.append({
                "edge": source,
                "start": format_rational(start),
                "end": format_rational(end),
                "direction": str(tangent),
                "slopes": " ".join(str(slope) for slope in slopes),
                "count": len(slopes),
            })
            if len(slopes) != rank + 1 and failure is None:
                failure = (tangent, slopes)
        table = DataFrame(rows, columns=SLOPE_TABLE_COLUMNS)
        if failure is not None:
            self._logger.info("Slope vector %s along %s has the wrong length", failure[1], failure[0])
            return Verdict(_FAIL, Messages.NOT_TLS.value, failure), table
        return Verdict(_PASS, f"every slope vector has {rank + 1} entries"), table

    def check_axiom1(self, module: TropicalSubmodule, rank: int) -> Verdict:
        """
        Every effective divisor of degree r lies under some D + div(psi)
        """
        self._check_rank(rank)
        if rank == 0:
            return Verdict(_PASS, "the zero divisor is always contained")
        if rank == 1:
            locus = covered_locus(module)
            if locus.is_everything():
                return Verdict(_PASS, "every point is covered")
            return Verdict(_FAIL, "uncovered point", locus.uncovered_points()[0])
        special = refinement_points(module.generators)
        for _ in range(self._config.samples):
            points = sample_points(module.graph, self._rng, rank, self._config.point_denominator, special)
            target = Divisor.from_points(module.graph, points)
            if element_containing(module, target) is None:
                return Verdict(_FAIL, "no element contains the divisor", target)
        return Verdict(_SAMPLED, f"{self._config.samples} sampled divisors of degree {rank}")

    def check_axiom2(self, module: TropicalSubmodule, rank: int) -> Verdict:
        """
        Every r + 2 minimal generators are tropically dependent
        """
        self._check_rank(rank)
        generators = minimize_generators(module).generators
        if len(generators) < rank + 2:
            return Verdict(_PASS, f"only {len(generators)} minimal generators")
        undecided = None
        for subset in combinations(range(len(generators)), rank + 2):
            answer = self._engine.decide([generators[index] for index in subset])
            if answer.kind == AnswerKind.DEPENDENT:
                continue
            if answer.kind == AnswerKind.INDEPENDENT and answer.verdict is not None:
                return Verdict(_FAIL, "independent minimal generators", (subset, answer.verdict))
            undecided = undecided or subset
        if undecided is not None:
            return Verdict(_UNKNOWN, "dependence could not be decided", undecided)
        return Verdict(_PASS, f"all subsets of {rank + 2} minimal generators are dependent")

    def check_axiom3(
        self, module: TropicalSubmodule, rank: int, witnesses: Optional[WitnessProvider] = None
    ) -> Verdict:
        """
        Every tangent and i < r admit a rank-i subseries with slopes at most s_i
        """
        self._check_rank(rank)
        if rank == 0:
            return Verdict(_PASS, "nothing to check for rank 0")
        if rank == 1:
            return Verdict(_PASS, Messages.AXIOM3_TRIVIAL.value)
        if witnesses is None and rank >= 3:
            raise UnsupportedException("automatic axiom (3) search is limited to rank 2")
        generators = minimize_generators(module)
        tangents = sorted(
            {tangent for _, tangent in subdivision_tangents(slope_subdivision(module))},
            key=lambda tangent: tangent.sort_key
        )
        cache: dict[frozenset, Optional[TropicalSubmodule]] = {}
        for tangent in tangents:
            slopes = slope_vector(module, tangent)
            if len(slopes) <= rank:
                return Verdict(_FAIL, "slope vector too short", (tangent, slopes))
            for level in range(1, rank):
                threshold = slopes[level]
                if witnesses is not None:
                    witness = witnesses(tangent, level)
                    if witness is None:
                        return Verdict(_UNKNOWN, "no witness given", (tangent, level))
                    if not self._valid_witness(module, witness, tangent, threshold, level):
                        return Verdict(_FAIL, "witness subseries is not valid", (tangent, level))
                    continue
                witness = self._search_rank_one(generators, tangent, threshold, cache)
                if witness is None:
                    return Verdict(_UNKNOWN, "no rank-1 subseries found", (tangent, level))
        mode = "given witnesses" if witnesses is not None else "automatic search"
        return Verdict(_PASS, f"subseries found for {len(tangents)} tangents by {mode}")

    def _valid_witness(self, module: TropicalSubmodule, witness: TropicalSubmodule,
                       tangent: TangentVector, threshold: int, level: int) -> bool:
        if witness.divisor != module.divisor:
            return False
        for generator in witness.generators:
            if generator.slope(tangent) > threshold:
                return False
            if membership(generator, module) is None:
                return False
        return self.is_series(witness, level)

    def is_series(self, module: TropicalSubmodule, rank: int) -> bool:
        """
        Whether the module passes every check at the given rank
        """
        key = (tuple(module.generators), module.divisor, rank)
        if key not in self._rank_one_cache:
            verdicts = [
                self.slope_count_check(module, rank)[0],
                self.check_axiom1(module, rank),
                self.check_axiom2(module, rank),
                self.check_axiom3(module, rank),
            ]
            self._rank_one_cache[key] = all(verdict.passed for verdict in verdicts)
        return self._rank_one_cache[key]

    def _search_rank_one(self, module: TropicalSubmodule, tangent: TangentVector, threshold: int,
                         cache: dict) -> Optional[TropicalSubmodule]:
        """
        Rank-1 subseries with slopes at most threshold along the tangent

        Candidates are spanned by the pairwise minima of generators that
        satisfy the slope bound, either alone or together with one bounded
        generator after dropping the minima that form independent triples
        with it.
        """
        generators = module.generators
        filtered = [index for index, generator in enumerate(generators) if generator.slope(tangent) <= threshold]
        minima = []
        for first, second in combinations(range(len(generators)), 2):
            combined = tropical_combine([(generators[first], 0), (generators[second], 0)])
            if combined.slope(tangent) <= threshold and combined not in minima:
                minima.append(combined)
        key = frozenset(filtered), frozenset(minima)
        if key in cache:
            return cache[key]
        candidates = []
        if minima:
            candidates.append(minima)
        for index in sorted(filtered, key=lambda i: generators[i].slope(tangent)):
            base = generators[index]
            kept = [function for function in minima if function != base]
            for first, second in combinations(list(kept), 2):
                if first not in kept or second not in kept:
                    continue
                if self._engine.decide([base, first, second]).kind == AnswerKind.INDEPENDENT:
                    kept.remove(second)
            candidates.append([base] + kept)
        found = None
        for generators_of_candidate in candidates:
            candidate = module.with_generators(generators_of_candidate)
            candidate = minimize_generators(candidate)
            if self.is_series(candidate, 1):
                found = candidate
                break
        cache[key] = found
        self._logger.debug("Rank-1 subseries search along %s: %s", tangent, found is not None)
        return found

    def verify(self, module: TropicalSubmodule, rank: int, witnesses: Optional[WitnessProvider] = None,
               strong: bool = False) -> TLSReport:
        """
        Runs every check and collects the verdicts

        :param module: the tropical submodule
        :param rank: the claimed rank r
        :param witnesses: optional provider of axiom (3) subseries
        :param strong: also build the valuated matroid of rank-1 series
        """
        self._logger.info("Verifying a module with %s generators at rank %s", len(module), rank)
        slope_verdict, table = self.slope_count_check(module, rank)
        verdicts = {
            "slope_count": slope_verdict,
            "axiom1": self.check_axiom1(module, rank),
            "axiom2": self.check_axiom2(module, rank),
            "axiom3": self.check_axiom3(module, rank, witnesses),
            "axiom4": Verdict(_PASS, Messages.AXIOM4.value),
        }
        if strong:
            verdicts["axiom5"] = self._strong_verdict(module, rank, verdicts)
        return TLSReport(rank, verdicts, table)

    def _strong_verdict(self, module: TropicalSubmodule, rank: int, verdicts: dict[str, Verdict]) -> Verdict:
        if rank != 1:
            return Verdict(_UNKNOWN, "valuated matroids are only built for rank 1")
        if not all(verdict.passed for verdict in verdicts.values()):
            return Verdict(_UNKNOWN, "weak axioms fail")
        matroid = rank1_valuated_circuits(minimize_generators(module), self._engine)
        return Verdict(_PASS, f"rank 1: weak implies strong; {VALUATION_CAVEAT}", matroid)


def verify_tls(module: TropicalSubmodule, rank: int, samples: Optional[int] = None,
               seed: Optional[int] = None, witnesses: Optional[WitnessProvider] = None,
               strong: bool = False) -> TLSReport:
    config = TLSConfig() if samples is None else TLSConfig(samples=samples)
    return TLSVerifier(config, make_rng(seed)).verify(module, rank, witnesses, strong)


def check_axiom1(module: TropicalSubmodule, rank: int, samples: Optional[int] = None,
                 seed: Optional[int] = None) -> Verdict:
    config = TLSConfig() if samples is None else TLSConfig(samples=samples)
    return TLSVerifier(config, make_rng(seed)).check_axiom1(module, rank)


def check_axiom2(module: TropicalSubmodule, rank: int) -> Verdict:
    return TLSVerifier().check_axiom2(module, rank)


def check_axiom3(module: TropicalSubmodule, rank: int, witnesses: Optional[WitnessProvider] = None) -> Verdict:
    return TLSVerifier().check_axiom3(module, rank, witnesses)


def slope_count_check(module: TropicalSubmodule, rank: int) -> tuple[Verdict, DataFrame]:
    return TLSVerifier().slope_count_check(module, rank)


def parse_segments(graph: MetricGraph, segments: Sequence) -> list[tuple[str, Fraction, Fraction]]:
    """
    Normalizes subgraph pieces given as edge ids or (edge, start, end) triples
    """
    parsed = []
    for segment in segments:
        if isinstance(segment, str):
            edge = graph.edge(segment)
            parsed.append((edge.id, Fraction(0), edge.length))
            continue
        edge_id, start, end = segment
        edge = graph.edge(edge_id)
        start, end = parse_rational(start), parse_rational(end)
        if not 0 <= start < end <= edge.length:
            raise InputException(f"segment [{start}, {end}] is not a piece of {edge_id}")
        parsed.append((edge_id, start, end))
    if not parsed:
        raise InputException("a subgraph needs at least one segment")
    return parsed


def restrict_tls(module: TropicalSubmodule, segments: Sequence) -> TropicalSubmodule:
    """
    Restriction of the series to a connected subgraph

    At a boundary point w, D'(w) = D(w) - sum over outward tangents of the
    least generator slope. A combination has outward slope equal to one of
    its tied terms, so the least generator slope is the least module slope.

    :param module: the series on the whole graph
    :param segments: edge ids or (edge, start, end) triples
    """
    graph = module.graph
    parsed = parse_segments(graph, segments)
    cuts = [graph.point(edge_id, offset) for edge_id, start, end in parsed for offset in (start, end)]
    subdivision = graph.subdivide(cuts)
    kept = []
    for edge_id, start, end in parsed:
        for piece, piece_start, piece_end in subdivision.pieces(edge_id):
            if start <= piece_start and piece_end <= end and piece not in kept:
                kept.append(piece)
    refined = subdivision.refined
    edges = tuple(refined.edge(piece) for piece in kept)
    used = {vertex for edge in edges for vertex in (edge.tail, edge.head)}
    subgraph = MetricGraph(tuple(vertex for vertex in refined.vertices if vertex in used), edges)
    transported = [generator.transport(subdivision) for generator in module.generators]
    counts: dict[Point, int] = {}
    for point, count in module.divisor.coefficients.items():
        image = subdivision.map_point(point)
        if (image.is_vertex and image.vertex in used) or (not image.is_vertex and image.edge in kept):
            counts[image] = counts.get(image, 0) + count
    for vertex in subgraph.vertices:
        point = Point(vertex=vertex)
        for tangent in refined.tangent_vectors(point):
            if tangent.edge in kept:
                continue
            counts[point] = counts.get(point, 0) - min(generator.slope(tangent) for generator in transported)
    restricted = tuple(generator.restrict(subgraph) for generator in transported)
    return TropicalSubmodule(Divisor(subgraph, counts), restricted)


def lower_dimension_witness(module: TropicalSubmodule, rank: int):
    """
    A tangent with r + 1 distinct slopes, generators realising them and
    coefficients making each attain the minimum alone on the first cell

    returns:
      (tangent, generator indices, coefficients) or None
    """
    graph = module.graph
    for point in refinement_points(module.generators):
        for tangent in graph.tangent_vectors(point):
            slopes = [generator.slope(tangent) for generator in module.generators]
            distinct = sorted(set(slopes))
            if len(distinct) < rank + 1:
                continue
            chosen = [slopes.index(value) for value in distinct[:rank + 1]]
            functions = [module.generators[index] for index in chosen]
            coefficients = DependenceEngine.distinct_slope_certificate(functions)
            if coefficients is not None:
                return tangent, chosen, coefficients
    return None


def _crossing_rank(functions: list[PLFunction], coefficients: Sequence[Fraction]) -> int:
    cells = lower_envelope(functions, coefficients)
    moves = nx.Graph()
    by_edge: dict[str, list] = {}
    for cell in cells:
        if cell.edge is not None:
            by_edge.setdefault(cell.edge, []).append(cell)
    for edge_cells in by_edge.values():
        open_cells = sorted((cell for cell in edge_cells if cell.is_open), key=lambda cell: cell.start)
        for left, right in zip(open_cells, open_cells[1:]):
            if left.achievers == right.achievers:
                continue
            for first in left.achievers:
                for second in right.achievers:
                    if first != second:
                        moves.add_edge(first, second)
    if moves.number_of_nodes() == 0:
        return 0
    return moves.number_of_nodes() - nx.number_connected_components(moves)


def divisor_space_dim(module: TropicalSubmodule, rank: int, rng: Optional[Generator] = None,
                      samples: int = 8) -> int:
    """
    Largest local dimension of a -> D + div(min(phi_i + a_i)) over subsets of r + 1 generators

    Near a generic coefficient vector a chip moves exactly where two
    achievers cross with different slopes, and it moves with a_i - a_j, so
    the local dimension is the rank of these difference vectors.
    """
    rng = rng if rng is not None else make_rng()
    generators = minimize_generators(module).generators
    size = min(rank + 1, len(generators))
    spread = max(
        (generator.maximum() - generator.minimum() for generator in generators), default=Fraction(0)
    ) + 1
    best = 0
    for subset in combinations(range(len(generators)), size):
        functions = [generators[index] for index in subset]
        trials = [[Fraction(0)] * size]
        certificate = DependenceEngine.distinct_slope_certificate(functions)
        if certificate is not None:
            trials.append(certificate)
        for _ in range(samples):
            trials.append([
                spread * Fraction(int(rng.integers(-997, 998)), 997) for _ in range(size)
            ])
        for coefficients in trials:
            best = max(best, _crossing_rank(functions, coefficients))
    witness = lower_dimension_witness(module, rank)
    if witness is not None:
        _, chosen, coefficients = witness
        best = max(best, _crossing_rank([module.generators[index] for index in chosen], coefficients))
    return best
