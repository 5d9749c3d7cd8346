"""Builders of the named example fixtures and their expected facts"""
from dataclasses import dataclass, field
from fractions import Fraction
from inspect import signature
from logging import getLogger
from typing import Any, Callable, Optional, Union

from pandas import DataFrame

from tropls.common.constants import AnswerKind, CombinationKind, FixtureName, Messages, VerdictKind
from tropls.common.custom_exceptions import InputException
from tropls.common.rationals import RationalLike, format_rational, parse_rational
from tropls.graphs.divisor import Divisor, canonical_divisor
from tropls.graphs.metric_graph import MetricGraph, Point, TangentVector
from tropls.graphs.pl_function import PLFunction, tropical_combine
from tropls.graphs.reduction import bn_rank, extremal_function
from tropls.matroids.cartwright import cartwright_series
from tropls.matroids.matroid import Matroid, ValuatedCircuit, ValuatedMatroid, bergman_membership, rank2_flats
from tropls.matroids.matroid import realizability_note, valuated_axioms_check
from tropls.morphisms.tree_target import harmonic_morphism, local_degree
from tropls.series.dependence import DependenceEngine, verify_combination
from tropls.series.rank_one import interval_rank1_builder, rank1_obstruction
from tropls.series.tls import TLSVerifier, WitnessProvider, divisor_space_dim, restrict_tls, slope_subdivision
from tropls.series.trop_module import TropicalSubmodule, covered_locus, membership, minimize_generators, slope_vector
from tropls.series.valuation import rank1_valuated_circuits

_logger = getLogger(__name__)

FACT_TABLE_COLUMNS = ["fixture", "fact", "expected", "actual", "passed", "provenance"]

EXAMPLE = "example"
DERIVED = "derived"
TRIVIAL = "trivial"

FANO_LINES = (
    ("1", "2", "3"), ("1", "4", "5"), ("1", "6", "7"), ("2", "4", "6"),
    ("2", "5", "7"), ("3", "4", "7"), ("3", "5", "6"),
)


@dataclass(frozen=True)
class ExpectedFact:
    """
    One expected value of a fixture and how to compute the actual one
    """
    name: str
    expected: Any
    compute: Callable[["Fixture"], Any]
    provenance: str


@dataclass(frozen=True, eq=False)
class Fixture:
    """
    A built example: graph, divisor, optional module and its expected facts

    rank is the rank the module is checked at; functions holds the named
    functions of the example.
    """
    name: FixtureName
    graph: MetricGraph
    divisor: Divisor
    module: Optional[TropicalSubmodule]
    rank: Optional[int]
    functions: dict[str, PLFunction]
    facts: tuple[ExpectedFact, ...]
    params: dict[str, Any] = field(default_factory=dict)
    witnesses: Optional[WitnessProvider] = None
    extras: dict[str, Any] = field(default_factory=dict)

    def pick(self, *names: str) -> list[PLFunction]:
        return [self.functions[name] for name in names]


def _decide(*names: str) -> Callable[[Fixture], str]:
    def compute(fixture: Fixture) -> str:
        return DependenceEngine().decide(fixture.pick(*names)).kind.value
    return compute


def _verify(rank: int, witnesses: bool = False) -> Callable[[Fixture], bool]:
    def compute(fixture: Fixture) -> bool:
        provider = fixture.witnesses if witnesses else None
        return TLSVerifier().verify(fixture.module, rank, provider).passed
    return compute


def _slope_count(rank: int) -> Callable[[Fixture], str]:
    def compute(fixture: Fixture) -> str:
        return TLSVerifier().slope_count_check(fixture.module, rank)[0].kind.value
    return compute


def _tangent_count(vertex: str) -> Callable[[Fixture], int]:
    return lambda fixture: len(fixture.graph.tangent_vectors(Point(vertex=vertex)))


def _is_series(module: TropicalSubmodule, rank: int) -> bool:
    return TLSVerifier().verify(module, rank).passed


def _genus(fixture: Fixture) -> int:
    return fixture.graph.genus()


def _divisor_rank(fixture: Fixture) -> int:
    return bn_rank(fixture.divisor)


def lollipop(m: int = 2, stem: RationalLike = 1, loop: RationalLike = 1) -> Fixture:
    """
    Stem v-w with a loop at w and D = m w

    phi_k has slope k from w toward v and is constant on the loop; theta_k is
    constant on the stem and leaves w along the loop with slope k, turning to
    slope -1 after a loop / (k + 1).

    :param m: coefficient of D at w
    :param stem: length of the stem
    :param loop: length of the loop
    """
    m = int(m)
    if m < 1:
        raise InputException("the lollipop needs m >= 1")
    stem, loop = parse_rational(stem), parse_rational(loop)
    graph = MetricGraph.build(["v", "w"], [("stem", "v", "w", stem), ("loop", "w", "w", loop)])
    w = Point(vertex="w")
    functions = {}
    for k in range(m + 1):
        functions[f"phi{k}"] = PLFunction(graph, {"stem": [(0, k * stem), (stem, 0)], "loop": [(0, 0), (loop, 0)]})
    for k in range(1, m):
        bend = loop / (k + 1)
        functions[f"theta{k}"] = PLFunction(
            graph, {"stem": [(0, 0), (stem, 0)], "loop": [(0, 0), (bend, k * bend), (loop, 0)]}
        )
    divisor = Divisor(graph, {w: m})
    module = TropicalSubmodule(divisor, tuple(functions.values()))
    leftward = TangentVector(w, "stem", False)
    upward = TangentVector(w, "loop", True)

    def principal_axiom1(fixture: Fixture) -> str:
        principal = TropicalSubmodule(fixture.divisor, (fixture.functions["phi0"],))
        return TLSVerifier().check_axiom1(principal, 1).kind.value

    def slope_reason(fixture: Fixture) -> str:
        return TLSVerifier().slope_count_check(fixture.module, fixture.rank)[0].reason

    facts = [
        ExpectedFact("leftward slope vector at w", tuple(range(m + 1)),
                     lambda fixture: slope_vector(fixture.module, leftward), EXAMPLE),
        ExpectedFact("upward slope vector at w", tuple(range(m)),
                     lambda fixture: slope_vector(fixture.module, upward), EXAMPLE),
        ExpectedFact("rank of D", m - 1, _divisor_rank, DERIVED),
        ExpectedFact("slope count check", VerdictKind.FAIL.value, _slope_count(m - 1), EXAMPLE),
        ExpectedFact("slope count reason", Messages.NOT_TLS.value, slope_reason, EXAMPLE),
    ]
    if m >= 2:
        facts += [
            ExpectedFact("phi0 phi1 phi2", AnswerKind.INDEPENDENT.value, _decide("phi0", "phi1", "phi2"), EXAMPLE),
            ExpectedFact("phi0 phi1 theta1", AnswerKind.DEPENDENT.value, _decide("phi0", "phi1", "theta1"), EXAMPLE),
            ExpectedFact("phi0 phi2 theta1", AnswerKind.DEPENDENT.value, _decide("phi0", "phi2", "theta1"), EXAMPLE),
            ExpectedFact("axiom 1 of the constant module", VerdictKind.FAIL.value, principal_axiom1, TRIVIAL),
        ]
    return Fixture(
        FixtureName.LOLLIPOP, graph, divisor, module, m - 1, functions, tuple(facts),
        {"m": m, "stem": stem, "loop": loop}
    )


def barbell_function(graph: MetricGraph, kind: str, parameter: RationalLike) -> PLFunction:
    """
    Member of one of the three families of the barbell series

    left: div + K = x + y on the left loop, x and y at distance parameter
    from v; right: the mirror image; bridge: div + K = 2x with x at distance
    parameter from v on the bridge. Every function is 0 at v.
    """
    parameter = parse_rational(parameter)
    loop, bridge = graph.edge("left").length, graph.edge("bridge").length
    if kind == "left":
        if not 0 <= parameter <= loop / 2:
            raise InputException("left parameter lies outside [0, loop / 2]")
        return PLFunction(graph, {
            "left": [(0, 0), (parameter, parameter), (loop - parameter, parameter), (loop, 0)],
            "bridge": [(0, 0), (bridge, -bridge)],
            "right": [(0, -bridge), (loop, -bridge)],
        })
    if kind == "right":
        if not 0 <= parameter <= loop / 2:
            raise InputException("right parameter lies outside [0, loop / 2]")
        top = bridge + parameter
        return PLFunction(graph, {
            "left": [(0, 0), (loop, 0)],
            "bridge": [(0, 0), (bridge, bridge)],
            "right": [(0, bridge), (parameter, top), (loop - parameter, top), (loop, bridge)],
        })
    if kind == "bridge":
        if not 0 <= parameter <= bridge:
            raise InputException("bridge parameter lies outside the bridge")
        end = 2 * parameter - bridge
        return PLFunction(graph, {
            "left": [(0, 0), (loop, 0)],
            "bridge": [(0, 0), (parameter, parameter), (bridge, end)],
            "right": [(0, end), (loop, end)],
        })
    raise InputException(f"unknown barbell family {kind}")


def barbell_samples(graph: MetricGraph, count: int = 20) -> list[PLFunction]:
    """
    Family members at evenly spaced parameters, cycling through the three kinds
    """
    loop, bridge = graph.edge("left").length, graph.edge("bridge").length
    samples = []
    for index in range(count):
        kind = ("left", "right", "bridge")[index % 3]
        share = Fraction(index // 3, max((count - 1) // 3, 1))
        samples.append(barbell_function(graph, kind, share * (bridge if kind == "bridge" else loop / 2)))
    return samples


def barbell(loop: RationalLike = 1, bridge: RationalLike = 1) -> Fixture:
    """
    Two loops at v and w joined by a bridge, with the rank-1 series in R(K)

    :param loop: length of both loops
    :param bridge: length of the bridge
    """
    loop, bridge = parse_rational(loop), parse_rational(bridge)
    graph = MetricGraph.build(
        ["v", "w"], [("left", "v", "v", loop), ("bridge", "v", "w", bridge), ("right", "w", "w", loop)]
    )
    functions = {
        "left0": barbell_function(graph, "left", 0),
        "left_half": barbell_function(graph, "left", loop / 2),
        "right0": barbell_function(graph, "right", 0),
        "right_half": barbell_function(graph, "right", loop / 2),
    }
    divisor = canonical_divisor(graph)
    module = TropicalSubmodule(divisor, tuple(functions.values()))
    across = TangentVector(graph.point("bridge", bridge / 2), "bridge", True)

    def restricted(fixture: Fixture) -> TropicalSubmodule:
        return restrict_tls(fixture.module, ["left"])

    def families_covered(fixture: Fixture) -> bool:
        return all(membership(sample, fixture.module) is not None for sample in barbell_samples(fixture.graph))

    facts = (
        ExpectedFact("genus", 2, _genus, EXAMPLE),
        ExpectedFact("canonical divisor", "v + w", lambda fixture: str(fixture.divisor), EXAMPLE),
        ExpectedFact("tangents at v", 3, _tangent_count("v"), TRIVIAL),
        ExpectedFact("rank of K", 1, _divisor_rank, EXAMPLE),
        ExpectedFact("bridge slope vector", (-1, 1), lambda fixture: slope_vector(fixture.module, across), EXAMPLE),
        ExpectedFact("local degree on the bridge", 2, lambda fixture: local_degree(fixture.module, across), DERIVED),
        ExpectedFact("series of rank 1", True, _verify(1), EXAMPLE),
        ExpectedFact("family members in the series", True, families_covered, DERIVED),
        ExpectedFact("left loop boundary coefficient", 2,
                     lambda fixture: restricted(fixture).divisor[Point(vertex="v")], DERIVED),
        ExpectedFact("left loop restriction of rank 1", True,
                     lambda fixture: _is_series(restricted(fixture), 1), DERIVED),
        ExpectedFact("dimension of the divisor space", 1,
                     lambda fixture: divisor_space_dim(fixture.module, 1), EXAMPLE),
    )
    return Fixture(FixtureName.BARBELL, graph, divisor, module, 1, functions, facts,
                   {"loop": loop, "bridge": bridge})


def interval(w0: RationalLike = Fraction(3, 4), w1: RationalLike = Fraction(1, 4),
             length: RationalLike = 1) -> Fixture:
    """
    The interval [x, y] with D = 2x and the rank-1 series fixed by w_0 and w_1

    w_0 beyond w_1 is the hard case with a third generator bending at the
    midpoint z; otherwise two generators suffice.

    :param w0: offset of w_0 from x
    :param w1: offset of w_1 from x
    :param length: length of the interval
    """
    w0, w1, length = parse_rational(w0), parse_rational(w1), parse_rational(length)
    graph = MetricGraph.build(["x", "y"], [("e", "x", "y", length)])
    divisor = Divisor(graph, {Point(vertex="x"): 2})
    module = interval_rank1_builder(graph, divisor, graph.point("e", w0), graph.point("e", w1))
    functions = {f"phi{index}": generator for index, generator in enumerate(module.generators)}
    hard = w0 > w1
    cuts = ((w0 + w1) / 2,) if hard else tuple(sorted({w0, w1} - {Fraction(0), length}))

    def subdivision_cuts(fixture: Fixture) -> tuple[Fraction, ...]:
        subdivision = slope_subdivision(fixture.module)
        return tuple(sorted(offset for (_, offset) in subdivision.new_vertices))

    def morphism_passes(fixture: Fixture) -> bool:
        return harmonic_morphism(fixture.module).report.passed

    facts = [
        ExpectedFact("minimal generators", 3 if hard else 2,
                     lambda fixture: len(minimize_generators(fixture.module)), EXAMPLE),
        ExpectedFact("slope subdivision cuts", cuts, subdivision_cuts, EXAMPLE),
        ExpectedFact("series of rank 1", True, _verify(1), EXAMPLE),
        ExpectedFact("left half restriction of rank 1", True,
                     lambda fixture: _is_series(restrict_tls(fixture.module, [("e", 0, length / 2)]), 1),
                     DERIVED),
        ExpectedFact("balanced finite map to a tree", True, morphism_passes, EXAMPLE),
    ]
    if hard:
        facts.append(ExpectedFact(
            "valuated circuits at rank 2", VerdictKind.PASS.value,
            lambda fixture: valuated_axioms_check(rank1_valuated_circuits(fixture.module), 2).kind.value, DERIVED
        ))
    elif w0 < w1:
        middle = TangentVector(graph.point("e", (w0 + w1) / 2), "e", True)
        facts.append(ExpectedFact(
            "local degree between w0 and w1", 2, lambda fixture: local_degree(fixture.module, middle), EXAMPLE
        ))
    return Fixture(FixtureName.INTERVAL, graph, divisor, module, 1, functions, tuple(facts),
                   {"w0": w0, "w1": w1, "length": length})


def fg_function(graph: MetricGraph, left: RationalLike, right: RationalLike) -> PLFunction:
    """
    The function of R(2v) with slope -1 on [v - left, v] and 1 on [v, v + right], 0 at v
    """
    left, right = parse_rational(left), parse_rational(right)
    if not (0 <= left <= 1 and 0 <= right <= 1):
        raise InputException("both reaches lie in [0, 1]")
    return PLFunction(graph, {
        "av": [(0, left), (1 - left, left), (1, 0)],
        "vb": [(0, 0), (right, right), (1, right)],
    })


def fg() -> Fixture:
    """
    The interval of length 2 with D = 2v at its midpoint

    The module of all phi_xy with x + y <= 1 is not finitely generated; the
    fixture keeps the truncation by phi_10, phi_01 and phi_half_half.
    """
    graph = MetricGraph.build(["a", "v", "b"], [("av", "a", "v", 1), ("vb", "v", "b", 1)])
    divisor = Divisor(graph, {Point(vertex="v"): 2})
    half = Fraction(1, 2)
    functions = {
        "phi10": fg_function(graph, 1, 0),
        "phi01": fg_function(graph, 0, 1),
        "phi_half_half": fg_function(graph, half, half),
    }
    module = TropicalSubmodule(divisor, tuple(functions.values()))

    def certificate(fixture: Fixture) -> str:
        coefficients = [Fraction(1, 4), Fraction(1, 4), Fraction(0)]
        return verify_combination(fixture.pick("phi10", "phi01", "phi_half_half"), coefficients).kind.value

    def spanned(fixture: Fixture) -> bool:
        pair = TropicalSubmodule(fixture.divisor, tuple(fixture.pick("phi10", "phi01")))
        return membership(fixture.functions["phi_half_half"], pair) is not None

    facts = (
        ExpectedFact("phi10 at the left end", 1,
                     lambda fixture: fixture.functions["phi10"].value_at(Point(vertex="a")), DERIVED),
        ExpectedFact("divisor of phi_half_half", "av@1/2 + vb@1/2",
                     lambda fixture: str(fixture.module.divisor_of(fixture.functions["phi_half_half"])), DERIVED),
        ExpectedFact("triple", AnswerKind.INDEPENDENT.value, _decide("phi10", "phi01", "phi_half_half"), EXAMPLE),
        ExpectedFact("certificate (1/4, 1/4, 0)", CombinationKind.CERTIFICATE.value, certificate, DERIVED),
        ExpectedFact("every point covered", True,
                     lambda fixture: covered_locus(fixture.module).is_everything(), EXAMPLE),
        ExpectedFact("slope count check", VerdictKind.PASS.value, _slope_count(1), EXAMPLE),
        ExpectedFact("axiom 2", VerdictKind.FAIL.value,
                     lambda fixture: TLSVerifier().check_axiom2(fixture.module, 1).kind.value, EXAMPLE),
        ExpectedFact("phi_half_half spanned by phi10 and phi01", False, spanned, EXAMPLE),
    )
    return Fixture(FixtureName.FG, graph, divisor, module, 1, functions, facts)


def luo(length: RationalLike = 1) -> Fixture:
    """
    Triangle p, q, s with three parallel edges from p to x, q to y and s to z

    D = p + q + s has rank 1 but R(D) holds no rank-1 series: the forced
    functions phi_x, phi_y and phi_z have slopes 0, 1 and -1 along the
    edge from s to q.

    :param length: common edge length
    """
    length = parse_rational(length)
    edges = [("ps", "p", "s", length), ("sq", "s", "q", length), ("qp", "q", "p", length)]
    for hub, leaf in (("p", "x"), ("q", "y"), ("s", "z")):
        edges.extend((f"{hub}{leaf}{index}", hub, leaf, length) for index in range(1, 4))
    graph = MetricGraph.build(["p", "q", "s", "x", "y", "z"], edges)
    divisor = Divisor.from_points(graph, [Point(vertex=name) for name in ("p", "q", "s")])
    functions = {}
    for leaf in ("x", "y", "z"):
        function = extremal_function(divisor, Divisor.from_points(graph, [Point(vertex=leaf)]))
        if function is None:
            raise InputException(f"no function reaches {leaf}")
        functions[f"phi_{leaf}"] = function
    module = TropicalSubmodule(divisor, tuple(functions.values()))
    rightward = TangentVector(graph.point("sq", length / 2), "sq", True)

    def obstruction_slopes(fixture: Fixture) -> Optional[tuple[int, ...]]:
        found = rank1_obstruction(fixture.divisor)
        if found is None:
            return None
        return tuple(sorted(function.slope(rightward) for function in found[1]))

    facts = (
        ExpectedFact("genus", 7, _genus, DERIVED),
        ExpectedFact("canonical degree", 12, lambda fixture: canonical_divisor(fixture.graph).degree(), DERIVED),
        ExpectedFact("tangents at p", 5, _tangent_count("p"), DERIVED),
        ExpectedFact("rank of D", 1, _divisor_rank, EXAMPLE),
        ExpectedFact("slopes toward q", (0, 1, -1),
                     lambda fixture: tuple(phi.slope(rightward) for phi in fixture.module.generators), EXAMPLE),
        ExpectedFact("forced triple", AnswerKind.INDEPENDENT.value, _decide("phi_x", "phi_y", "phi_z"), EXAMPLE),
        ExpectedFact("obstruction slopes", (-1, 0, 1), obstruction_slopes, EXAMPLE),
    )
    return Fixture(FixtureName.LUO, graph, divisor, module, None, functions, facts, {"length": length})


def _loop_edges(first: str, second: str, far: str, arc: Fraction) -> list[tuple]:
    return [(f"{first}-{second}", first, second, arc), (f"{second}-{far}", second, far, arc),
            (f"{far}-{first}", far, first, arc)]


def loop_of_loops(l1: RationalLike = 5, l2: RationalLike = 4, l3: RationalLike = 3, x: RationalLike = 3,
                  arc: RationalLike = 1) -> Fixture:
    """
    Three loops joined in a cycle by edges of lengths l1, l2 and l3

    Edge li runs from vi to wi. The left loop holds v1, w3 and u2, the top
    loop w1, v2 and u3, the right loop w2, v3 and u1; every loop is cut into
    three arcs of equal length. D = v1 + w3 + w with w on the edge l2 at
    distance x from v2, and phi_i is the function reaching u_i. The three
    are dependent exactly when x = (l1 + l2 - l3) / 2.

    :param l1: length of the edge from the left to the top loop
    :param l2: length of the edge from the top to the right loop
    :param l3: length of the edge from the right to the left loop
    :param x: distance from v2 to w
    :param arc: length of each loop arc
    """
    l1, l2, l3, x, arc = (parse_rational(value) for value in (l1, l2, l3, x, arc))
    if not 0 < x < l2:
        raise InputException("w must lie inside the edge l2")
    edges = (
        _loop_edges("v1", "w3", "u2", arc) + _loop_edges("w1", "v2", "u3", arc) + _loop_edges("w2", "v3", "u1", arc)
        + [("l1", "v1", "w1", l1), ("l2", "v2", "w2", l2), ("l3", "v3", "w3", l3)]
    )
    graph = MetricGraph.build(["u1", "u2", "u3", "v1", "w1", "v2", "w2", "v3", "w3"], edges)
    w = graph.point("l2", x)
    divisor = Divisor.from_points(graph, [Point(vertex="v1"), Point(vertex="w3"), w])
    functions = {}
    for index in (1, 2, 3):
        function = extremal_function(divisor, Divisor.from_points(graph, [Point(vertex=f"u{index}")]))
        if function is None:
            raise InputException(f"no function reaches u{index}")
        functions[f"phi{index}"] = function
    module = TropicalSubmodule(divisor, tuple(functions.values()))
    expected = AnswerKind.DEPENDENT if x == (l1 + l2 - l3) / 2 else AnswerKind.INDEPENDENT
    facts = (
        ExpectedFact("genus", 4, _genus, EXAMPLE),
        ExpectedFact("vertices and edges", (9, 12),
                     lambda fixture: (len(fixture.graph.vertices), len(fixture.graph.edges)), DERIVED),
        ExpectedFact("rank of D", 1, _divisor_rank, EXAMPLE),
        ExpectedFact("forced triple", expected.value, _decide("phi1", "phi2", "phi3"), DERIVED),
    )
    return Fixture(FixtureName.LOOP_OF_LOOPS, graph, divisor, module, None, functions, facts,
                   {"l1": l1, "l2": l2, "l3": l3, "x": x, "arc": arc})


def _matroid_fixture(name: FixtureName, matroid: Matroid, levi: tuple[int, int, int], flats: int) -> Fixture:
    series = cartwright_series(matroid)
    functions = {f"phi_{element}": series.element_functions[element] for element in matroid.elements}
    trivial = ValuatedMatroid(
        matroid.elements, tuple(ValuatedCircuit.of({element: 0 for element in circuit}) for circuit in matroid.circuits)
    )

    def vertex_images(fixture: Fixture) -> bool:
        return all(
            bergman_membership(
                [series.element_functions[element].value_at(Point(vertex=vertex)) for element in matroid.elements],
                trivial
            )
            for vertex in fixture.graph.vertices
        )

    def circuits_dependent(fixture: Fixture) -> int:
        return sum(1 for _, verdict in series.circuit_dependences() if verdict.kind == CombinationKind.DEPENDENCE)

    facts = (
        ExpectedFact("Levi graph vertices, edges and genus", levi,
                     lambda fixture: (len(fixture.graph.vertices), len(fixture.graph.edges), fixture.graph.genus()),
                     DERIVED),
        ExpectedFact("rank-2 flats", flats, lambda fixture: len(rank2_flats(matroid)), DERIVED),
        ExpectedFact("degree of D", len(matroid.elements), lambda fixture: fixture.divisor.degree(), EXAMPLE),
        ExpectedFact("circuits with a dependence at zero", len(matroid.circuits), circuits_dependent, EXAMPLE),
        ExpectedFact("vertex images in the tropical linear space", True, vertex_images, EXAMPLE),
        ExpectedFact("slope count check", VerdictKind.PASS.value, _slope_count(2), EXAMPLE),
        ExpectedFact("axiom 2", VerdictKind.PASS.value,
                     lambda fixture: TLSVerifier().check_axiom2(fixture.module, 2).kind.value, EXAMPLE),
        ExpectedFact("axiom 3 with witnesses", VerdictKind.PASS.value,
                     lambda fixture: TLSVerifier().check_axiom3(fixture.module, 2, fixture.witnesses).kind.value,
                     EXAMPLE),
        ExpectedFact("axiom 1", VerdictKind.PASS_SAMPLED.value,
                     lambda fixture: TLSVerifier().check_axiom1(fixture.module, 2).kind.value, EXAMPLE),
    )
    return Fixture(
        name, series.graph, series.divisor, series.module, 2, functions, facts,
        witnesses=series.axiom3_witness,
        extras={"series": series, "matroid": matroid, "realizability": realizability_note(name.value)}
    )


def fano() -> Fixture:
    """
    The Cartwright series of the Fano plane
    """
    matroid = Matroid.from_lines([str(index) for index in range(1, 8)], FANO_LINES)
    return _matroid_fixture(FixtureName.FANO, matroid, (14, 21, 8), 7)


def u34() -> Fixture:
    """
    The Cartwright series of the uniform matroid of rank 3 on 4 elements
    """
    return _matroid_fixture(FixtureName.U34, Matroid.uniform(3, ["1", "2", "3", "4"]), (10, 12, 3), 6)


_BUILDERS: dict[FixtureName, Callable[..., Fixture]] = {
    FixtureName.LOLLIPOP: lollipop,
    FixtureName.BARBELL: barbell,
    FixtureName.INTERVAL: interval,
    FixtureName.FG: fg,
    FixtureName.LUO: luo,
    FixtureName.LOOP_OF_LOOPS: loop_of_loops,
    FixtureName.FANO: fano,
    FixtureName.U34: u34,
}


def list_fixtures() -> list[str]:
    return [name.value for name in FixtureName]


def fixture_parameters(name: Union[str, FixtureName]) -> list[str]:
    return list(signature(_BUILDERS[_fixture_name(name)]).parameters)


def _fixture_name(name: Union[str, FixtureName]) -> FixtureName:
    try:
        return FixtureName(name)
    except ValueError as error:
        raise InputException(f"unknown fixture {name}; choose from {', '.join(list_fixtures())}") from error


def build_fixture(name: Union[str, FixtureName], **params) -> Fixture:
    """
    Builds a named fixture

    :param name: one of list_fixtures()
    :param params: builder parameters; missing ones take their defaults
    """
    fixture_name = _fixture_name(name)
    builder = _BUILDERS[fixture_name]
    unknown = set(params) - set(signature(builder).parameters)
    if unknown:
        raise InputException(f"fixture {fixture_name.value} takes no parameters {sorted(unknown)}")
    fixture = builder(**params)
    _logger.info("Built fixture %s with %s expected facts", fixture_name.value, len(fixture.facts))
    return fixture


def render_value(value: Any) -> str:
    """
    Text of a fact value: rationals as p/q, sequences in parentheses
    """
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (Fraction, int)):
        return format_rational(value)
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(render_value(item) for item in value) + ")"
    if value is None:
        return "none"
    return str(value)


def check_fixture(fixture: Fixture) -> DataFrame:
    """
    Computes every expected fact of a fixture

    returns:
      one row per fact with the columns of FACT_TABLE_COLUMNS
    """
    rows = []
    for fact in fixture.facts:
        actual = fact.compute(fixture)
        passed = actual == fact.expected
        if not passed:
            _logger.info("Fact %s of %s: expected %s, got %s", fact.name, fixture.name.value, fact.expected, actual)
        rows.append({
            "fixture": fixture.name.value,
            "fact": fact.name,
            "expected": render_value(fact.expected),
            "actual": render_value(actual),
            "passed": passed,
            "provenance": fact.provenance,
        })
    return DataFrame(rows, columns=FACT_TABLE_COLUMNS)
