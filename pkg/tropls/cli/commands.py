"""Command line interface of tropls"""
import json
import sys
from argparse import ArgumentParser, Namespace
from fractions import Fraction
from logging import getLogger
from logging.config import dictConfig
from typing import NamedTuple, Optional, Sequence, TextIO

from tropls.common.constants import AnswerKind, CombinationKind, ExitCode
from tropls.common.custom_exceptions import (
    InconsistencyException,
    InputException,
    PreconditionException,
    UnsupportedException,
)
from tropls.common.rationals import format_rational, parse_rational
from tropls.common.serialization import (
    divisor_from_json,
    function_from_json,
    graph_from_json,
    graph_to_json,
    loads_json,
    matroid_from_json,
    module_from_json,
    module_to_json,
    point_from_json,
    point_to_json,
    read_json,
    tangent_from_json,
    to_jsonable,
    valuated_matroid_from_json,
)
from tropls.common.settings import DependenceConfig, TLSConfig, load_config, make_rng, resolve_seed
from tropls.common.verdicts import Verdict, combine_exit_codes
from tropls.fixtures.builders import build_fixture, check_fixture, fixture_parameters, list_fixtures
from tropls.graphs.metric_graph import MetricGraph
from tropls.graphs.reduction import bn_rank, bn_rank_brute_force, dhar_reduce, riemann_roch_residual
from tropls.matroids.cartwright import cartwright_series, levi_graph
from tropls.matroids.matroid import (
    bergman_membership,
    matroid_axioms_check,
    rank2_flats,
    realizability_note,
    valuated_axioms_check,
)
from tropls.morphisms.dot_export import to_dot
from tropls.morphisms.modification import coordinate_map, tropical_modification
from tropls.morphisms.tree_target import format_vector, harmonic_morphism, tree_edge_degrees
from tropls.series.dependence import DependenceEngine, verify_combination
from tropls.series.rank_one import rank1_canonical_generators, rank1_obstruction
from tropls.series.tls import TLSVerifier, WitnessProvider, restrict_tls
from tropls.series.trop_module import (
    TropicalSubmodule,
    covered_locus,
    generator_subset,
    membership,
    minimize_generators,
    slope_vector,
    tangent_slopes,
)

_logger = getLogger(__name__)

_ANSWER_CODES = {
    AnswerKind.DEPENDENT: ExitCode.PASS,
    AnswerKind.INDEPENDENT: ExitCode.FAIL,
    AnswerKind.UNDETERMINED: ExitCode.UNDETERMINED,
}
_COMBINATION_CODES = {
    CombinationKind.DEPENDENCE: ExitCode.PASS,
    CombinationKind.CERTIFICATE: ExitCode.FAIL,
    CombinationKind.NEITHER: ExitCode.UNDETERMINED,
}
_STATUS = {
    ExitCode.PASS: "pass",
    ExitCode.FAIL: "fail",
    ExitCode.INPUT_ERROR: "input-error",
    ExitCode.UNDETERMINED: "undetermined",
}


class CommandResult(NamedTuple):
    """
    Outcome of one subcommand: exit code, JSON result and plain text
    """
    exit_code: ExitCode
    result: dict
    text: str


def _fixture_options() -> list[str]:
    names = []
    for name in list_fixtures():
        for parameter in fixture_parameters(name):
            if parameter not in names:
                names.append(parameter)
    return names


def build_parser() -> ArgumentParser:
    """
    Argument parser with every subcommand
    """
    common = ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print a JSON report envelope.")
    common.add_argument("--config", help="A configuration file in YAML format.")
    common.add_argument("--seed", type=int, help="Seed of the sampled checks, overrides TROPLS_SEED.")
    graph_input = ArgumentParser(add_help=False, parents=[common])
    graph_input.add_argument("-g", "--graph", required=True, help="Metric graph JSON file.")
    module_input = ArgumentParser(add_help=False, parents=[graph_input])
    module_input.add_argument("-m", "--module", required=True, help="Tropical module JSON file.")
    matroid_input = ArgumentParser(add_help=False, parents=[common])
    matroid_input.add_argument("-M", "--matroid", required=True, help="Matroid JSON file.")

    parser = ArgumentParser(prog="tropls", description="Tropical linear series on metric graphs.")
    commands = parser.add_subparsers(dest="command", required=True)

    rank = commands.add_parser("rank", parents=[graph_input], help="Baker-Norine rank of a divisor.")
    rank.add_argument("-d", "--divisor", required=True)
    rank.add_argument("--brute-force", action="store_true", help="Also run the brute force oracle.")
    rank.add_argument("--riemann-roch", action="store_true", help="Also report the Riemann-Roch residual.")
    reduce = commands.add_parser("reduce", parents=[graph_input], help="Reduced divisor at a base point.")
    reduce.add_argument("-d", "--divisor", required=True)
    reduce.add_argument("--base", help='Base point as JSON, e.g. \'{"vertex":"v"}\'.')

    dep = commands.add_parser("dep", help="Tropical dependence.").add_subparsers(dest="action", required=True)
    decide = dep.add_parser("decide", parents=[graph_input])
    decide.add_argument("-f", "--function", action="append", required=True)
    decide.add_argument("--exhaustive", action="store_true", help="Use the exhaustive search for three functions.")
    verify = dep.add_parser("verify", parents=[graph_input])
    verify.add_argument("-f", "--function", action="append", required=True)
    verify.add_argument("--coeffs", required=True, help='Comma separated rationals, e.g. "0,3,1/2".')

    module = commands.add_parser("module", help="Tropical modules.").add_subparsers(dest="action", required=True)
    member = module.add_parser("member", parents=[module_input])
    member.add_argument("-f", "--function", required=True)
    module.add_parser("minimize", parents=[module_input])
    slopes = module.add_parser("slopes", parents=[module_input])
    slopes.add_argument("--tangent", help="Tangent vector as JSON.")
    slopes.add_argument("--point", help="Point as JSON; reports every tangent there.")
    module.add_parser("cover", parents=[module_input])

    tls = commands.add_parser("tls", help="Tropical linear series.").add_subparsers(dest="action", required=True)
    tls_verify = tls.add_parser("verify", parents=[module_input])
    tls_verify.add_argument("--rank", type=int, required=True)
    tls_verify.add_argument("--samples", type=int)
    tls_verify.add_argument("--witness", help="Axiom (3) witness JSON file.")
    tls_verify.add_argument("--strong", action="store_true", help="Also build the valuated matroid for rank 1.")
    tls.add_parser("generate-rank1", parents=[module_input])
    obstruct = tls.add_parser("obstruct-rank1", parents=[graph_input])
    obstruct.add_argument("-d", "--divisor", required=True)
    restrict = tls.add_parser("restrict", parents=[module_input])
    restrict.add_argument("--subgraph", required=True, help="Subgraph segments JSON file.")
    restrict.add_argument("--rank", type=int, help="Verify the restriction at this rank.")

    matroid = commands.add_parser("matroid", help="Matroids.").add_subparsers(dest="action", required=True)
    check = matroid.add_parser("check", parents=[matroid_input])
    check.add_argument("--rank", type=int)
    matroid.add_parser("flats", parents=[matroid_input])
    levi = matroid.add_parser("levi", parents=[matroid_input])
    levi.add_argument("--dot", action="store_true")
    series = matroid.add_parser("series", parents=[matroid_input])
    series.add_argument("--check", action="store_true", help="Verify the series at rank 2.")
    series.add_argument("--samples", type=int)
    bergman = matroid.add_parser("bergman", parents=[matroid_input])
    bergman.add_argument("--point", required=True, help='Comma separated coordinates, "inf" for infinity.')

    morph = commands.add_parser("morph", help="Modifications and maps.").add_subparsers(dest="action", required=True)
    modify = morph.add_parser("modify", parents=[module_input])
    modify.add_argument("--dot", action="store_true")
    morph.add_parser("map", parents=[module_input])
    balance = morph.add_parser("balance", parents=[module_input])
    balance.add_argument("--dot", action="store_true")

    example = commands.add_parser("example", parents=[common], help="Built-in example fixtures.")
    example.add_argument("name", choices=list_fixtures())
    example.add_argument("--check", action="store_true", help="Compute the expected facts.")
    example.add_argument("--dot", action="store_true")
    for option in _fixture_options():
        example.add_argument(f"--{option}", dest=f"param_{option}", help=f"Fixture parameter {option}.")
    return parser


def _parse_coefficients(text: str) -> list[Fraction]:
    return [parse_rational(item.strip()) for item in text.split(",") if item.strip()]


def _render_verdicts(verdicts: dict[str, Verdict]) -> str:
    return "\n".join(f"{name}: {verdict.kind.value} ({verdict.reason})" for name, verdict in verdicts.items())


def _entries(data, key: str) -> list:
    if not isinstance(data, dict) or not isinstance(data.get(key, []), list):
        raise InputException(f"expected an object with a list {key!r}")
    return data.get(key, [])


class CommandRunner:
    """
    Executes parsed subcommands with the engine settings of one configuration
    """

    def __init__(self, config: dict, seed: Optional[int] = None):
        """
        Constructor for CommandRunner

        :param config: the parsed YAML configuration
        :param seed: explicit seed for the sampled checks
        """
        self._logger = getLogger(__name__)
        self._dependence_config = DependenceConfig(**config.get("engine", {}))
        self._tls_config = TLSConfig(**config.get("tls", {}))
        self._fixture_defaults = config.get("fixtures", {}) or {}
        self._seed = resolve_seed(self._tls_config.seed) if seed is None else seed
        self._engine = DependenceEngine(self._dependence_config)

    def _verifier(self, samples: Optional[int] = None) -> TLSVerifier:
        config = self._tls_config if samples is None else self._tls_config._replace(samples=samples)
        return TLSVerifier(config, make_rng(self._seed), self._engine)

    @staticmethod
    def _graph(args: Namespace) -> MetricGraph:
        return graph_from_json(read_json(args.graph))

    @staticmethod
    def _module(graph: MetricGraph, args: Namespace) -> TropicalSubmodule:
        return module_from_json(graph, read_json(args.module))

    def execute(self, args: Namespace) -> CommandResult:
        name = args.command if getattr(args, "action", None) is None else f"{args.command}_{args.action}"
        handler = getattr(self, name.replace("-", "_"))
        return handler(args)

    def rank(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        divisor = divisor_from_json(graph, read_json(args.divisor))
        rank = bn_rank(divisor)
        result = {"rank": rank, "degree": divisor.degree(), "genus": graph.genus()}
        code = ExitCode.PASS
        lines = [f"r({divisor}) = {rank}"]
        if args.brute_force:
            oracle = bn_rank_brute_force(divisor, self._dependence_config.brute_force_parts)
            result["brute_force_rank"] = oracle
            lines.append(f"brute force rank: {oracle}")
            if oracle != rank:
                code = ExitCode.FAIL
        if args.riemann_roch:
            residual = riemann_roch_residual(divisor)
            result["riemann_roch_residual"] = residual
            lines.append(f"Riemann-Roch residual: {residual}")
            if residual != 0:
                code = ExitCode.FAIL
        return CommandResult(code, result, "\n".join(lines))

    def reduce(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        divisor = divisor_from_json(graph, read_json(args.divisor))
        if args.base:
            base = point_from_json(graph, loads_json(args.base, "--base"))
        else:
            base = graph.vertex_point(graph.vertices[0])
        reduction = dhar_reduce(divisor, base)
        result = {
            "base": point_to_json(reduction.base),
            "reduced": to_jsonable(reduction.reduced),
            "witness": to_jsonable(reduction.witness),
            "effective": reduction.reduced.is_effective(),
        }
        text = f"{reduction.base}-reduced divisor: {reduction.reduced}"
        return CommandResult(ExitCode.PASS, result, text)

    def dep_decide(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        functions = [function_from_json(graph, read_json(path)) for path in args.function]
        if args.exhaustive:
            answer = self._engine.exhaustive_3(functions)
        else:
            answer = self._engine.decide(functions)
        text = answer.kind.value
        if answer.coefficients is not None:
            text += " with coefficients " + ", ".join(format_rational(value) for value in answer.coefficients)
        return CommandResult(_ANSWER_CODES[answer.kind], to_jsonable(answer), text)

    def dep_verify(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        functions = [function_from_json(graph, read_json(path)) for path in args.function]
        coefficients = _parse_coefficients(args.coeffs)
        if len(coefficients) != len(functions):
            raise InputException(f"{len(coefficients)} coefficients for {len(functions)} functions")
        verdict = verify_combination(functions, coefficients)
        return CommandResult(_COMBINATION_CODES[verdict.kind], to_jsonable(verdict), verdict.kind.value)

    def module_member(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        module = self._module(graph, args)
        function = function_from_json(graph, read_json(args.function))
        coefficients = membership(function, module)
        if coefficients is None:
            return CommandResult(ExitCode.FAIL, {"member": False}, "not a member")
        subset = generator_subset(function, module)
        result = {"member": True, "coefficients": to_jsonable(coefficients), "generators": subset}
        text = "member with coefficients " + ", ".join(format_rational(value) for value in coefficients)
        return CommandResult(ExitCode.PASS, result, text)

    def module_minimize(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        module = self._module(graph, args)
        minimal = minimize_generators(module)
        result = {"generators": len(minimal), "removed": len(module) - len(minimal), "module": module_to_json(minimal)}
        return CommandResult(ExitCode.PASS, result, f"{len(minimal)} of {len(module)} generators kept")

    def module_slopes(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        module = self._module(graph, args)
        if args.tangent:
            tangent = tangent_from_json(graph, loads_json(args.tangent, "--tangent"))
            slopes = slope_vector(module, tangent)
            result = {"tangents": [{"tangent": to_jsonable(tangent), "slopes": list(slopes)}]}
            return CommandResult(ExitCode.PASS, result, f"{tangent}: {slopes}")
        if not args.point:
            raise InputException("module slopes needs --tangent or --point")
        point = point_from_json(graph, loads_json(args.point, "--point"))
        slopes = tangent_slopes(module, point)
        rows = [
            {"tangent": to_jsonable(tangent), "slopes": sorted(set(values)), "generator_slopes": values}
            for tangent, values in slopes
        ]
        text = "\n".join(f"{tangent}: {tuple(sorted(set(values)))}" for tangent, values in slopes)
        return CommandResult(ExitCode.PASS, {"tangents": rows}, text)

    def module_cover(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        locus = covered_locus(self._module(graph, args))
        uncovered = locus.uncovered_points()
        result = {
            "everything": locus.is_everything(),
            "uncovered": to_jsonable(uncovered),
            "covered_segments": to_jsonable(locus.covered_segments()),
        }
        if locus.is_everything():
            return CommandResult(ExitCode.PASS, result, "every point is covered")
        return CommandResult(ExitCode.FAIL, result, "uncovered: " + ", ".join(str(point) for point in uncovered))

    def _witnesses(self, graph: MetricGraph, path: str) -> WitnessProvider:
        entries = _entries(read_json(path), "witnesses")
        table = {}
        for entry in entries:
            if not isinstance(entry, dict) or "module" not in entry:
                raise InputException("every witness needs a module")
            tangent = tangent_from_json(graph, entry["tangent"]) if entry.get("tangent") else None
            table[(tangent, int(entry.get("level", 1)))] = module_from_json(graph, entry["module"])
        self._logger.info("Loaded %s axiom (3) witnesses", len(table))

        def provider(tangent, level):
            return table.get((tangent, level), table.get((None, level)))
        return provider

    def tls_verify(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        module = self._module(graph, args)
        witnesses = self._witnesses(graph, args.witness) if args.witness else None
        report = self._verifier(args.samples).verify(module, args.rank, witnesses, strong=args.strong)
        result = {
            "rank": report.rank,
            "passed": report.passed,
            "verdicts": to_jsonable(report.verdicts),
            "slope_table": to_jsonable(report.slope_table),
        }
        text = report.slope_table.to_string(index=False) + "\n" + _render_verdicts(report.verdicts)
        return CommandResult(combine_exit_codes(report.verdicts.values()), result, text)

    def tls_generate_rank1(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        canonical = rank1_canonical_generators(self._module(graph, args), self._verifier())
        result = {"generators": len(canonical), "module": module_to_json(canonical)}
        return CommandResult(ExitCode.PASS, result, f"{len(canonical)} canonical generators")

    def tls_obstruct_rank1(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        divisor = divisor_from_json(graph, read_json(args.divisor))
        found = rank1_obstruction(divisor, self._engine)
        if found is None:
            return CommandResult(ExitCode.FAIL, {"obstructed": False}, "no independent forced triple")
        points, functions, answer = found
        result = {
            "obstructed": True,
            "points": to_jsonable(points),
            "functions": to_jsonable(functions),
            "answer": to_jsonable(answer),
        }
        text = "independent forced triple at " + ", ".join(str(point) for point in points)
        return CommandResult(ExitCode.PASS, result, text)

    def tls_restrict(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        module = self._module(graph, args)
        segments = []
        for entry in _entries(read_json(args.subgraph), "segments"):
            if isinstance(entry, str):
                segments.append(entry)
            elif not isinstance(entry, dict) or not {"edge", "end"} <= set(entry):
                raise InputException("a segment is an edge id or an object with edge and end")
            else:
                segments.append((entry["edge"], entry.get("start", 0), entry["end"]))
        restricted = restrict_tls(module, segments)
        result = {"graph": graph_to_json(restricted.graph), "module": module_to_json(restricted)}
        text = f"restricted divisor: {restricted.divisor}"
        if args.rank is None:
            return CommandResult(ExitCode.PASS, result, text)
        report = self._verifier().verify(restricted, args.rank)
        result["verdicts"] = to_jsonable(report.verdicts)
        text += "\n" + _render_verdicts(report.verdicts)
        return CommandResult(combine_exit_codes(report.verdicts.values()), result, text)

    def matroid_check(self, args: Namespace) -> CommandResult:
        data = read_json(args.matroid)
        if "valuated_circuits" in data:
            verdict = valuated_axioms_check(valuated_matroid_from_json(data), args.rank)
        else:
            verdict = matroid_axioms_check(matroid_from_json(data), args.rank)
        return CommandResult(verdict.exit_code, to_jsonable(verdict), f"{verdict.kind.value}: {verdict.reason}")

    def matroid_flats(self, args: Namespace) -> CommandResult:
        matroid = matroid_from_json(read_json(args.matroid))
        flats = [[element for element in matroid.elements if element in flat] for flat in rank2_flats(matroid)]
        text = "\n".join(" ".join(flat) for flat in flats)
        return CommandResult(ExitCode.PASS, {"flats": flats}, text)

    def matroid_levi(self, args: Namespace) -> CommandResult:
        graph = levi_graph(matroid_from_json(read_json(args.matroid)))
        result = {"graph": graph_to_json(graph), "genus": graph.genus()}
        text = f"Levi graph: {len(graph.vertices)} vertices, {len(graph.edges)} edges, genus {graph.genus()}"
        if args.dot:
            result["dot"] = to_dot(graph)
            text = result["dot"]
        return CommandResult(ExitCode.PASS, result, text)

    def matroid_series(self, args: Namespace) -> CommandResult:
        matroid = matroid_from_json(read_json(args.matroid))
        series = cartwright_series(matroid)
        dependences = series.circuit_dependences()
        result = {
            "graph": graph_to_json(series.graph),
            "module": module_to_json(series.module),
            "circuits_dependent": sum(1 for _, verdict in dependences if verdict.kind == CombinationKind.DEPENDENCE),
            "circuits": len(dependences),
        }
        lines = [
            f"D_M = {series.divisor} of degree {series.divisor.degree()}",
            f"{result['circuits_dependent']} of {result['circuits']} circuits give a dependence at zero",
        ]
        code = ExitCode.PASS
        if args.check:
            report = self._verifier(args.samples).verify(series.module, 2, series.axiom3_witness)
            result["verdicts"] = to_jsonable(report.verdicts)
            lines.append(_render_verdicts(report.verdicts))
            code = combine_exit_codes(report.verdicts.values())
        return CommandResult(code, result, "\n".join(lines))

    def matroid_bergman(self, args: Namespace) -> CommandResult:
        matroid = valuated_matroid_from_json(read_json(args.matroid))
        point = [
            None if item.strip() == "inf" else parse_rational(item.strip()) for item in args.point.split(",")
        ]
        inside = bergman_membership(point, matroid)
        code = ExitCode.PASS if inside else ExitCode.FAIL
        return CommandResult(code, {"member": inside}, "in the tropical linear space" if inside else "outside")

    def morph_modify(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        modified = tropical_modification(self._module(graph, args))
        rays = [
            {"id": ray.id, "point": point_to_json(modified.ray_points[ray.id]),
             "slopes": list(modified.ray_slopes(ray.id))}
            for ray in modified.graph.rays
        ]
        result = {"graph": graph_to_json(modified.graph), "rays": rays}
        text = "\n".join(f"{ray['id']} at {modified.ray_points[ray['id']]}: {tuple(ray['slopes'])}" for ray in rays)
        if args.dot:
            result["dot"] = to_dot(modified)
            text = result["dot"]
        return CommandResult(ExitCode.PASS, result, text)

    def morph_map(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        mapping = coordinate_map(tropical_modification(self._module(graph, args)))
        images = [
            {"point": point_to_json(point), "image": to_jsonable(mapping.image(point))}
            for point in mapping.refinement_points()
        ]
        text = "\n".join(
            f"{point} -> {format_vector(mapping.image(point))}" for point in mapping.refinement_points()
        )
        return CommandResult(ExitCode.PASS, {"images": images}, text)

    def morph_balance(self, args: Namespace) -> CommandResult:
        graph = self._graph(args)
        morphism = harmonic_morphism(self._module(graph, args), self._engine)
        report = morphism.report
        result = {
            "balancing": to_jsonable(report.balancing),
            "finiteness": to_jsonable(report.finiteness),
            "degree_table": to_jsonable(report.degree_table),
            "matroid": to_jsonable(morphism.matroid),
            "target": {
                "nodes": to_jsonable(morphism.target.nodes),
                "edges": to_jsonable(morphism.target.edges),
                "rays": to_jsonable(morphism.target.rays),
            },
        }
        text = report.degree_table.to_string(index=False) + "\n" + _render_verdicts(
            {"balancing": report.balancing, "finiteness": report.finiteness}
        )
        if args.dot:
            result["dot"] = to_dot(morphism.target, tree_edge_degrees(morphism))
            text = result["dot"]
        code = combine_exit_codes([report.balancing, report.finiteness])
        return CommandResult(code, result, text)

    def _fixture_params(self, args: Namespace) -> dict:
        allowed = fixture_parameters(args.name)
        params = dict(self._fixture_defaults.get(args.name, {}) or {})
        for option in _fixture_options():
            value = getattr(args, f"param_{option}")
            if value is None:
                continue
            if option not in allowed:
                raise InputException(f"fixture {args.name} takes no parameter {option}")
            params[option] = value
        parsed = {}
        for key, value in params.items():
            value = parse_rational(value)
            parsed[key] = int(value) if value.denominator == 1 else value
        return parsed

    def example(self, args: Namespace) -> CommandResult:
        params = self._fixture_params(args)
        fixture = build_fixture(args.name, **params)
        result = {
            "fixture": args.name,
            "params": {key: format_rational(value) for key, value in params.items()},
            "graph": graph_to_json(fixture.graph),
            "divisor": to_jsonable(fixture.divisor),
            "rank": fixture.rank,
        }
        if fixture.module is not None:
            result["module"] = module_to_json(fixture.module)
        note = realizability_note(args.name)
        if note is not None:
            result["realizability"] = note
        lines = [
            f"{args.name}: genus {fixture.graph.genus()}, D = {fixture.divisor}, "
            f"{len(fixture.functions)} named functions"
        ]
        code = ExitCode.PASS
        if args.check:
            table = check_fixture(fixture)
            result["facts"] = to_jsonable(table)
            lines.append(table.to_string(index=False))
            if not table["passed"].all():
                code = ExitCode.FAIL
        if args.dot:
            result["dot"] = to_dot(fixture.graph)
            lines = [result["dot"]]
        return CommandResult(code, result, "\n".join(lines))


def _command_name(args: Namespace) -> str:
    action = getattr(args, "action", None)
    return args.command if action is None else f"{args.command} {action}"


def _emit(stdout: TextIO, args: Namespace, command: str, code: ExitCode, result: dict, text: str):
    if getattr(args, "json", False):
        envelope = {"command": command, "status": _STATUS[code], "exit_code": int(code), "result": result}
        stdout.write(json.dumps(envelope, indent=2) + "\n")
    elif text:
        stdout.write(text + "\n")


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Runs one tropls subcommand

    :param argv: command line arguments without the program name
    :param stdout: stream for the report, sys.stdout when None

    returns:
      the exit code: 0 pass, 1 fail, 2 input error, 3 undetermined
    """
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return int(error.code or 0)
    command = _command_name(args)
    try:
        config = load_config(args.config)
    except OSError as error:
        sys.stderr.write(f"tropls: cannot read configuration: {error}\n")
        return int(ExitCode.INPUT_ERROR)
    dictConfig(config["logging"])
    _logger.info("tropls %s started", command)
    try:
        outcome = CommandRunner(config, args.seed).execute(args)
    except (InputException, UnsupportedException, PreconditionException) as error:
        _logger.error("%s: %s", type(error).__name__, error)
        _emit(stdout, args, command, ExitCode.INPUT_ERROR, {"error": str(error)}, "")
        sys.stderr.write(f"tropls: {error}\n")
        return int(ExitCode.INPUT_ERROR)
    except InconsistencyException as error:
        _logger.error("InconsistencyException: %s", error)
        _emit(stdout, args, command, ExitCode.UNDETERMINED, {"error": str(error)}, "")
        sys.stderr.write(f"tropls: {error}\n")
        return int(ExitCode.UNDETERMINED)
    _emit(stdout, args, command, outcome.exit_code, outcome.result, outcome.text)
    _logger.info("tropls %s finished with %s", command, _STATUS[outcome.exit_code])
    return int(outcome.exit_code)
