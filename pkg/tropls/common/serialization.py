"""JSON structures of the core types; every rational is a "p/q" or "n" string"""
import json
from dataclasses import fields, is_dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from pandas import DataFrame

from tropls.common.custom_exceptions import InputException
from tropls.common.rationals import format_rational, parse_rational
from tropls.graphs.divisor import Divisor
from tropls.graphs.metric_graph import MetricGraph, Point, Ray, TangentVector
from tropls.graphs.pl_function import PLFunction
from tropls.matroids.matroid import Matroid, ValuatedCircuit, ValuatedMatroid
from tropls.series.trop_module import TropicalSubmodule


def read_json(path: Union[str, Path]) -> Any:
    """
    Reads a JSON file, reporting unreadable or malformed files as input errors
    """
    try:
        with open(path, encoding="utf-8") as source:
            text = source.read()
    except OSError as error:
        raise InputException(f"cannot read {path}: {error.strerror}") from error
    return loads_json(text, str(path))


def loads_json(text: str, what: str = "input") -> Any:
    """
    Parses JSON text; floating point numbers are rejected
    """
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as error:
        raise InputException(f"{what} is not valid JSON: {error.msg} at line {error.lineno}") from error


def _reject_float(text: str):
    raise InputException(f"floating point number {text} in input; write rationals as \"p/q\" strings")


def _require(data: Any, key: str, what: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise InputException(f"{what} needs the key {key!r}")
    return data[key]


def rational_to_json(value) -> str:
    return format_rational(value)


def rational_from_json(value) -> Fraction:
    return parse_rational(value)


def graph_to_json(graph: MetricGraph) -> dict:
    data = {
        "vertices": list(graph.vertices),
        "edges": [
            {"id": edge.id, "tail": edge.tail, "head": edge.head, "length": rational_to_json(edge.length)}
            for edge in graph.edges
        ],
    }
    if graph.rays:
        data["rays"] = [{"id": ray.id, "base": ray.base} for ray in graph.rays]
    return data


def graph_from_json(data: dict) -> MetricGraph:
    """
    Builds a metric graph; rejects non-positive lengths and disconnected graphs
    """
    edges = []
    for edge in _require(data, "edges", "a graph"):
        length = rational_from_json(_require(edge, "length", "an edge"))
        if length <= 0:
            raise InputException(f"edge {edge.get('id')} has non-positive length {format_rational(length)}")
        edges.append((_require(edge, "id", "an edge"), _require(edge, "tail", "an edge"),
                      _require(edge, "head", "an edge"), length))
    rays = [Ray(str(ray["id"]), str(ray["base"])) for ray in data.get("rays", [])]
    return MetricGraph.build([str(vertex) for vertex in _require(data, "vertices", "a graph")], edges, rays)


def point_to_json(point: Point) -> dict:
    if point.is_vertex:
        return {"vertex": point.vertex}
    return {"edge": point.edge, "t": rational_to_json(point.offset)}


def point_from_json(graph: MetricGraph, data: dict) -> Point:
    if not isinstance(data, dict):
        raise InputException(f"a point is an object, got {data!r}")
    if "vertex" in data:
        return graph.vertex_point(str(data["vertex"]))
    return graph.point(str(_require(data, "edge", "a point")), _require(data, "t", "an edge point"))


def tangent_to_json(tangent: TangentVector) -> dict:
    if tangent.ray is not None:
        return {"at": point_to_json(tangent.base), "ray": tangent.ray}
    return {"at": point_to_json(tangent.base), "edge": tangent.edge, "toward_head": tangent.toward_head}


def tangent_from_json(graph: MetricGraph, data: dict) -> TangentVector:
    """
    Tangent vector; it must leave its base along the named edge or ray
    """
    base = point_from_json(graph, _require(data, "at", "a tangent"))
    if "ray" in data:
        tangent = TangentVector(base, ray=str(data["ray"]))
    else:
        tangent = TangentVector(base, str(_require(data, "edge", "a tangent")), bool(data.get("toward_head", True)))
    if tangent not in graph.tangent_vectors(base):
        raise InputException(f"tangent {tangent} does not leave {base}")
    return tangent


def divisor_to_json(divisor: Divisor) -> dict:
    return {
        "coeffs": [
            {"at": point_to_json(point), "n": divisor[point]} for point in divisor.support()
        ]
    }


def divisor_from_json(graph: MetricGraph, data: dict) -> Divisor:
    counts: dict[Point, int] = {}
    for entry in _require(data, "coeffs", "a divisor"):
        count = _require(entry, "n", "a divisor entry")
        if isinstance(count, bool) or not isinstance(count, int):
            raise InputException(f"divisor coefficients are integers, got {count!r}")
        point = point_from_json(graph, _require(entry, "at", "a divisor entry"))
        counts[point] = counts.get(point, 0) + count
    return Divisor(graph, counts)


def function_to_json(function: PLFunction) -> dict:
    graph = function.graph
    data = {
        "edges": {
            edge.id: [
                {"t": rational_to_json(offset), "val": rational_to_json(value)}
                for offset, value in function.values(edge.id)
            ]
            for edge in graph.edges
        }
    }
    touched = {vertex for edge in graph.edges for vertex in (edge.tail, edge.head)}
    isolated = [vertex for vertex in graph.vertices if vertex not in touched]
    if isolated:
        data["vertices"] = {vertex: rational_to_json(function.value_at(Point(vertex=vertex))) for vertex in isolated}
    return data


def function_from_json(graph: MetricGraph, data: dict) -> PLFunction:
    """
    PL function; the constructor rejects broken slopes and discontinuities naming the edge
    """
    pieces = {
        str(edge_id): [(_require(entry, "t", "a breakpoint"), _require(entry, "val", "a breakpoint"))
                       for entry in entries]
        for edge_id, entries in _require(data, "edges", "a function").items()
    }
    return PLFunction(graph, pieces, data.get("vertices"))


def module_to_json(module: TropicalSubmodule) -> dict:
    return {
        "divisor": divisor_to_json(module.divisor),
        "generators": [function_to_json(generator) for generator in module.generators],
    }


def module_from_json(graph: MetricGraph, data: dict) -> TropicalSubmodule:
    divisor = divisor_from_json(graph, _require(data, "divisor", "a module"))
    generators = tuple(function_from_json(graph, entry) for entry in _require(data, "generators", "a module"))
    return TropicalSubmodule(divisor, generators)


def matroid_to_json(matroid: Matroid) -> dict:
    return {
        "elements": list(matroid.elements),
        "circuits": sorted(
            ([element for element in matroid.elements if element in circuit] for circuit in matroid.circuits),
            key=lambda circuit: (len(circuit), circuit)
        ),
    }


def matroid_from_json(data: dict) -> Matroid:
    """
    Matroid from explicit circuits or from the lines of a rank-3 geometry
    """
    elements = [str(element) for element in _require(data, "elements", "a matroid")]
    if "lines" in data:
        return Matroid.from_lines(elements, [[str(item) for item in line] for line in data["lines"]])
    circuits = _require(data, "circuits", "a matroid")
    return Matroid.from_circuits(elements, [[str(item) for item in circuit] for circuit in circuits])


def valuated_matroid_to_json(matroid: ValuatedMatroid) -> dict:
    return {
        "elements": list(matroid.elements),
        "valuated_circuits": [
            {element: rational_to_json(value) for element, value in circuit.values}
            for circuit in matroid.circuits
        ],
    }


def valuated_matroid_from_json(data: dict) -> ValuatedMatroid:
    elements = tuple(str(element) for element in _require(data, "elements", "a valuated matroid"))
    circuits = tuple(
        ValuatedCircuit.of({str(element): value for element, value in entry.items()})
        for entry in _require(data, "valuated_circuits", "a valuated matroid")
    )
    return ValuatedMatroid(elements, circuits)


def to_jsonable(value: Any) -> Any:
    """
    Plain JSON structure of any result value

    Rationals become strings, core types their JSON form, dataclasses and
    named tuples objects, sets sorted lists and data frames record lists.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return rational_to_json(value)
    if isinstance(value, Point):
        return point_to_json(value)
    if isinstance(value, TangentVector):
        return tangent_to_json(value)
    if isinstance(value, MetricGraph):
        return graph_to_json(value)
    if isinstance(value, Divisor):
        return divisor_to_json(value)
    if isinstance(value, PLFunction):
        return function_to_json(value)
    if isinstance(value, TropicalSubmodule):
        return module_to_json(value)
    if isinstance(value, ValuatedMatroid):
        return valuated_matroid_to_json(value)
    if isinstance(value, Matroid):
        return matroid_to_json(value)
    if isinstance(value, ValuatedCircuit):
        return {element: rational_to_json(item) for element, item in value.values}
    if isinstance(value, DataFrame):
        return [{key: to_jsonable(item) for key, item in row.items()} for row in value.to_dict("records")]
    if isinstance(value, dict):
        return {_key(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((to_jsonable(item) for item in value), key=json.dumps)
    if hasattr(value, "_asdict"):
        return to_jsonable(value._asdict())
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if is_dataclass(value):
        return {item.name: to_jsonable(getattr(value, item.name)) for item in fields(value) if item.repr}
    if hasattr(value, "item"):
        return to_jsonable(value.item())
    return str(value)


def _key(key: Any) -> str:
    if isinstance(key, (frozenset, set)):
        return ",".join(sorted(str(item) for item in key))
    if isinstance(key, Fraction):
        return rational_to_json(key)
    return str(key)
