"""Tropical modifications and coordinate maps to tropical projective space"""
from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger
from typing import Optional

from tropls.common.custom_exceptions import InconsistencyException, InputException
from tropls.graphs.metric_graph import MetricGraph, Point, Ray, Subdivision, TangentVector
from tropls.graphs.pl_function import PLFunction, refinement_points
from tropls.matroids.matroid import ValuatedMatroid, bergman_membership
from tropls.series.trop_module import TropicalSubmodule

_logger = getLogger(__name__)

RAY_DISPLAY_LENGTH = Fraction(1)


@dataclass(frozen=True, eq=False)
class ExtendedFunction:
    """
    A PL function of the refined graph extended affinely along the rays

    ray_slopes holds the slope leaving the base of each ray.
    """
    function: PLFunction
    ray_slopes: dict[str, int]

    def slope(self, tangent: TangentVector) -> int:
        if tangent.ray is not None:
            return self.ray_slopes[tangent.ray]
        return self.function.slope(tangent)

    def value_at(self, point: Point) -> Fraction:
        return self.function.value_at(point)

    def value_on_ray(self, ray_id: str, distance: Fraction, graph: MetricGraph) -> Fraction:
        """
        Value at the given distance from the base of a ray
        """
        base = next(ray.base for ray in graph.rays if ray.id == ray_id)
        return self.function.value_at(Point(vertex=base)) + self.ray_slopes[ray_id] * distance


@dataclass(frozen=True, eq=False)
class ModifiedGraph:
    """
    The base graph with one ray at every point of the support of some D + div(phi_i)

    graph is the refinement of base through those points, carrying the rays.
    ray_points maps each ray id to its base point on the original graph.
    """
    base: MetricGraph
    module: TropicalSubmodule
    subdivision: Subdivision
    graph: MetricGraph
    ray_points: dict[str, Point]
    functions: tuple[ExtendedFunction, ...]

    def ray_slopes(self, ray_id: str) -> tuple[int, ...]:
        return tuple(function.ray_slopes[ray_id] for function in self.functions)


def tropical_modification(module: TropicalSubmodule) -> ModifiedGraph:
    """
    Attaches a ray at every point x with D + div(phi_i) >= x for some generator

    Along the ray at x coordinate j has outgoing slope ord_x(phi_j), so every
    coordinate has ord 0 at x on the modified graph.

    :param module: the module; its generators become the coordinates in order
    """
    base = module.graph
    if base.rays:
        raise InputException("the module already lives on a modified graph")
    locations = sorted(
        {point for generator in module.generators for point in module.divisor_of(generator).support()},
        key=lambda point: point.sort_key
    )
    subdivision = base.subdivide(locations)
    refined = subdivision.refined
    rays = []
    ray_points = {}
    for index, point in enumerate(locations):
        vertex = subdivision.map_point(point).vertex
        ray = Ray(f"ray{index}", vertex)
        rays.append(ray)
        ray_points[ray.id] = point
    graph = MetricGraph(refined.vertices, refined.edges, tuple(rays))
    functions = []
    for generator in module.generators:
        orders = generator.divisor()
        transported = generator.transport(subdivision)
        lifted = PLFunction(
            graph,
            {edge.id: transported.values(edge.id) for edge in graph.edges},
            {vertex: transported.value_at(Point(vertex=vertex)) for vertex in graph.vertices}
        )
        functions.append(ExtendedFunction(
            lifted, {ray.id: orders[ray_points[ray.id]] for ray in rays}
        ))
    _logger.info("Tropical modification with %s rays", len(rays))
    return ModifiedGraph(base, module, subdivision, graph, ray_points, tuple(functions))


def projective(values) -> tuple[Fraction, ...]:
    """
    Representative of a point of tropical projective space with first coordinate 0
    """
    values = tuple(Fraction(value) for value in values)
    return tuple(value - values[0] for value in values)


@dataclass(frozen=True, eq=False)
class PLMap:
    """
    The map v -> [phi_0(v) : ... : phi_n(v)] on a modified graph
    """
    source: ModifiedGraph
    coordinates: tuple[ExtendedFunction, ...]

    def image(self, point: Point) -> tuple[Fraction, ...]:
        return projective(coordinate.value_at(point) for coordinate in self.coordinates)

    def slope_vector(self, tangent: TangentVector) -> tuple[int, ...]:
        """
        Coordinatewise outgoing slopes along a tangent of the modified graph
        """
        return tuple(coordinate.slope(tangent) for coordinate in self.coordinates)

    def refinement_points(self) -> list[Point]:
        return refinement_points([coordinate.function for coordinate in self.coordinates])


def coordinate_map(modified: ModifiedGraph, matroid: Optional[ValuatedMatroid] = None) -> PLMap:
    """
    Coordinate map of the extended generators

    :param modified: the modified graph
    :param matroid: valuated matroid on the coordinates; when given every
        refinement point must map into its tropical linear space
    """
    mapping = PLMap(modified, modified.functions)
    if matroid is not None:
        if len(matroid.elements) != len(mapping.coordinates):
            raise InputException("the matroid needs one element per coordinate")
        for point in mapping.refinement_points():
            if not bergman_membership(mapping.image(point), matroid):
                raise InconsistencyException(f"image of {point} lies outside the tropical linear space")
    return mapping
