"""Graphviz DOT export of metric graphs, modified graphs and tree targets"""
from typing import Optional, Union

import networkx as nx

from tropls.common.rationals import format_rational
from tropls.graphs.metric_graph import MetricGraph
from tropls.morphisms.modification import RAY_DISPLAY_LENGTH, ModifiedGraph
from tropls.morphisms.tree_target import TreeTarget, format_vector


def _quoted(text: str) -> str:
    return '"' + text.replace('"', "'") + '"'


class _Drawing:
    """
    Multigraph with DOT-safe node ids and quoted labels
    """

    def __init__(self, degrees: dict[str, int]):
        self.network = nx.MultiGraph()
        self.degrees = degrees
        self._ids: dict[str, str] = {}

    def node(self, name: str, label: Optional[str] = None, **attributes) -> str:
        if name not in self._ids:
            self._ids[name] = f"n{len(self._ids)}"
            self.network.add_node(self._ids[name], label=_quoted(name if label is None else label), **attributes)
        return self._ids[name]

    def edge(self, edge_id: str, tail: str, head: str, label: str, **attributes):
        if edge_id in self.degrees:
            label += f" d={self.degrees[edge_id]}"
        self.network.add_edge(self.node(tail), self.node(head), label=_quoted(f"{edge_id}: {label}"), **attributes)


def _draw_graph(drawing: _Drawing, graph: MetricGraph):
    for vertex in graph.vertices:
        drawing.node(vertex)
    for edge in graph.edges:
        drawing.edge(edge.id, edge.tail, edge.head, format_rational(edge.length))


def _draw_modified(drawing: _Drawing, modified: ModifiedGraph):
    _draw_graph(drawing, modified.graph)
    for ray in modified.graph.rays:
        end = drawing.node(f"inf {ray.id}", "", shape="point")
        slopes = ", ".join(str(slope) for slope in modified.ray_slopes(ray.id))
        drawing.network.add_edge(
            drawing.node(ray.base), end, style="dashed",
            label=_quoted(f"{ray.id}: {format_rational(RAY_DISPLAY_LENGTH)} slopes ({slopes})")
        )


def _draw_tree(drawing: _Drawing, tree: TreeTarget):
    for name, point in tree.nodes.items():
        drawing.node(name, f"{name} {format_vector(point)}")
    for edge in tree.edges:
        drawing.edge(edge.id, edge.tail, edge.head, format_rational(edge.length))
    for ray in tree.rays:
        end = drawing.node(f"inf {ray.id}", f"e{ray.element}", shape="plaintext")
        label = ray.id + (f" d={drawing.degrees[ray.id]}" if ray.id in drawing.degrees else "")
        drawing.network.add_edge(drawing.node(ray.node), end, style="dashed", label=_quoted(label))


def to_dot(
    item: Union[MetricGraph, ModifiedGraph, TreeTarget], degrees: Optional[dict[str, int]] = None
) -> str:
    """
    DOT text of a metric graph, a modified graph or a tree target

    :param item: the object to draw
    :param degrees: optional local degree label per edge id
    """
    drawing = _Drawing(degrees or {})
    if isinstance(item, ModifiedGraph):
        _draw_modified(drawing, item)
    elif isinstance(item, TreeTarget):
        _draw_tree(drawing, item)
    else:
        _draw_graph(drawing, item)
    return nx.nx_pydot.to_pydot(drawing.network).to_string()
