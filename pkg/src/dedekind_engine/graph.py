"""Build a NetworkX Cayley graph from a class-group table."""

from typing import Any

import networkx as nx

from dedekind_engine.class_group import ClassGroupTable


def build_graph(table: ClassGroupTable) -> nx.DiGraph:
    """
    Build the Cayley graph of a class group.

    Nodes are classes (0 is the identity). Edges point from a class C to
    C * [P] for every prime generator P, labelled with the generator.
    """
    graph = nx.DiGraph()

    for index, ideal_class in enumerate(table.classes):
        graph.add_node(
            index,
            label=ideal_class.label,
            node_type="identity" if index == 0 else "class",
            element_order=ideal_class.order,
        )

    # Generators that fall in the same class give the same edges
    seen_targets: set[int] = set()
    for label, generator_class in table.generators:
        if generator_class in seen_targets:
            continue
        seen_targets.add(generator_class)
        for source in range(table.class_number):
            target = table.multiply(source, generator_class)
            if graph.has_edge(source, target):
                continue
            graph.add_edge(source, target, generator=label, generator_class=generator_class)

    return graph


def get_graph_stats(graph: nx.DiGraph) -> dict[str, Any]:
    """Get statistics about the Cayley graph."""
    generator_classes = {data.get("generator_class") for _, _, data in graph.edges(data=True)}
    order_counts: dict[str, int] = {}
    for _, data in graph.nodes(data=True):
        key = str(data.get("element_order"))
        order_counts[key] = order_counts.get(key, 0) + 1

    return {
        "classes": graph.number_of_nodes(),
        "generator_classes": len(generator_classes - {None}),
        "edges": graph.number_of_edges(),
        "self_loops": nx.number_of_selfloops(graph),
        "strongly_connected": graph.number_of_nodes() > 0 and nx.is_strongly_connected(graph),
        "element_orders": dict(sorted(order_counts.items(), key=lambda kv: int(kv[0]))),
    }


def get_node_neighbors(graph: nx.DiGraph, node_id: int) -> dict[str, Any]:
    """Get the classes reachable from a class in one generator step."""
    if node_id not in graph:
        return {"error": f"Class {node_id} not found"}

    successors = [
        {
            "id": succ,
            "label": graph.nodes[succ].get("label"),
            "generator": graph.edges[node_id, succ].get("generator"),
        }
        for succ in sorted(graph.successors(node_id))
    ]
    return {
        "id": node_id,
        "label": graph.nodes[node_id].get("label"),
        "element_order": graph.nodes[node_id].get("element_order"),
        "multiplies_to": successors,
    }
