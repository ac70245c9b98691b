"""Mermaid diagram export of a class-group Cayley graph."""

from pathlib import Path

import networkx as nx


def render_mermaid(graph: nx.DiGraph) -> str:
    """Mermaid flowchart text; the identity class is drawn as a circle."""
    lines = ["graph LR"]

    for node_id, attrs in graph.nodes(data=True):
        label = attrs.get("label", str(node_id))
        if attrs.get("node_type") == "identity":
            shape_start, shape_end = "((", "))"
        else:
            shape_start, shape_end = "[", "]"
        # Mermaid treats double quotes as label delimiters
        safe_label = label.replace('"', "'")
        lines.append(f'    C{node_id}{shape_start}"{safe_label}"{shape_end}')

    for source, target, attrs in graph.edges(data=True):
        edge_label = attrs.get("generator", "").replace("|", "/")
        if edge_label:
            lines.append(f'    C{source} -->|"{edge_label}"| C{target}')
        else:
            lines.append(f"    C{source} --> C{target}")

    return "\n".join(lines) + "\n"


def export_mermaid(graph: nx.DiGraph, output_path: Path) -> Path:
    """Export Mermaid flowchart diagram.

    Args:
        graph: Cayley graph from `graph.build_graph`
        output_path: Path to save .mmd file

    Returns:
        Path to created Mermaid file
    """
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(render_mermaid(graph), encoding="utf-8")
    return output_path
