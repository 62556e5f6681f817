"""DOT (graphviz) export of hierarchy neighbourhoods and label mappings.

Output is plain text with every identifier double-quoted and nodes/edges in
sorted order, so identical inputs always give identical bytes.
"""

from __future__ import annotations

from .catalog import MappingCatalog
from .errors import UnknownLabel
from .taxonomy import Taxonomy

__all__ = ["dot_hierarchy", "dot_mapping", "hierarchy_subgraph", "quote"]

FOCUS_ATTRS = 'style=filled, fillcolor="lightgrey", penwidth=2'


def quote(text: str) -> str:
    text = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\r", "")
    return f'"{text}"'


def hierarchy_subgraph(tax: Taxonomy, focus, up=None, down=None, siblings=False):
    """Node and edge sets drawn by :func:`dot_hierarchy`.

    Nodes are the focus, its ancestors within ``up`` steps, descendants
    within ``down`` steps and, if asked, its siblings. Edges are every
    parent->child relation between two included nodes.
    """
    nodes = {focus}
    nodes.update(tax.ancestors_within(focus, up))
    nodes.update(tax.descendants_within(focus, down))
    if siblings:
        nodes.update(tax.siblings(focus))
    edges = {(p, c) for c in nodes for p in tax.node(c).parents if p in nodes}
    return sorted(nodes), sorted(edges)


def dot_hierarchy(tax: Taxonomy, focus, up=None, down=None, siblings=False) -> str:
    if focus not in tax:
        raise UnknownLabel(focus)
    nodes, edges = hierarchy_subgraph(tax, focus, up, down, siblings)
    lines = [f"digraph {quote(focus)} {{", "  rankdir=TB;", '  node [shape="box"];']
    for n in nodes:
        if n == focus:
            lines.append(f"  {quote(n)} [{FOCUS_ATTRS}];")
        else:
            lines.append(f"  {quote(n)};")
    for p, c in edges:
        lines.append(f"  {quote(p)} -> {quote(c)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_mapping(cat: MappingCatalog, std) -> str:
    """Star graph: one leaf per (dataset, original label), each pointing at ``std``."""
    mapping = cat.get_mapping_for_std_label(std)
    lines = [f"digraph {quote(std)} {{", "  rankdir=LR;", '  node [shape="box"];']
    lines.append(f"  {quote(std)} [{FOCUS_ATTRS}];")
    leaves = []
    for dataset, originals in mapping.items():
        for orig in originals:
            leaf = f"{cat.display_name(dataset)}: {orig}"
            # dataset id keeps node ids unique even if two datasets share a display name
            leaves.append((f"{dataset}: {orig}", leaf))
    for node_id, label in leaves:
        lines.append(f"  {quote(node_id)} [label={quote(label)}, shape=\"ellipse\"];")
    for node_id, _ in leaves:
        lines.append(f"  {quote(node_id)} -> {quote(std)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
