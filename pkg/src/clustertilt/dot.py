"""Graphviz DOT text for translation quivers, module AR-quivers and Gabriel quivers.

Output is deterministic: nodes in object order, edges sorted, no timestamps.
AR translates are dashed edges x -> tau x drawn without layout constraint.
"""

from __future__ import annotations

from .ar_quiver import TranslationQuiver
from .quiver import QuiverGraph


def _q(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _attrs(d: dict) -> str:
    if not d:
        return ""
    return " [" + ", ".join(f"{k}={_q(v)}" for k, v in sorted(d.items())) + "]"


def _graph(name: str, nodes: list, edges: list, rankdir: str = "LR") -> str:
    out = [f"digraph {_q(name)} {{", f"  rankdir={rankdir};", '  node [fontname="Helvetica"];']
    for n, a in nodes:
        out.append(f"  {_q(n)}{_attrs(a)};")
    for s, t, a in edges:
        out.append(f"  {_q(s)} -> {_q(t)}{_attrs(a)};")
    out.append("}")
    return "\n".join(out) + "\n"


def translation_quiver_dot(g: TranslationQuiver, name: str = "cluster", highlight=()) -> str:
    """The whole AR-quiver; ``highlight`` ids (e.g. a tilting object) are filled."""
    marked = set(highlight)
    nodes = []
    for o in g.objects:
        a = {"shape": "ellipse"}
        if o.id in marked:
            a.update(style="filled", fillcolor="lightgrey")
        nodes.append((o.label, a))
    edges = []
    for s, t, m in g.arrows:
        edges.extend([(g.label(s), g.label(t), {})] * m)
    for x in sorted(g.tau):
        edges.append((g.label(x), g.label(g.tau[x]),
                      {"style": "dashed", "arrowhead": "none", "constraint": "false"}))
    return _graph(name, nodes, edges)


def node_shape(v, x, ext_injective=frozenset()) -> dict:
    """circle = projective, box = injective, diamond = Ext-injective in add L_A."""
    proj, inj = v.is_projective(x), v.is_injective(x)
    if x in ext_injective:
        a = {"shape": "diamond"}
    elif proj and inj:
        a = {"shape": "box", "peripheries": "2"}
    elif proj:
        a = {"shape": "circle"}
    elif inj:
        a = {"shape": "box"}
    else:
        a = {"shape": "plaintext"}
    return a


def module_ar_dot(v, left=None, name: str = "modA") -> str:
    """AR-quiver of mod A; ``left`` is a LeftPartReport whose L_A is shaded."""
    LA = set(left.LA) if left is not None else set()
    E = frozenset(left.E) if left is not None else frozenset()
    nodes = []
    for x in v.indA:
        a = node_shape(v, x, E)
        if x in LA:
            a.update(style="filled", fillcolor="lightblue")
        nodes.append((v.label(x), a))
    edges = []
    for s, t, m in v.ar_arrows():
        edges.extend([(v.label(s), v.label(t), {})] * m)
    for x in v.indA:
        y = v.tau_A(x)
        if y is not None:
            edges.append((v.label(x), v.label(y),
                          {"style": "dashed", "arrowhead": "none", "constraint": "false"}))
    return _graph(name, nodes, edges)


def quiver_dot(q: QuiverGraph, name: str = "gabriel") -> str:
    nodes = [(str(x), {"shape": "circle"}) for x in q.vertices]
    edges = []
    for (s, t), m in q.arrows:
        edges.extend([(str(s), str(t), {})] * m)
    return _graph(name, nodes, edges)
