"""PNG rendering of quivers with matplotlib (no graphviz binary needed).

Translation quivers are laid out on knitting coordinates: column from the
longest arrow path, row from the orbit's vertex.  Plain quivers go on a circle.
"""

from __future__ import annotations

import math
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .ar_quiver import TranslationQuiver  # noqa: E402
from .quiver import QuiverGraph  # noqa: E402


def knit_layout(g: TranslationQuiver, ids=None) -> dict:
    """id -> (x, y).  Arrows from shifted projectives back to modules are
    ignored when ranking, which breaks the cluster quiver's cycle.  Ranks
    come from the whole quiver so subsets keep their places."""
    keep = set(g.ids() if ids is None else ids)
    objs = {o.id: o for o in g.objects}
    rows = {v: i for i, v in enumerate(g.spec.vertices)} if g.spec else {}
    preds = defaultdict(list)
    indeg = {x: 0 for x in objs}
    for s, t, _ in g.arrows:
        if s in objs and t in objs and not (not objs[s].is_module and objs[t].is_module):
            preds[t].append(s)
            indeg[t] += 1
    succ = defaultdict(list)
    for t, ss in preds.items():
        for s in ss:
            succ[s].append(t)
    col = {}
    todo = [x for x in objs if indeg[x] == 0]
    while todo:
        x = todo.pop()
        col[x] = max((col[p] + 1 for p in preds[x]), default=0)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                todo.append(y)
    for x in objs:  # leftovers only if the input had a genuine cycle
        col.setdefault(x, 0)
    for x in sorted(objs, key=lambda z: col[z]):
        if not objs[x].is_module and g.tau.get(x) in objs:
            col[x] = max(col[x], col[g.tau[x]] + 2)

    def row(x):
        # a shifted projective sits in the row of its translate
        o = objs[x]
        if not o.is_module and g.tau.get(x) in objs:
            o = objs[g.tau[x]]
        return -rows.get(o.vertex, 0)

    return {x: (col[x], row(x)) for x in objs if x in keep}


def circle_layout(vertices) -> dict:
    n = max(len(vertices), 1)
    return {v: (math.cos(2 * math.pi * k / n + math.pi / 2), math.sin(2 * math.pi * k / n + math.pi / 2))
            for k, v in enumerate(vertices)}


def _draw(ax, pos: dict, labels: dict, edges: list, dashed: list, styles: dict) -> None:
    for s, t in edges:
        ax.add_patch(FancyArrowPatch(pos[s], pos[t], arrowstyle="-|>", mutation_scale=10,
                                     shrinkA=14, shrinkB=14, color="black", lw=0.8))
    for s, t in dashed:
        ax.plot(*zip(pos[s], pos[t]), ls="--", color="grey", lw=0.6)
    for x, (px, py) in pos.items():
        marker, face = styles.get(x, ("o", "white"))
        ax.scatter([px], [py], s=500, marker=marker, facecolor=face, edgecolor="black", zorder=3)
        ax.text(px, py, labels[x], ha="center", va="center", fontsize=6, zorder=4)
    xs = [p[0] for p in pos.values()] or [0]
    ys = [p[1] for p in pos.values()] or [0]
    ax.set_xlim(min(xs) - 1, max(xs) + 1)
    ax.set_ylim(min(ys) - 1, max(ys) + 1)
    ax.set_axis_off()


def _save(fig, path) -> None:
    fig.savefig(path, dpi=150, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)


def render_translation_quiver(g: TranslationQuiver, path, highlight=()) -> None:
    pos = knit_layout(g)
    marked = set(highlight)
    styles = {x: ("o", "lightgrey" if x in marked else "white") for x in pos}
    edges = [(s, t) for s, t, _ in g.arrows]
    dashed = [(x, y) for x, y in sorted(g.tau.items())]
    fig, ax = plt.subplots(figsize=(max(4, len(pos) * 0.5), 3))
    _draw(ax, pos, {x: g.label(x) for x in pos}, edges, dashed, styles)
    _save(fig, path)


def render_module_category(v, path, left=None) -> None:
    pos = knit_layout(v.g, v.indA)
    LA = set(left.LA) if left is not None else set()
    E = set(left.E) if left is not None else set()
    styles = {}
    for x in pos:
        if x in E:
            marker = "D"
        elif v.is_injective(x):
            marker = "s"
        else:
            marker = "o"
        styles[x] = (marker, "lightblue" if x in LA else "white")
    edges = [(s, t) for s, t, _ in v.ar_arrows()]
    dashed = [(x, v.tau_A(x)) for x in v.indA if v.tau_A(x) is not None]
    fig, ax = plt.subplots(figsize=(max(4, len(pos) * 0.5), 3))
    _draw(ax, pos, {x: v.label(x) for x in pos}, edges, dashed, styles)
    _save(fig, path)


def render_quiver(q: QuiverGraph, path) -> None:
    pos = circle_layout(q.vertices)
    edges = [(s, t) for (s, t), _ in q.arrows]
    fig, ax = plt.subplots(figsize=(4, 4))
    _draw(ax, pos, {x: str(x) for x in pos}, edges, [], {})
    ax.set_xlim(-1.5, 1.5)
    ax.set_ylim(-1.5, 1.5)
    _save(fig, path)
