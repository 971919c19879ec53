"""Plain quivers: Fomin-Zelevinsky mutation, sink reflections, isomorphism."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .ar_quiver import parse_quiver_text


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class QuiverGraph:
    vertices: tuple
    arrows: tuple = field(default=())  # sorted ((src, dst), multiplicity) pairs

    @classmethod
    def build(cls, vertices, arrows) -> "QuiverGraph":
        """``arrows`` is an iterable of (src, dst) pairs or a Counter."""
        vertices = tuple(vertices)
        counts = arrows if isinstance(arrows, Counter) else Counter(tuple(a) for a in arrows)
        for (s, t), m in counts.items():
            if s not in vertices or t not in vertices:
                raise QuiverError(f"arrow {s}->{t} leaves the vertex set")
        return cls(vertices, tuple(sorted((k, m) for k, m in counts.items() if m > 0)))

    @classmethod
    def from_text(cls, text: str) -> "QuiverGraph":
        vertices, arrows = parse_quiver_text(text)
        return cls.build(vertices, arrows)

    @classmethod
    def from_file(cls, path) -> "QuiverGraph":
        return cls.from_text(Path(path).read_text())

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        for (s, t), m in self.arrows:
            lines.extend([f"arrow {s} {t}"] * m)
        return "\n".join(lines) + "\n"

    def counts(self) -> Counter:
        return Counter(dict(self.arrows))

    def mult(self, s, t) -> int:
        return self.counts().get((s, t), 0)

    @property
    def n_arrows(self) -> int:
        return sum(m for _, m in self.arrows)

    def out_degree(self, v) -> int:
        return sum(m for (s, _), m in self.arrows if s == v)

    def in_degree(self, v) -> int:
        return sum(m for (_, t), m in self.arrows if t == v)

    def sinks(self) -> list:
        return [v for v in self.vertices if self.out_degree(v) == 0]

    def sources(self) -> list:
        return [v for v in self.vertices if self.in_degree(v) == 0]

    def has_loops(self) -> bool:
        return any(s == t for (s, t), _ in self.arrows)

    def relabel(self, mapping: dict) -> "QuiverGraph":
        c = Counter()
        for (s, t), m in self.arrows:
            c[(mapping.get(s, s), mapping.get(t, t))] += m
        return QuiverGraph.build([mapping.get(v, v) for v in self.vertices], c)


def quiver_mutation(q: QuiverGraph, k) -> QuiverGraph:
    """Mutate at ``k``: add i->j for each path i->k->j, reverse arrows at k,
    then cancel 2-cycles."""
    if k not in q.vertices:
        raise QuiverError(f"unknown vertex {k}")
    c = q.counts()
    if c.get((k, k)):
        raise QuiverError(f"loop at {k}: mutation undefined")
    new = Counter(c)
    for (i, kk), a in c.items():
        if kk != k:
            continue
        for (kk2, j), b in c.items():
            if kk2 == k:
                new[(i, j)] += a * b
    flipped = Counter()
    for (s, t), m in new.items():
        if s == k or t == k:
            flipped[(t, s)] += m
        else:
            flipped[(s, t)] += m
    for x, s in enumerate(q.vertices):
        for t in q.vertices[x + 1:]:
            common = min(flipped.get((s, t), 0), flipped.get((t, s), 0))
            if common:
                flipped[(s, t)] -= common
                flipped[(t, s)] -= common
    return QuiverGraph.build(q.vertices, flipped)


def sink_reflection(q: QuiverGraph, k) -> QuiverGraph:
    if q.out_degree(k):
        raise QuiverError(f"{k} is not a sink")
    return quiver_mutation(q, k)


def exchange_matrix(q: QuiverGraph) -> dict:
    """Skew-symmetric b[(i, j)] = #(i->j) - #(j->i)."""
    b = {}
    c = q.counts()
    for i in q.vertices:
        for j in q.vertices:
            b[(i, j)] = c.get((i, j), 0) - c.get((j, i), 0)
    return b


def quiver_isomorphic(q1: QuiverGraph, q2: QuiverGraph):
    """A vertex bijection q1 -> q2 preserving arrow multiplicities, or None."""
    if len(q1.vertices) != len(q2.vertices) or q1.n_arrows != q2.n_arrows:
        return None
    c1, c2 = q1.counts(), q2.counts()

    def signature(q, v):
        return (q.out_degree(v), q.in_degree(v), q.counts().get((v, v), 0))

    sig1 = {v: signature(q1, v) for v in q1.vertices}
    sig2 = {v: signature(q2, v) for v in q2.vertices}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return None
    # most constrained first: rare signatures, then high degree
    freq = Counter(sig1.values())
    order = sorted(q1.vertices, key=lambda v: (freq[sig1[v]], -sum(sig1[v][:2]), str(v)))
    mapping: dict = {}
    used: set = set()

    def consistent(v, w):
        for u, x in mapping.items():
            if c1.get((v, u), 0) != c2.get((w, x), 0) or c1.get((u, v), 0) != c2.get((x, w), 0):
                return False
        return True

    def extend(pos):
        if pos == len(order):
            return True
        v = order[pos]
        for w in q2.vertices:
            if w in used or sig2[w] != sig1[v] or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(pos + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(0) else None
