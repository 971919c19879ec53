"""Dynkin quivers, knitting of mod H, and the AR-quiver of the cluster category.

Objects of the cluster category are the indecomposable H-modules together
with the shifted projectives ``P_v[1]``.  Modules are produced by knitting
the preprojective component starting from the indecomposable projectives;
each module is remembered by its knitting coordinate ``(v, r)`` meaning
``tau^{-r} P_v``.
"""

from __future__ import annotations

import re
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from pathlib import Path

POSITIVE_ROOTS = {"E6": 36, "E7": 63, "E8": 120}


class DynkinError(ValueError):
    pass


class QuiverConsistencyError(RuntimeError):
    """The glued translation quiver violates the mesh axioms."""


def positive_root_count(family: str, n: int) -> int:
    if family == "A":
        return n * (n + 1) // 2
    if family == "D":
        return n * (n - 1)
    return POSITIVE_ROOTS[f"E{n}"]


@dataclass(frozen=True)
class DynkinSpec:
    family: str
    rank: int
    vertices: tuple  # vertex names, in the user's order
    arrows: tuple  # (source name, target name)
    experimental: bool = False

    def __post_init__(self):
        _validate(self)

    @classmethod
    def from_orientation(cls, family: str, rank: int, orientation: str,
                         experimental: bool = False) -> "DynkinSpec":
        """Shorthand like ``"1>2,2>3"``; vertices are named ``1..rank``."""
        vertices = tuple(str(i) for i in range(1, rank + 1))
        arrows = []
        for part in filter(None, (p.strip() for p in orientation.split(","))):
            if ">" in part:
                s, t = (x.strip() for x in part.split(">", 1))
            elif "<" in part:
                t, s = (x.strip() for x in part.split("<", 1))
            else:
                raise DynkinError(f"cannot parse orientation item {part!r}")
            arrows.append((s, t))
        return cls(family.upper(), rank, vertices, tuple(arrows), experimental)

    @classmethod
    def linear_a(cls, n: int) -> "DynkinSpec":
        return cls.from_orientation("A", n, ",".join(f"{i}>{i + 1}" for i in range(1, n)))

    @classmethod
    def from_text(cls, text: str, family: str | None = None,
                  experimental: bool = False) -> "DynkinSpec":
        vertices, arrows = parse_quiver_text(text)
        fam, n = classify_dynkin(vertices, arrows)
        if family is not None and family.upper() != fam:
            raise DynkinError(f"quiver has Dynkin type {fam}{n}, not {family}")
        return cls(fam, n, tuple(vertices), tuple(arrows), experimental)

    @classmethod
    def from_file(cls, path, family: str | None = None,
                  experimental: bool = False) -> "DynkinSpec":
        return cls.from_text(Path(path).read_text(), family, experimental)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def index(self, v: str) -> int:
        return self.vertices.index(v)


def parse_quiver_text(text: str) -> tuple[list[str], list[tuple[str, str]]]:
    """Parse ``vertex <name>`` / ``arrow <src> <dst>`` lines (``#`` comments)."""
    vertices: list[str] = []
    arrows: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            if parts[1] in vertices:
                raise DynkinError(f"line {lineno}: duplicate vertex {parts[1]}")
            vertices.append(parts[1])
        elif parts[0] == "arrow" and len(parts) == 3:
            arrows.append((parts[1], parts[2]))
        else:
            raise DynkinError(f"line {lineno}: cannot parse {raw!r}")
    for s, t in arrows:
        for v in (s, t):
            if v not in vertices:
                raise DynkinError(f"arrow uses undeclared vertex {v}")
    return vertices, arrows


def classify_dynkin(vertices, arrows) -> tuple[str, int]:
    """Return (family, rank) of the underlying graph, or raise."""
    n = len(vertices)
    if n == 0:
        raise DynkinError("empty quiver")
    adj = defaultdict(set)
    for s, t in arrows:
        if s == t:
            raise DynkinError("loops are not allowed")
        if t in adj[s]:
            raise DynkinError("multiple edges: not a simply-laced Dynkin diagram")
        adj[s].add(t)
        adj[t].add(s)
    if len(arrows) != n - 1 or not _connected(vertices, adj):
        raise DynkinError("underlying graph is not a tree, hence not Dynkin")
    branch = [v for v in vertices if len(adj[v]) > 2]
    if not branch:
        return "A", n
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        raise DynkinError("not a Dynkin diagram")
    c = branch[0]
    arms = []
    for start in sorted(adj[c]):
        length, prev, cur = 1, c, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return "D", n
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return "E", n
    raise DynkinError(f"arm lengths {arms}: not Dynkin (knitting would not terminate)")


def _connected(vertices, adj) -> bool:
    seen = {vertices[0]}
    todo = [vertices[0]]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(vertices)


def _validate(spec: DynkinSpec) -> None:
    if spec.family not in ("A", "D", "E"):
        raise DynkinError(f"unknown family {spec.family!r}")
    if spec.family in ("D", "E") and not spec.experimental:
        raise DynkinError(f"type {spec.family} requires the experimental flag")
    if len(spec.vertices) != spec.rank:
        raise DynkinError(f"rank {spec.rank} but {len(spec.vertices)} vertices")
    fam, n = classify_dynkin(list(spec.vertices), list(spec.arrows))
    if (fam, n) != (spec.family, spec.rank):
        raise DynkinError(f"orientation describes {fam}{n}, not {spec.family}{spec.rank}")


@dataclass(frozen=True)
class CatObject:
    id: int
    kind: str  # "module" or "shifted"
    label: str
    dimvec: tuple  # for shifted projectives: dimvec of the projective
    vertex: str  # P_vertex's vertex for the knitting coordinate
    r: int  # tau^{-r} P_vertex for modules; -1 for shifted projectives

    @property
    def is_module(self) -> bool:
        return self.kind == "module"

    def __str__(self):
        return self.label


@dataclass
class TranslationQuiver:
    objects: list
    arrows: list  # (source id, target id, multiplicity), sorted
    tau: dict  # id -> id, partial for module fragments
    slices: dict = field(default_factory=dict)
    spec: DynkinSpec | None = None
    stable: bool = False

    def __post_init__(self):
        self._by_label = {o.label: o for o in self.objects}
        self._by_id = {o.id: o for o in self.objects}
        self._succ = defaultdict(list)
        self._pred = defaultdict(list)
        for s, t, m in self.arrows:
            self._succ[s].append((t, m))
            self._pred[t].append((s, m))
        self._tau_inv = {v: k for k, v in self.tau.items()}

    def __len__(self):
        return len(self.objects)

    def obj(self, key) -> CatObject:
        """Look up by id, CatObject or label (with a few accepted aliases)."""
        if isinstance(key, CatObject):
            return self._by_id[key.id]
        if isinstance(key, int):
            return self._by_id[key]
        label = key.strip()
        if label in self._by_label:
            return self._by_label[label]
        found = self._alias(label)
        if found is None:
            raise KeyError(f"no object labelled {label!r}")
        return found

    def _alias(self, label: str):
        spec = self.spec
        m = re.fullmatch(r"\[(\d+)\]", label)
        if m:
            vec = tuple(int(c) for c in m.group(1))
            for o in self.objects:
                if o.is_module and o.dimvec == vec:
                    return o
        m = re.fullmatch(r"([PI])_?(\w+)(\[1\])?", label)
        if m and spec is not None and m.group(2) in spec.vertices:
            which, v, shifted = m.groups()
            if shifted and which == "P":
                return self._by_label.get(f"P_{v}[1]")
            if which == "P":
                return self._by_id[self.slices["projective"][spec.index(v)]]
            for i, w in self.slices.get("injective_vertex", {}).items():
                if w == v:
                    return self._by_id[i]
        if label.endswith("[1]"):
            base = label[:-3]
            if base in self._by_label:
                o = self._by_label[base]
                if o.is_module and o.r == 0:
                    return self._by_label[f"P_{o.vertex}[1]"]
        return None

    def ids(self) -> list[int]:
        return [o.id for o in self.objects]

    def label(self, i: int) -> str:
        return self._by_id[i].label

    def successors(self, i: int) -> list:
        return self._succ.get(i, [])

    def predecessors(self, i: int) -> list:
        return self._pred.get(i, [])

    def tau_of(self, i: int):
        return self.tau.get(i)

    def tau_inv_of(self, i: int):
        return self._tau_inv.get(i)

    def arrow_multiplicity(self, s: int, t: int) -> int:
        return sum(m for x, m in self._succ.get(s, []) if x == t)

    def check_mesh(self) -> None:
        """Raise unless every z with tau z defined has pred(z) == succ(tau z)."""
        for z in self.ids():
            tz = self.tau.get(z)
            if tz is None:
                continue
            pred = Counter()
            for y, m in self.predecessors(z):
                pred[y] += m
            succ = Counter()
            for y, m in self.successors(tz):
                succ[y] += m
            if pred != succ:
                raise QuiverConsistencyError(
                    f"mesh at {self.label(z)} broken: predecessors "
                    f"{sorted(self.label(y) for y in pred)} vs successors of tau = "
                    f"{sorted(self.label(y) for y in succ)}")

    def tau_orbits(self) -> list[list[int]]:
        seen, orbits = set(), []
        for i in self.ids():
            if i in seen:
                continue
            orbit = [i]
            seen.add(i)
            j = self.tau.get(i)
            while j is not None and j not in seen:
                orbit.append(j)
                seen.add(j)
                j = self.tau.get(j)
            orbits.append(orbit)
        return orbits

    def tau_order(self) -> int:
        from math import lcm
        out = 1
        for o in self.tau_orbits():
            out = lcm(out, len(o))
        return out


def _paths_count(spec: DynkinSpec) -> dict:
    """count[(a, b)] = number of paths a -> b in Q (including trivial ones)."""
    succ = defaultdict(list)
    for s, t in spec.arrows:
        succ[s].append(t)
    count = {}
    for a in spec.vertices:
        tally = Counter({a: 1})
        todo = deque([a])
        order = []
        # Q is a tree, so a plain DFS visits each reachable vertex once.
        while todo:
            v = todo.popleft()
            order.append(v)
            for w in succ[v]:
                tally[w] += tally[v]
                todo.append(w)
        for b in spec.vertices:
            count[(a, b)] = tally[b]
    return count


def module_label(spec: DynkinSpec, dimvec: tuple) -> str:
    """Top-to-socle for uniserial thin modules, raw ``[d1d2...]`` otherwise."""
    support = [v for v, d in zip(spec.vertices, dimvec) if d]
    if all(d in (0, 1) for d in dimvec):
        inside = [(s, t) for s, t in spec.arrows if s in support and t in support]
        nxt = {s: t for s, t in inside}
        indeg = Counter(t for _, t in inside)
        outdeg = Counter(s for s, _ in inside)
        if all(indeg[v] <= 1 and outdeg[v] <= 1 for v in support):
            tops = [v for v in support if indeg[v] == 0]
            if len(tops) == 1:
                chain = [tops[0]]
                while chain[-1] in nxt:
                    chain.append(nxt[chain[-1]])
                if len(chain) == len(support):
                    return "/".join(chain)
    return "[" + "".join(str(d) for d in dimvec) + "]"


def _sink_first(spec: DynkinSpec) -> list[str]:
    outdeg = Counter(s for s, _ in spec.arrows)
    preds = defaultdict(list)
    for s, t in spec.arrows:
        preds[t].append(s)
    ready = [v for v in spec.vertices if outdeg[v] == 0]
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for u in preds[v]:
            outdeg[u] -= 1
            if outdeg[u] == 0:
                ready.append(u)
    return order


def _knit(spec: DynkinSpec):
    paths = _paths_count(spec)
    proj = {v: tuple(paths[(v, j)] for j in spec.vertices) for v in spec.vertices}
    inj = {v: tuple(paths[(j, v)] for j in spec.vertices) for v in spec.vertices}
    into = defaultdict(list)
    out = defaultdict(list)
    for s, t in spec.arrows:
        out[s].append(t)
        into[t].append(s)
    dims = {(v, 0): proj[v] for v in spec.vertices}
    order = _sink_first(spec)
    injectives = set(inj.values())
    limit = positive_root_count(spec.family, spec.rank)
    r = 0
    while True:
        grew = False
        for v in order:
            cur = dims.get((v, r))
            if cur is None or cur in injectives:
                continue
            acc = [0] * spec.rank
            for u in into[v]:
                for k, x in enumerate(dims.get((u, r), ())):
                    acc[k] += x
            for w in out[v]:
                for k, x in enumerate(dims.get((w, r + 1), ())):
                    acc[k] += x
            new = tuple(a - b for a, b in zip(acc, cur))
            if any(x < 0 for x in new) or not any(new):
                raise DynkinError(f"knitting produced invalid dimension vector {new}")
            dims[(v, r + 1)] = new
            grew = True
        if len(dims) > limit:
            raise DynkinError("knitting does not terminate: quiver is not Dynkin")
        if not grew:
            break
        r += 1
    if len(dims) != limit:
        raise DynkinError(f"knitting found {len(dims)} modules, expected {limit}")
    arrows = []
    for s, t in spec.arrows:
        rr = 0
        while (s, rr) in dims or (t, rr) in dims:
            if (t, rr) in dims and (s, rr) in dims:
                arrows.append(((t, rr), (s, rr)))
            if (s, rr) in dims and (t, rr + 1) in dims:
                arrows.append(((s, rr), (t, rr + 1)))
            rr += 1
    return dims, arrows, proj, inj


def knit_module_category(spec: DynkinSpec) -> TranslationQuiver:
    """AR-quiver of mod H; tau is undefined on projectives."""
    dims, arrows, proj, inj = _knit(spec)
    coords = sorted(dims, key=lambda c: (c[1], spec.index(c[0])))
    objects = []
    cid = {}
    for i, (v, r) in enumerate(coords):
        objects.append(CatObject(i, "module", module_label(spec, dims[(v, r)]), dims[(v, r)], v, r))
        cid[(v, r)] = i
    arr = sorted((cid[a], cid[b], 1) for a, b in arrows)
    tau = {cid[(v, r)]: cid[(v, r - 1)] for (v, r) in coords if r > 0}
    slices = _slices(spec, objects, cid, inj)
    return TranslationQuiver(objects, arr, tau, slices, spec, stable=False)


def _slices(spec, objects, cid, inj) -> dict:
    projective = [cid[(v, 0)] for v in spec.vertices]
    injective, inj_vertex = [], {}
    for v in spec.vertices:
        for o in objects:
            if o.is_module and o.dimvec == inj[v]:
                injective.append(o.id)
                inj_vertex[o.id] = v
    return {"projective": projective, "injective": injective, "injective_vertex": inj_vertex}


def build_cluster_quiver(spec: DynkinSpec) -> TranslationQuiver:
    """Glue ind H and the shifted projectives into the stable AR-quiver of C_H."""
    mod = knit_module_category(spec)
    objects = list(mod.objects)
    shifted = {}
    for v in spec.vertices:
        o = mod.obj(mod.slices["projective"][spec.index(v)])
        new = CatObject(len(objects), "shifted", f"P_{v}[1]", o.dimvec, v, -1)
        objects.append(new)
        shifted[v] = new.id
    tau = dict(mod.tau)
    for v in spec.vertices:
        p = mod.slices["projective"][spec.index(v)]
        tau[p] = shifted[v]  # tau P = P[1]
    for i, v in mod.slices["injective_vertex"].items():
        tau[shifted[v]] = i  # tau(P_v[1]) = I_v
    if sorted(tau) != list(range(len(objects))) or sorted(tau.values()) != list(range(len(objects))):
        raise QuiverConsistencyError("glued translation is not a permutation")
    tau_inv = {b: a for a, b in tau.items()}
    # Arrow y->z forces tau(z)->y and conversely; close the module arrows under
    # (y, z) -> (tau z, y), which is a permutation of ordered pairs.
    mult = Counter()
    for s, t, m in mod.arrows:
        todo = [(s, t)]
        while todo:
            y, z = todo.pop()
            if mult[(y, z)]:
                continue
            mult[(y, z)] = m
            todo.append((tau[z], y))
            todo.append((z, tau_inv[y]))
    arrows = sorted((a, b, m) for (a, b), m in mult.items())
    g = TranslationQuiver(objects, arrows, tau, dict(mod.slices, shifted=[shifted[v] for v in spec.vertices]),
                          spec, stable=True)
    g.check_mesh()
    module_ids = {o.id for o in mod.objects}
    glued = sorted((a, b, m) for a, b, m in arrows if a in module_ids and b in module_ids)
    if glued != sorted(mod.arrows):
        raise QuiverConsistencyError("gluing changed the arrows between modules")
    expected = positive_root_count(spec.family, spec.rank) + spec.rank
    if len(objects) != expected:
        raise QuiverConsistencyError(f"{len(objects)} objects, expected {expected}")
    if spec.rank > 1 and not _quiver_connected(g):
        raise QuiverConsistencyError("cluster quiver is disconnected")
    return g


def _quiver_connected(g: TranslationQuiver) -> bool:
    adj = defaultdict(set)
    for s, t, _ in g.arrows:
        adj[s].add(t)
        adj[t].add(s)
    ids = g.ids()
    seen = {ids[0]}
    todo = [ids[0]]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(ids)


def shift(g: TranslationQuiver, x, k: int) -> CatObject:
    """``x[k]``; in the cluster category the shift equals tau on objects."""
    if not g.stable:
        raise ValueError("shift needs a stable translation quiver")
    i = g.obj(x).id
    if k >= 0:
        for _ in range(k):
            i = g.tau[i]
    else:
        for _ in range(-k):
            i = g.tau_inv_of(i)
    return g.obj(i)
