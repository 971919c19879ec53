"""Rigid sets, tilting objects, complements, mutation and approximations."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import linalg
from .mesh import MeshCategory


class TiltingError(ValueError):
    pass


@dataclass(frozen=True)
class TiltingObject:
    summands: tuple  # sorted object ids

    @classmethod
    def of(cls, mc: MeshCategory, objs) -> "TiltingObject":
        ids = [mc._id(o) for o in objs]
        if len(set(ids)) != len(ids):
            raise TiltingError("repeated summand")
        return cls(tuple(sorted(ids)))

    def labels(self, mc: MeshCategory) -> list[str]:
        return [mc.quiver.label(i) for i in self.summands]

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __contains__(self, x):
        return x in self.summands


def resolve_tilting(mc: MeshCategory, selector) -> TiltingObject:
    """Accept a TiltingObject, an iterable of object keys, a comma separated
    label string, or ``"projective-slice"``."""
    if isinstance(selector, TiltingObject):
        t = selector
    elif isinstance(selector, str):
        if selector.strip() == "projective-slice":
            t = TiltingObject.of(mc, mc.quiver.slices["projective"])
        else:
            t = TiltingObject.of(mc, [s.strip() for s in selector.split(",") if s.strip()])
    else:
        t = TiltingObject.of(mc, selector)
    n = mc.quiver.spec.rank
    if len(t) != n or not is_rigid(mc, t):
        raise TiltingError(f"{t.labels(mc)} is not a tilting object")
    return t


def _compatible(mc: MeshCategory, x: int, y: int) -> bool:
    return mc.ext1_dim(x, y) == 0 and mc.ext1_dim(y, x) == 0


def is_rigid(mc: MeshCategory, s) -> bool:
    ids = [mc._id(x) for x in s]
    for x in ids:
        for y in ids:
            if mc.ext1_dim(x, y) or mc.ext1_dim(y, x):
                return False
    return True


def _compat_graph(mc: MeshCategory) -> tuple[list[int], dict]:
    verts = [x for x in mc.objects if mc.ext1_dim(x, x) == 0]
    nbrs = {x: frozenset(y for y in verts if y != x and _compatible(mc, x, y)) for x in verts}
    return verts, nbrs


def _cliques_from(root: int, later: frozenset, earlier: frozenset, nbrs: dict) -> list:
    found = []

    def expand(r, p, x):
        if not p and not x:
            found.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(p & nbrs[u]))
        for v in sorted(p - nbrs[pivot]):
            expand(r | {v}, p & nbrs[v], x & nbrs[v])
            p = p - {v}
            x = x | {v}

    expand({root}, later & nbrs[root], earlier & nbrs[root])
    return found


def enumerate_tilting(mc: MeshCategory, jobs: int = 1) -> list[TiltingObject]:
    """All tilting objects, via maximal cliques of the Ext-compatibility graph.

    Each maximal rigid set is checked to have exactly ``rank`` elements.
    """
    n = mc.quiver.spec.rank
    verts, nbrs = _compat_graph(mc)
    tasks = [(v, frozenset(verts[i + 1:]), frozenset(verts[:i])) for i, v in enumerate(verts)]

    def run(task):
        return _cliques_from(*task, nbrs)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(run, tasks))
    else:
        parts = [run(t) for t in tasks]
    result = sorted({c for part in parts for c in part})
    for c in result:
        if len(c) != n:
            labels = [mc.quiver.label(i) for i in c]
            raise TiltingError(f"maximal rigid set {labels} has {len(c)} elements, expected {n}")
    return [TiltingObject(c) for c in result]


def complements(mc: MeshCategory, almost) -> tuple[int, int]:
    ids = sorted({mc._id(x) for x in almost})
    n = mc.quiver.spec.rank
    if len(ids) != n - 1 or not is_rigid(mc, ids):
        raise TiltingError("not an almost complete tilting object")
    found = [x for x in mc.objects
             if x not in ids and mc.ext1_dim(x, x) == 0
             and all(_compatible(mc, x, y) for y in ids)]
    if len(found) != 2:
        raise TiltingError(f"not an almost complete tilting object ({len(found)} complements)")
    return found[0], found[1]


def mutate(mc: MeshCategory, t: TiltingObject, at) -> TiltingObject:
    """Replace the summand ``at`` (object key) by its other complement."""
    x = mc._id(at)
    if x not in t:
        raise TiltingError(f"{mc.quiver.label(x)} is not a summand")
    rest = [y for y in t if y != x]
    a, b = complements(mc, rest)
    other = b if a == x else a
    return TiltingObject(tuple(sorted(rest + [other])))


def exchange_graph(mc: MeshCategory, tiltings=None) -> dict:
    """Adjacency of the mutation graph on tilting objects."""
    tiltings = tiltings if tiltings is not None else enumerate_tilting(mc)
    return {t: sorted({mutate(mc, t, x) for x in t}, key=lambda s: s.summands) for t in tiltings}


def is_connected(adj: dict) -> bool:
    if not adj:
        return True
    start = next(iter(adj))
    seen = {start}
    todo = [start]
    while todo:
        for u in adj[todo.pop()]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return len(seen) == len(adj)


@dataclass(frozen=True)
class Approximation:
    target: int
    multiplicities: dict  # cof object id -> d_i
    components: tuple  # Morphism cof_i -> target (right) or target -> cof_i (left)

    def middle(self) -> list[int]:
        return [x for x, d in self.multiplicities.items() for _ in range(d)]


def _top_representatives(mc: MeshCategory, x: int, y: int, rad_part: list) -> list[int]:
    """Basis indices of Hom(x, y) completing ``rad_part`` to a spanning set."""
    chosen = []
    span = list(rad_part)
    r = linalg.subspace_dim(span) if span else 0
    for i in range(mc.hom_dim(x, y)):
        v = mc.basis_morphism(x, y, i).coeffs
        if linalg.subspace_dim(span + [v]) > r:
            span.append(v)
            r += 1
            chosen.append(i)
    return chosen


def minimal_right_approx(mc: MeshCategory, m, cof) -> Approximation:
    """Minimal right add(cof)-approximation B -> m, verified after construction."""
    m = mc._id(m)
    cof = sorted({mc._id(c) for c in cof})
    mult, comps = {}, []
    for c in cof:
        rad = mc.composites(c, m, cof, rad_first=True)
        chosen = _top_representatives(mc, c, m, rad)
        mult[c] = len(chosen)
        comps.extend(mc.basis_morphism(c, m, i) for i in chosen)
    approx = Approximation(m, mult, tuple(comps))
    for c in cof:
        images = []
        for f in comps:
            for j in range(mc.hom_dim(c, f.source)):
                images.append(mc.compose(f, mc.basis_morphism(c, f.source, j)).coeffs)
        d = mc.hom_dim(c, m)
        if d and linalg.subspace_dim(images) != d:
            raise TiltingError(f"right approximation of {mc.quiver.label(m)} fails at {mc.quiver.label(c)}")
    return approx


def minimal_left_approx(mc: MeshCategory, m, cof) -> Approximation:
    """Minimal left add(cof)-approximation m -> B*, verified after construction."""
    m = mc._id(m)
    cof = sorted({mc._id(c) for c in cof})
    mult, comps = {}, []
    for c in cof:
        rad = mc.composites(m, c, cof, rad_second=True)
        chosen = _top_representatives(mc, m, c, rad)
        mult[c] = len(chosen)
        comps.extend(mc.basis_morphism(m, c, i) for i in chosen)
    approx = Approximation(m, mult, tuple(comps))
    for c in cof:
        images = []
        for f in comps:
            for j in range(mc.hom_dim(f.target, c)):
                images.append(mc.compose(mc.basis_morphism(f.target, c, j), f).coeffs)
        d = mc.hom_dim(m, c)
        if d and linalg.subspace_dim(images) != d:
            raise TiltingError(f"left approximation of {mc.quiver.label(m)} fails at {mc.quiver.label(c)}")
    return approx


def almost_split_exchanges(mc: MeshCategory, t: TiltingObject) -> list[tuple[int, int, bool]]:
    """Summands M whose mesh towards tau^-1 M (or from tau M) lies in T minus M.

    Returns (M, predicted complement, prediction correct) for every such M.
    """
    g = mc.quiver
    out = []
    for x in t:
        rest = [y for y in t if y != x]
        a, b = complements(mc, rest)
        other = b if a == x else a
        succ = [y for y, _ in g.successors(x)]
        if succ and all(y in rest for y in succ):
            out.append((x, g.tau_inv_of(x), other == g.tau_inv_of(x)))
        pred = [y for y, _ in g.predecessors(x)]
        if pred and all(y in rest for y in pred):
            out.append((x, g.tau_of(x), other == g.tau_of(x)))
    return out

