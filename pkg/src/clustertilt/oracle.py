"""Diagonals of an (n+3)-gon as an independent model of type A cluster categories.

Nothing here touches morphism spaces: crossings, triangulations and flips
are pure combinatorics.  ``match_mesh`` is the only bridge; it finds a
translation-quiver isomorphism first and only then compares Ext-support
with crossings.
"""

from __future__ import annotations

from itertools import combinations

Diagonal = tuple  # (i, j) with i < j


class OracleError(ValueError):
    pass


def diagonals(n: int) -> list[Diagonal]:
    if n < 1:
        raise OracleError("rank must be positive")
    m = n + 3
    return [(i, j) for i in range(m) for j in range(i + 2, m) if (i, j) != (0, m - 1)]


def crossing(d1: Diagonal, d2: Diagonal) -> bool:
    (a, b), (c, d) = sorted(d1), sorted(d2)
    return a < c < b < d or c < a < d < b


def enumerate_triangulations(n: int) -> list[frozenset]:
    diags = diagonals(n)
    found = []

    def grow(chosen, start):
        if len(chosen) == n:
            found.append(frozenset(chosen))
            return
        for k in range(start, len(diags)):
            d = diags[k]
            if not any(crossing(d, e) for e in chosen):
                grow(chosen + [d], k + 1)

    grow([], 0)
    return found


def _is_side(m: int, i: int, j: int) -> bool:
    return (j - i) % m in (1, m - 1)


def flip(t, d: Diagonal, n: int) -> frozenset:
    """Replace d by the other diagonal of the quadrilateral formed by its two triangles."""
    m = n + 3
    i, j = sorted(d)
    if _is_side(m, i, j):
        raise OracleError(f"{d} is a side of the polygon")
    if (i, j) not in t:
        raise OracleError(f"{d} is not in the triangulation")
    edges = set(t) | {(k, (k + 1) % m) for k in range(m)} | {((k + 1) % m, k) for k in range(m)}
    edges |= {(b, a) for a, b in t}

    def apex(side):
        for k in side:
            if (i, k) in edges and (k, j) in edges:
                return k
        raise OracleError(f"no triangle on one side of {d}")

    k1 = apex(range(i + 1, j))
    k2 = apex([k for k in range(m) if not i <= k <= j])
    new = tuple(sorted((k1, k2)))
    return frozenset(set(t) - {(i, j)} | {new})


def flip_graph(n: int) -> dict:
    tris = enumerate_triangulations(n)
    return {t: sorted((flip(t, d, n) for d in t), key=sorted) for t in tris}


def rotate(d: Diagonal, n: int, k: int = 1) -> Diagonal:
    m = n + 3
    return tuple(sorted(((d[0] + k) % m, (d[1] + k) % m)))


def polygon_arrows(n: int, step: int = 1) -> set:
    """d -> d' when d' pivots one endpoint of d by ``step`` around the polygon."""
    m = n + 3
    diags = set(diagonals(n))
    arrows = set()
    for i, j in diags:
        for a, b in ((i, (j + step) % m), ((i + step) % m, j)):
            e = tuple(sorted((a, b)))
            if e in diags and e != (i, j):
                arrows.add(((i, j), e))
    return arrows


def _orbit(step, x) -> list:
    out = [x]
    y = step(x)
    while y != x:
        out.append(y)
        y = step(y)
    return out


def match_quivers(g, n: int, step: int) -> list[dict]:
    """All translation-quiver isomorphisms from g to the polygon model with
    arrows pivoting by ``step`` and tau = rotation by ``-step``."""
    diags = diagonals(n)
    if len(g.ids()) != len(diags):
        return []
    arrows = polygon_arrows(n, step)
    succ = {d: {e for a, e in arrows if a == d} for d in diags}
    pred = {d: {a for a, e in arrows if e == d} for d in diags}
    rot = lambda d: rotate(d, n, -step)  # noqa: E731
    gsucc = {x: {y for y, _ in g.successors(x)} for x in g.ids()}
    gpred = {x: {y for y, _ in g.predecessors(x)} for x in g.ids()}
    tau = g.tau
    if sorted(tau.get(x, -1) for x in g.ids()) != sorted(g.ids()):
        return []  # tau is not a permutation

    # BFS order over tau-orbits, so every new orbit touches an assigned one
    ids = list(g.ids())
    orbit_of = {}
    for x in ids:
        if x not in orbit_of:
            orb = _orbit(lambda z: tau[z], x)
            for z in orb:
                orbit_of[z] = orb
    order, seen = [], set()
    for root in ids:
        if root in seen:
            continue
        todo = [root]
        while todo:
            x = todo.pop(0)
            if x in seen:
                continue
            orb = orbit_of[x]
            seen.update(orb)
            order.append(orb[0])
            for z in orb:
                todo.extend(sorted(gsucc[z] | gpred[z]))

    results = []
    phi: dict = {}
    used: set = set()

    def consistent(x, d):
        if len(gsucc[x]) != len(succ[d]) or len(gpred[x]) != len(pred[d]):
            return False
        for y in gsucc[x]:
            if y in phi and phi[y] not in succ[d]:
                return False
        for y in gpred[x]:
            if y in phi and phi[y] not in pred[d]:
                return False
        return True

    def assign(k):
        if k == len(order):
            results.append(dict(phi))
            return
        x0 = order[k]
        orb = orbit_of[x0]
        for d0 in diags:
            if d0 in used:
                continue
            dorb = _orbit(rot, d0)
            if len(dorb) != len(orb) or any(e in used for e in dorb):
                continue
            pairs = list(zip(orb, dorb))
            ok = True
            for x, d in pairs:
                phi[x] = d
            for x, d in pairs:
                if not consistent(x, d):
                    ok = False
                    break
            if ok:
                used.update(dorb)
                assign(k + 1)
                used.difference_update(dorb)
            for x, _ in pairs:
                del phi[x]

    assign(0)
    return results


def match_mesh(g, ext1=None) -> dict | None:
    """A bijection objects -> diagonals under which Ext^1 != 0 iff crossing.

    ``ext1(x, y)`` defaults to the mesh category of g; any failure to build
    it, or to match the quivers, is reported as None.
    """
    n = g.spec.rank
    if ext1 is None:
        from .mesh import MeshError, build_mesh_category
        try:
            mc = build_mesh_category(g)
        except MeshError:
            return None
        ext1 = mc.ext1_dim
    ids = list(g.ids())
    for step in (1, -1):
        for phi in match_quivers(g, n, step):
            if all((ext1(x, y) > 0) == crossing(phi[x], phi[y])
                   for x, y in combinations(ids, 2)) and all(ext1(x, x) == 0 for x in ids):
                return phi
    return None
