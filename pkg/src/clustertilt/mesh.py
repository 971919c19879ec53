"""Morphism spaces of the cluster category as a mesh category.

For a fixed source ``x`` the graded pieces ``V_l(y)`` of ``Hom(x, y)`` are
built one path length at a time:

    V_l(y) = (sum over arrows a: z -> y of V_{l-1}(z)) / mesh relations,

where the mesh relations in degree ``l`` ending at ``y`` are the mesh
element at ``y`` precomposed with a basis of ``V_{l-2}(tau y)``.  Ideal
elements with the mesh in the middle are already zero in ``V_{l-1}``, so
nothing else has to be divided out.  Every basis element is a path, and the
lexicographically least surviving paths are kept.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .ar_quiver import CatObject, TranslationQuiver
from .quiver import QuiverGraph

ZERO = Fraction(0)
ONE = Fraction(1)


class MeshError(RuntimeError):
    pass


@dataclass(frozen=True)
class Arrow:
    index: int
    source: int
    target: int


@dataclass(frozen=True)
class Morphism:
    source: int
    target: int
    coeffs: tuple

    def is_zero(self) -> bool:
        return not any(self.coeffs)


class _Piece:
    """One graded piece V_l(y) for a fixed source."""

    __slots__ = ("paths", "gen_index", "proj")

    def __init__(self, paths, gen_index, proj):
        self.paths = paths  # basis paths (tuples of arrow indices)
        self.gen_index = gen_index  # (arrow, basis index of V_{l-1}(z)) -> row in proj
        self.proj = proj  # rows: coordinates of each generator in the basis

    @property
    def dim(self):
        return len(self.paths)


class MeshCategory:
    def __init__(self, quiver: TranslationQuiver):
        self.quiver = quiver
        self.objects = quiver.ids()
        self.arrows: list[Arrow] = []
        for s, t, m in quiver.arrows:
            for _ in range(m):
                self.arrows.append(Arrow(len(self.arrows), s, t))
        self._into = {i: [] for i in self.objects}
        for a in self.arrows:
            self._into[a.target].append(a)
        self._sigma = self._pair_meshes()
        self._pieces: dict[int, list[dict[int, _Piece]]] = {}
        self._basis: dict[tuple, list] = {}
        for x in self.objects:
            self._build_source(x)

    # ---- construction -------------------------------------------------
    def _pair_meshes(self) -> dict:
        """sigma(a) for a: m -> y is the matching arrow tau(y) -> m."""
        sigma = {}
        tau = self.quiver.tau
        for y in self.objects:
            ty = tau.get(y)
            if ty is None:
                raise MeshError(f"tau undefined at {self.quiver.label(y)}: quiver is not stable")
            used: dict = {}
            for a in self._into[y]:
                partners = [b for b in self.arrows if b.source == ty and b.target == a.source]
                k = used.get(a.source, 0)
                if k >= len(partners):
                    raise MeshError(f"mesh at {self.quiver.label(y)} is not symmetric")
                sigma[a.index] = partners[k].index
                used[a.source] = k + 1
            out_of_ty = sum(1 for b in self.arrows if b.source == ty)
            if out_of_ty != len(self._into[y]):
                raise MeshError(f"mesh at {self.quiver.label(y)} is not symmetric")
        return sigma

    def _build_source(self, x: int) -> None:
        levels: list[dict[int, _Piece]] = [{x: _Piece([()], {}, [])}]
        limit = len(self.objects) ** 2
        while True:
            ell = len(levels)
            if ell > limit:
                raise MeshError(f"no vanishing degree from {self.quiver.label(x)} within {limit} steps")
            prev = levels[-1]
            level: dict[int, _Piece] = {}
            for y in self.objects:
                piece = self._build_piece(levels, y, prev)
                if piece is not None:
                    level[y] = piece
            if not any(p.dim for p in level.values()):
                break
            levels.append(level)
        self._pieces[x] = levels
        for y in self.objects:
            basis = []
            for ell, level in enumerate(levels):
                piece = level.get(y)
                if piece is None:
                    continue
                for k, path in enumerate(piece.paths):
                    basis.append((ell, k, path))
            self._basis[(x, y)] = basis

    def _build_piece(self, levels, y, prev):
        gens = []
        for a in self._into[y]:
            lower = prev.get(a.source)
            if lower is None:
                continue
            for b, path in enumerate(lower.paths):
                gens.append((path + (a.index,), a.index, b))
        if not gens:
            return None
        gens.sort()
        gen_index = {(a, b): i for i, (_, a, b) in enumerate(gens)}
        relations = []
        ell = len(levels)
        if ell >= 2:
            ty = self.quiver.tau[y]
            below = levels[ell - 2].get(ty)
            if below is not None:
                for p in range(below.dim):
                    rel = [ZERO] * len(gens)
                    unit = tuple(ONE if i == p else ZERO for i in range(below.dim))
                    for a in self._into[y]:
                        c = self._sigma[a.index]
                        w = _post(levels[ell - 1].get(a.source), c, unit)
                        for b, coeff in enumerate(w):
                            if coeff:
                                rel[gen_index[(a.index, b)]] += coeff
                    if any(rel):
                        relations.append(rel)
        n = len(gens)
        if relations:
            red, pivots = linalg.rref(relations, column_order=range(n - 1, -1, -1))
        else:
            red, pivots = [], []
        pivot_row = dict(zip(pivots, red))
        keep = [i for i in range(n) if i not in pivot_row]
        pos = {i: k for k, i in enumerate(keep)}
        proj = []
        for i in range(n):
            if i in pos:
                proj.append(tuple(ONE if k == pos[i] else ZERO for k in range(len(keep))))
            else:
                row = pivot_row[i]
                proj.append(tuple(-row[j] for j in keep))
        return _Piece([gens[i][0] for i in keep], gen_index, proj)

    def _piece(self, x: int, ell: int, y: int):
        levels = self._pieces[x]
        return levels[ell].get(y) if ell < len(levels) else None

    # ---- queries ------------------------------------------------------
    def _id(self, x) -> int:
        if isinstance(x, int):
            return x
        return self.quiver.obj(x).id

    def basis(self, x, y) -> list:
        """Basis of Hom(x, y) as (degree, index in degree, path) triples."""
        return self._basis[(self._id(x), self._id(y))]

    def hom_dim(self, x, y) -> int:
        return len(self.basis(x, y))

    def rad_degree(self, x, y) -> list[int]:
        return [ell for ell, _, _ in self.basis(x, y)]

    def ext1_dim(self, x, y) -> int:
        """dim Ext^1(x, y) = dim Hom(x, tau y)."""
        y = self._id(y)
        return self.hom_dim(x, self.quiver.tau[y])

    def identity(self, x) -> Morphism:
        x = self._id(x)
        return Morphism(x, x, tuple(ONE if ell == 0 else ZERO for ell, _, _ in self.basis(x, x)))

    def zero(self, x, y) -> Morphism:
        x, y = self._id(x), self._id(y)
        return Morphism(x, y, (ZERO,) * self.hom_dim(x, y))

    def basis_morphism(self, x, y, i: int) -> Morphism:
        x, y = self._id(x), self._id(y)
        d = self.hom_dim(x, y)
        return Morphism(x, y, tuple(ONE if k == i else ZERO for k in range(d)))

    def path_morphism(self, x, arrows: list[int]) -> Morphism:
        """The residue class of an explicit path of arrow indices starting at x."""
        x = self._id(x)
        vec, ell, cur = (ONE,), 0, x
        for a in arrows:
            arr = self.arrows[a]
            if arr.source != cur:
                raise MeshError("arrows do not form a path")
            vec = _post(self._piece(x, ell + 1, arr.target), a, vec)
            ell += 1
            cur = arr.target
            if not any(vec):
                return self.zero(x, cur)
        return Morphism(x, cur, self._embed(x, cur, ell, vec))

    def _embed(self, x, y, ell, vec) -> tuple:
        out = []
        for e, k, _ in self.basis(x, y):
            out.append(vec[k] if e == ell and k < len(vec) else ZERO)
        return tuple(out)

    @lru_cache(maxsize=None)
    def structure_constants(self, x: int, y: int, z: int) -> tuple:
        """table[i][j] = coefficients of (basis_i of Hom(y,z)) o (basis_j of Hom(x,y))."""
        bx = self.basis(x, y)
        by = self.basis(y, z)
        if not bx or not by:
            return tuple(tuple(() for _ in bx) for _ in by)
        levels = self._pieces[x]
        dz = self.hom_dim(x, z)
        table = []
        for _, _, path in by:
            row = []
            for ell, k, _ in bx:
                piece = levels[ell][y]
                vec = tuple(ONE if i == k else ZERO for i in range(piece.dim))
                e = ell
                for a in path:
                    vec = _post(self._piece(x, e + 1, self.arrows[a].target), a, vec)
                    e += 1
                    if not any(vec):
                        vec = ()
                        break
                row.append(self._embed(x, z, e, vec) if vec else (ZERO,) * dz)
            table.append(tuple(row))
        return tuple(table)

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        """f o g for g: x -> y and f: y -> z."""
        if g.target != f.source:
            raise MeshError(
                f"cannot compose: {self.quiver.label(g.target)} != {self.quiver.label(f.source)}")
        x, y, z = g.source, g.target, f.target
        table = self.structure_constants(x, y, z)
        acc = [ZERO] * self.hom_dim(x, z)
        for i, fi in enumerate(f.coeffs):
            if not fi:
                continue
            for j, gj in enumerate(g.coeffs):
                if not gj:
                    continue
                for k, c in enumerate(table[i][j]):
                    if c:
                        acc[k] += fi * gj * c
        return Morphism(x, z, tuple(acc))

    def composites(self, x, y, through, rad_first=False, rad_second=False) -> list:
        """Vectors in Hom(x,y) of all basis composites x -> s -> y, s in ``through``.

        ``rad_first``/``rad_second`` restrict the factors to radical
        (positive degree) basis elements.
        """
        x, y = self._id(x), self._id(y)
        out = []
        for s in through:
            s = self._id(s)
            first = self.basis(x, s)
            second = self.basis(s, y)
            if not first or not second:
                continue
            table = self.structure_constants(x, s, y)
            for i, (ei, _, _) in enumerate(second):
                if rad_second and ei == 0:
                    continue
                for j, (ej, _, _) in enumerate(first):
                    if rad_first and ej == 0:
                        continue
                    v = table[i][j]
                    if any(v):
                        out.append(v)
        return out

    def factor_subspace_dim(self, x, y, through) -> int:
        return linalg.subspace_dim(self.composites(x, y, through))

    def factor_subspace(self, x, y, through) -> list:
        return self.composites(x, y, through)

    def radical_vectors(self, x, y) -> list:
        d = self.hom_dim(x, y)
        return [tuple(ONE if k == i else ZERO for k in range(d))
                for i, (ell, _, _) in enumerate(self.basis(x, y)) if ell > 0]

    def gabriel_quiver(self, summands, ideal_through=()) -> QuiverGraph:
        """Quiver of End(S)^op (arrows j -> i for irreducible maps S_i -> S_j).

        ``ideal_through`` names objects whose factoring maps are divided out,
        giving the quiver of End over the quotient category instead.
        """
        ids = [self._id(s) for s in summands]
        if len(set(ids)) != len(ids):
            raise MeshError("duplicate summands")
        labels = [self.quiver.label(i) for i in ids]
        arrows = {}
        for a, si in enumerate(ids):
            for b, sj in enumerate(ids):
                rad = self.radical_vectors(si, sj)
                if not rad:
                    continue
                ideal = self.composites(si, sj, ideal_through) if ideal_through else []
                rad2 = self.composites(si, sj, ids, rad_first=True, rad_second=True)
                n = (linalg.subspace_dim(rad + ideal) - linalg.subspace_dim(rad2 + ideal))
                if n:
                    arrows[(labels[b], labels[a])] = n
        return QuiverGraph.build(labels, Counter(arrows))

    def dump(self) -> str:
        """Deterministic text table: hom lines then nonzero composition triples."""
        lab = self.quiver.label
        lines = []
        for x in self.objects:
            for y in self.objects:
                lines.append(f"hom {lab(x)} {lab(y)} {self.hom_dim(x, y)}")
        for x in self.objects:
            for y in self.objects:
                if not self.hom_dim(x, y):
                    continue
                for z in self.objects:
                    if not self.hom_dim(y, z):
                        continue
                    table = self.structure_constants(x, y, z)
                    for i, row in enumerate(table):
                        for j, v in enumerate(row):
                            if any(v):
                                coeffs = " ".join(str(c) for c in v)
                                lines.append(f"comp {lab(x)} {lab(y)} {lab(z)} {i} {j} {coeffs}")
        return "\n".join(lines) + "\n"


def _post(nxt: "_Piece | None", arrow: int, vec) -> tuple:
    """Postcompose a vector of V_l(z) with ``arrow``: z -> y, landing in ``nxt`` = V_{l+1}(y)."""
    if nxt is None:
        return ()
    out = [ZERO] * nxt.dim
    for b, c in enumerate(vec):
        if not c:
            continue
        row = nxt.gen_index.get((arrow, b))
        if row is None:
            continue
        for k, v in enumerate(nxt.proj[row]):
            if v:
                out[k] += c * v
    return tuple(out)


def build_mesh_category(g: TranslationQuiver) -> MeshCategory:
    return MeshCategory(g)
