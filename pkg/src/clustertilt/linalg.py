"""Exact linear algebra over the rationals.

Everything here works on plain sequences of numbers (ints or
:class:`fractions.Fraction`); no floating point is ever involved.
Matrices are small (a few hundred entries at most), so clarity wins
over clever sparse tricks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple  # tuple of Fraction


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of Fraction

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [tuple(Fraction(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, tuple(
            self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]


def _as_rows(m) -> tuple[list[list[Fraction]], int]:
    if isinstance(m, RatMatrix):
        return [list(r) for r in m.to_rows()], m.cols
    rows = [[Fraction(x) for x in r] for r in m]
    return rows, (len(rows[0]) if rows else 0)


def _integer_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    """Scale each row to a primitive integer vector (same row space)."""
    out = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        ir = [int(x * den) for x in fr]
        g = 0
        for x in ir:
            g = gcd(g, x)
        if g > 1:
            ir = [x // g for x in ir]
        out.append(ir)
    return out


def echelon_integer(rows: Iterable[Sequence], ncols: int) -> list[list[int]]:
    """Fraction-free row echelon form; zero rows dropped.

    Each elimination step is ``r <- p*r - a*pivot_row`` followed by
    division by the row gcd, so entries stay small integers.
    """
    work = [r for r in _integer_rows(rows) if any(r)]
    result = []
    col = 0
    while work and col < ncols:
        piv = next((r for r in work if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        work.remove(piv)
        p = piv[col]
        nxt = []
        for r in work:
            a = r[col]
            if a:
                r = [p * x - a * y for x, y in zip(r, piv)]
                g = 0
                for x in r:
                    g = gcd(g, x)
                if g == 0:
                    continue
                if g > 1:
                    r = [x // g for x in r]
            nxt.append(r)
        work = nxt
        result.append(piv)
        col += 1
    return result


def rank(m) -> int:
    rows, ncols = _as_rows(m)
    return len(echelon_integer(rows, ncols))


def rref(m, column_order: Sequence[int] | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q.

    ``column_order`` lets the caller choose which columns are tried as
    pivots first; returned pivots are actual column indices.
    """
    rows, ncols = _as_rows(m)
    order = list(range(ncols)) if column_order is None else list(column_order)
    rows = [r for r in rows if any(r)]
    pivots: list[int] = []
    r0 = 0
    for c in order:
        if r0 >= len(rows):
            break
        k = next((i for i in range(r0, len(rows)) if rows[i][c] != 0), None)
        if k is None:
            continue
        rows[r0], rows[k] = rows[k], rows[r0]
        inv = 1 / rows[r0][c]
        rows[r0] = [x * inv for x in rows[r0]]
        for i in range(len(rows)):
            if i != r0 and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r0])]
        pivots.append(c)
        r0 += 1
    return rows[:r0], pivots


def kernel_basis(m) -> list[Vector]:
    """Basis of the right null space ``{v : m v = 0}``."""
    rows, ncols = _as_rows(m)
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def _check_ambient(vectors: Sequence[Sequence], dim: int | None = None) -> int | None:
    for v in vectors:
        if dim is None:
            dim = len(v)
        elif len(v) != dim:
            raise DimensionMismatch(f"vectors of lengths {dim} and {len(v)} mixed")
    return dim


def subspace_dim(generators: Sequence[Sequence]) -> int:
    dim = _check_ambient(generators)
    if not generators:
        return 0
    return len(echelon_integer(generators, dim))


def subspace_sum_dim(u: Sequence[Sequence], v: Sequence[Sequence]) -> int:
    _check_ambient(list(u) + list(v))
    return subspace_dim(list(u) + list(v))


def subspace_intersection_dim(u: Sequence[Sequence], v: Sequence[Sequence]) -> int:
    return subspace_dim(u) + subspace_dim(v) - subspace_sum_dim(u, v)


def in_span(vector: Sequence, generators: Sequence[Sequence]) -> bool:
    return subspace_dim(list(generators) + [vector]) == subspace_dim(generators)


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)
