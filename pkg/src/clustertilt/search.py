"""Locate a tilting object whose endomorphism quiver matches a given quiver."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .ar_quiver import DynkinSpec, build_cluster_quiver
from .mesh import MeshCategory, build_mesh_category
from .quiver import QuiverGraph, quiver_isomorphic
from .tilting import TiltingObject, enumerate_tilting


@dataclass
class Match:
    rank: int
    mc: MeshCategory
    tilting: TiltingObject
    mapping: dict  # target vertex -> summand label


@lru_cache(maxsize=None)
def cluster_category(family: str, rank: int, orientation: str | None = None,
                     experimental: bool = False) -> MeshCategory:
    """Mesh category of C_Q; ``orientation`` None means the linear one 1 > 2 > ... > n."""
    if orientation is None:
        orientation = ",".join(f"{i}>{i + 1}" for i in range(1, rank))
    spec = DynkinSpec.from_orientation(family, rank, orientation, experimental=experimental)
    return build_mesh_category(build_cluster_quiver(spec))


def _signature(q: QuiverGraph) -> tuple:
    return len(q.vertices), q.n_arrows, tuple(sorted(
        (q.out_degree(v), q.in_degree(v)) for v in q.vertices))


def find_algebra(target: QuiverGraph, ranks, family: str = "A", jobs: int = 1) -> list[Match]:
    """First match per rank (in enumeration order); ranks with none are omitted."""
    found = []
    want = _signature(target)
    for n in ranks:
        if n != len(target.vertices):
            continue
        mc = cluster_category(family, n)
        for t in enumerate_tilting(mc, jobs=jobs):
            q = mc.gabriel_quiver(t)
            if _signature(q) != want:
                continue
            iso = quiver_isomorphic(target, q)
            if iso is not None:
                found.append(Match(n, mc, t, iso))
                break
    return found
