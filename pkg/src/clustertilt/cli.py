"""Command-line entry point.

Every command builds one cluster category (or, for suites run with
``--ranks``, one per rank), prints plain text, and exits 1 when a check
fails.  Output is byte-identical across runs and ``--jobs`` values.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .ar_quiver import DynkinError, DynkinSpec, build_cluster_quiver
from .mesh import MeshCategory, MeshError, build_mesh_category
from .modcat import (ModuleCategoryView, structure_report, verify_prop2,
                     verify_theorem1)
from .quiver import QuiverError, QuiverGraph, quiver_isomorphic
from .report import Report, fmt_set
from .tilting import (TiltingError, TiltingObject, complements, enumerate_tilting,
                      exchange_graph, is_connected, mutate, resolve_tilting)
from . import leftpart as lpm
from . import oracle as orc

SUITES = ("theorem1", "prop2", "theorem3", "propU", "corlara", "structural", "section5", "all")


class UsageError(Exception):
    pass


# ---- configuration --------------------------------------------------------

def _linear(n: int) -> str:
    return ",".join(f"{i}>{i + 1}" for i in range(1, n))


def spec_from_args(args, rank: int | None = None) -> DynkinSpec:
    if args.quiver_file:
        return DynkinSpec.from_file(args.quiver_file, experimental=args.experimental)
    n = rank if rank is not None else args.rank
    if n is None:
        raise UsageError("give --rank (with --orientation) or --quiver-file")
    orientation = args.orientation
    if orientation is None:
        if rank is None:
            raise UsageError("give --orientation explicitly (\"linear\" means 1>2>...>n)")
        orientation = "linear"
    if orientation == "linear":
        orientation = _linear(n)
    return DynkinSpec.from_orientation(args.type, n, orientation, experimental=args.experimental)


def category(args, rank: int | None = None) -> MeshCategory:
    return build_mesh_category(build_cluster_quiver(spec_from_args(args, rank)))


def tilting_from_args(mc: MeshCategory, args) -> TiltingObject:
    sel = args.tilting
    if not sel:
        raise UsageError("--tilting is required")
    if sel.startswith("search-quiver "):
        target = QuiverGraph.from_file(sel.split(None, 1)[1])
        for t in enumerate_tilting(mc, jobs=args.jobs):
            if quiver_isomorphic(target, mc.gabriel_quiver(t)) is not None:
                return t
        raise TiltingError("no tilting object with that Gabriel quiver")
    return resolve_tilting(mc, sel)


def emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def emit_report(args, rep: Report) -> int:
    emit(args, rep.text())
    if args.json:
        Path(args.json).write_text(rep.to_json() + "\n")
    return 0 if rep.ok else 1


def _parse_ranks(s: str) -> list[int]:
    out = []
    for part in s.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


# ---- commands -------------------------------------------------------------

def cmd_objects(args) -> int:
    mc = category(args)
    g = mc.quiver
    lines = [f"# {g.spec.name} objects={len(g)} tau-order={g.tau_order()}"]
    for x in g.ids():
        succ = ",".join(g.label(y) for y, _ in g.successors(x))
        lines.append(f"{g.label(x)}\ttau={g.label(g.tau[x])}\tarrows-to={{{succ}}}")
    emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_tilting(args) -> int:
    mc = category(args)
    if args.action == "enumerate":
        ts = enumerate_tilting(mc, jobs=args.jobs)
        emit(args, "".join(",".join(t.labels(mc)) + "\n" for t in ts))
    elif args.action == "mutate":
        if not args.at:
            raise UsageError("mutate needs --at <label>")
        t = tilting_from_args(mc, args)
        emit(args, ",".join(mutate(mc, t, args.at).labels(mc)) + "\n")
    elif args.action == "complements":
        if not args.set:
            raise UsageError("complements needs --set \"<labels>\"")
        almost = [s.strip() for s in args.set.split(",") if s.strip()]
        a, b = complements(mc, almost)
        emit(args, f"{mc.quiver.label(a)}\n{mc.quiver.label(b)}\n")
    elif args.action == "graph":
        adj = exchange_graph(mc)
        lines = [f"# tilting={len(adj)} connected={is_connected(adj)}"]
        for t in sorted(adj, key=lambda t: t.summands):
            for u in adj[t]:
                if t.summands < u.summands:
                    lines.append(f"{','.join(t.labels(mc))} -- {','.join(u.labels(mc))}")
        emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_modcat(args) -> int:
    mc = category(args)
    v = ModuleCategoryView(mc, tilting_from_args(mc, args))
    lines = [f"T={fmt_set(v.labels(v.t))}",
             f"ind A ({len(v.indA)}): {fmt_set(v.labels(v.indA))}",
             f"projectives: {fmt_set(v.labels(v.projectives))}",
             f"injectives: {fmt_set(v.labels(v.injectives))}",
             f"dim A = {v.algebra_dim()}",
             f"hereditary = {v.is_hereditary}"]
    if args.pd_table:
        lines.append("module\tdimvec\tpd<=1\tid<=1\ttauA")
        for x in v.indA:
            t = v.tau_A(x)
            lines.append(f"{v.label(x)}\t{''.join(map(str, v.a_dimvec(x)))}\t"
                         f"{int(v.pd_le_one(x))}\t{int(v.id_le_one(x))}\t{v.label(t) if t is not None else '-'}")
    emit(args, "\n".join(lines) + "\n")
    if args.ar_dot:
        from .dot import module_ar_dot
        Path(args.ar_dot).write_text(module_ar_dot(v))
    if args.png:
        from .plotting import render_module_category
        render_module_category(v, args.png)
    return 0


def _theorem3(v: ModuleCategoryView) -> Report:
    rep = Report()
    lp = lpm.analyze(v)
    slices = lpm.enumerate_slices(v, lp.LA)
    for s in slices.slices:
        rep.check("slice.axioms", lpm._inst(v, fmt_set(v.labels(lpm._ordered(v, s)))),
                  lpm.is_slice(v, s, lp.LA))
        rep.extend(lpm.verify_theorem3(v, s, slices.path(s), lp))
    return rep


def _structural(v: ModuleCategoryView) -> Report:
    return lpm.structural_checks(v).extend(structure_report(v))


def _all(v: ModuleCategoryView) -> Report:
    rep = verify_theorem1(v).extend(verify_prop2(v)).extend(structure_report(v))
    if not v.is_hereditary:
        rep.extend(lpm.verify_section5(v))
    return rep


_LEFT_SUITES = {
    "theorem3": _theorem3,
    "propU": lambda v: lpm.verify_propU(v),
    "corlara": lambda v: lpm.verify_counts(v),
    "structural": _structural,
    "section5": lpm.verify_section5,
}


def run_suite(suite: str, v: ModuleCategoryView) -> Report:
    """One suite on one view; an exception becomes a FAIL line, not a crash."""
    try:
        return _run_suite(suite, v)
    except Exception as e:  # noqa: BLE001 - reported, never swallowed
        rep = Report()
        rep.check("suite.error", f"{suite};T={','.join(v.labels(v.t))}", False,
                  f"{type(e).__name__}:{e}".replace("\n", " "))
        return rep


def _run_suite(suite: str, v: ModuleCategoryView) -> Report:
    if suite == "theorem1":
        return verify_theorem1(v)
    if suite == "prop2":
        return verify_prop2(v)
    if suite == "all":
        return _all(v)
    if v.is_hereditary:
        rep = Report()
        rep.info("skip", lpm._inst(v), "hereditary: left-part suites need a non-hereditary algebra")
        return rep
    return _LEFT_SUITES[suite](v)


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if args.ranks:
        cats = [category(args, n) for n in _parse_ranks(args.ranks)]
    else:
        cats = [category(args)]
    views = []
    for mc in cats:
        if args.all:
            views.extend(ModuleCategoryView(mc, t) for t in enumerate_tilting(mc, jobs=args.jobs))
        else:
            views.append(ModuleCategoryView(mc, tilting_from_args(mc, args)))

    def run(v):
        return run_suite(args.suite, v)

    if args.jobs > 1:
        with ThreadPoolExecutor(args.jobs) as ex:
            reports = list(ex.map(run, views))
    else:
        reports = [run(v) for v in views]
    total = Report()
    for r in reports:
        total.extend(r)
    return emit_report(args, total)


def _fmt(v, xs) -> str:
    return fmt_set(v.labels(lpm._ordered(v, xs)))


def cmd_leftpart(args) -> int:
    mc = category(args)
    v = ModuleCategoryView(mc, tilting_from_args(mc, args))
    lp = lpm.analyze(v)
    lines = [f"T={fmt_set(v.labels(v.t))}",
             f"hereditary = {lp.hereditary}",
             f"LA ({len(lp.LA)}): {_fmt(v, lp.LA)}",
             f"RA ({len(lp.RA)}): {_fmt(v, lp.RA)}",
             f"components ({lp.m}): " + " ".join(_fmt(v, c) for c in lp.components),
             f"E: {_fmt(v, lp.E)}", f"E1: {_fmt(v, lp.E1)}", f"E2: {_fmt(v, lp.E2)}",
             f"F: {_fmt(v, lp.F)}", f"L: {_fmt(v, lp.L)}", f"U: {_fmt(v, lp.U)}"]
    if lp.LA:
        lines.append(f"Sigma_P: {_fmt(v, lpm.sigma_P(v, lp.LA))}")
    emit(args, "\n".join(lines) + "\n")
    if args.dot:
        from .dot import module_ar_dot
        Path(args.dot).write_text(module_ar_dot(v, lp))
    if args.png:
        from .plotting import render_module_category
        render_module_category(v, args.png, lp)
    return 0


def cmd_slices(args) -> int:
    mc = category(args)
    v = ModuleCategoryView(mc, tilting_from_args(mc, args))
    lp = lpm.analyze(v)
    se = lpm.enumerate_slices(v, lp.LA)
    lines = [f"# slices={len(se.slices)}"]
    for s in se.slices:
        path = ",".join(v.label(x) for x in se.path(s)) or "-"
        lines.append(f"{_fmt(v, s)}\tt={lpm.t_sigma(v, s)}\texchanged={path}")
    emit(args, "\n".join(lines) + "\n")
    return 0


def oracle_report(n: int) -> Report:
    """Polygon model against the mesh category of linear A_n."""
    rep = Report()
    inst = f"A{n}"
    g = build_cluster_quiver(DynkinSpec.linear_a(n))
    diags = orc.diagonals(n)
    rep.check("oracle.objects", inst, len(diags) == len(g) == n * (n + 3) // 2,
              f"diagonals={len(diags)} objects={len(g)}")
    mc = build_mesh_category(g)
    phi = orc.match_mesh(g, mc.ext1_dim)
    rep.check("oracle.match", inst, phi is not None)
    tris = orc.enumerate_triangulations(n)
    ts = enumerate_tilting(mc)
    rep.check("oracle.count", inst, len(tris) == len(ts), f"triangulations={len(tris)} tilting={len(ts)}")
    if phi is None:
        return rep
    moved = {frozenset(phi[x] for x in t) for t in ts}
    rep.check("oracle.transport", inst, moved == set(tris))
    flips = orc.flip_graph(n)
    rep.check("oracle.flip_regular", inst, all(len(set(v)) == n for v in flips.values()))
    rep.check("oracle.flip_connected", inst, is_connected({t: flips[t] for t in flips}))
    back = {d: x for x, d in phi.items()}
    same = True
    for t in ts:
        for x in t:
            u = mutate(mc, t, x)
            f = orc.flip(frozenset(phi[y] for y in t), phi[x], n)
            same &= f == frozenset(phi[y] for y in u)
    rep.check("oracle.mutation_is_flip", inst, same)
    rep.info("oracle.bijection", inst,
             " ".join(f"{g.label(back[d])}={d[0]}-{d[1]}" for d in sorted(back)))
    return rep


def cmd_oracle(args) -> int:
    if args.rank is None:
        raise UsageError("oracle needs --rank")
    if not args.check:
        emit(args, "".join(f"{i} {j}\n" for i, j in orc.diagonals(args.rank)))
        return 0
    return emit_report(args, oracle_report(args.rank))


def cmd_find_algebra(args) -> int:
    from .search import find_algebra
    target = QuiverGraph.from_file(args.target)
    ranks = _parse_ranks(args.ranks)
    found = find_algebra(target, ranks, family=args.type, jobs=args.jobs)
    if not found:
        sys.stderr.write(f"no tilting object in ranks {ranks} has a matching Gabriel quiver\n")
        return 1
    lines = []
    for m in found:
        lines.append(f"rank {m.rank}")
        lines.append("T=" + ",".join(m.tilting.labels(m.mc)))
        lines.extend(f"  {k} -> {m.mapping[k]}" for k in target.vertices)
    tried = [n for n in ranks if n != len(target.vertices)]
    if tried:
        lines.append(f"# skipped ranks {tried}: vertex count differs from {len(target.vertices)}")
    emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_dot(args) -> int:
    from . import dot
    mc = category(args)
    if args.what == "cluster":
        hl = tilting_from_args(mc, args) if args.tilting else ()
        text = dot.translation_quiver_dot(mc.quiver, highlight=hl)
        if args.png:
            from .plotting import render_translation_quiver
            render_translation_quiver(mc.quiver, args.png, hl)
    elif args.what == "modcat":
        v = ModuleCategoryView(mc, tilting_from_args(mc, args))
        lp = lpm.analyze(v)
        text = dot.module_ar_dot(v, lp)
        if args.png:
            from .plotting import render_module_category
            render_module_category(v, args.png, lp)
    elif args.what == "gabriel":
        q = mc.gabriel_quiver(tilting_from_args(mc, args))
        text = dot.quiver_dot(q)
        if args.png:
            from .plotting import render_quiver
            render_quiver(q, args.png)
    else:
        raise UsageError(f"unknown selector {args.what!r}; use cluster, modcat or gabriel")
    emit(args, text)
    return 0


def cmd_mesh(args) -> int:
    if args.action != "dump":
        raise UsageError("mesh supports only: dump")
    emit(args, category(args).dump())
    return 0


# ---- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", default="A", help="Dynkin family (D and E need --experimental)")
    common.add_argument("--rank", type=int)
    common.add_argument("--orientation", help='e.g. "1>2,2<3", or "linear"')
    common.add_argument("--quiver-file", help="plain-text quiver: vertex/arrow lines")
    common.add_argument("--tilting", help='labels "a,b,c", "projective-slice" or "search-quiver FILE"')
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--experimental", action="store_true")
    common.add_argument("--out", help="write the main output here instead of stdout")
    common.add_argument("--json", help="JSON sidecar for verification reports")
    common.add_argument("--png", help="also render a PNG with matplotlib")

    p = argparse.ArgumentParser(prog="clustertilt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("objects", parents=[common], help="list objects of the cluster category")
    s.set_defaults(func=cmd_objects)

    s = sub.add_parser("tilting", parents=[common], help="tilting objects")
    s.add_argument("action", choices=["enumerate", "mutate", "complements", "graph"])
    s.add_argument("--at")
    s.add_argument("--set")
    s.set_defaults(func=cmd_tilting)

    s = sub.add_parser("modcat", parents=[common], help="module category of End(T)^op")
    s.add_argument("--ar-dot")
    s.add_argument("--pd-table", action="store_true")
    s.set_defaults(func=cmd_modcat)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", help="|".join(SUITES))
    s.add_argument("--all", action="store_true", help="every tilting object")
    s.add_argument("--ranks", help="e.g. 1-4 (linear orientation)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("leftpart", parents=[common], help="left part and canonical modules")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_leftpart)

    s = sub.add_parser("slices", parents=[common], help="L_A-slices")
    s.add_argument("action", choices=["enumerate"])
    s.set_defaults(func=cmd_slices)

    s = sub.add_parser("oracle", parents=[common], help="polygon cross-check (type A)")
    s.add_argument("--check", action="store_true")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("find-algebra", parents=[common], help="search tilting objects by Gabriel quiver")
    s.add_argument("target")
    s.add_argument("--ranks", required=True)
    s.set_defaults(func=cmd_find_algebra)

    s = sub.add_parser("dot", parents=[common], help="Graphviz DOT output")
    s.add_argument("what", help="cluster | modcat | gabriel")
    s.set_defaults(func=cmd_dot)

    s = sub.add_parser("mesh", parents=[common], help="Hom and composition tables")
    s.add_argument("action", choices=["dump"])
    s.set_defaults(func=cmd_mesh)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(str(e))
    except (DynkinError, QuiverError, TiltingError, MeshError, KeyError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
