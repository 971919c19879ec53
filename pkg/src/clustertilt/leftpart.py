"""Left and right parts, Ext-injectives, canonical tilting modules and slices.

Paths in mod A are chains of nonzero maps, so predecessor/successor
closures run on the digraph ``x -> y iff Hom_A(x, y) != 0``.  Sectional
paths and slices use the AR-quiver of A (the induced subquiver on ind A).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .modcat import ModuleCategoryView
from .quiver import QuiverGraph, quiver_isomorphic, sink_reflection
from .report import Report, fmt_set
from .tilting import TiltingObject, complements


class LeftPartError(RuntimeError):
    pass


def _closure(adj: dict, seeds) -> set:
    seen = set(seeds)
    todo = list(seen)
    while todo:
        for y in adj[todo.pop()]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def successors(v: ModuleCategoryView, seeds) -> set:
    return _closure(v.hom_support[0], [v.key(s) for s in seeds])


def predecessors(v: ModuleCategoryView, seeds) -> set:
    return _closure(v.hom_support[1], [v.key(s) for s in seeds])


def _ordered(v: ModuleCategoryView, xs) -> tuple:
    xs = set(xs)
    return tuple(x for x in v.indA if x in xs)


@dataclass
class LeftPartReport:
    LA: tuple
    RA: tuple
    LA_cor: tuple | None  # via "not a successor of an injective"; None when hereditary
    RA_cor: tuple | None
    components: list
    E: tuple
    E1: tuple
    E2: tuple
    F: tuple
    L: tuple
    U: tuple
    hereditary: bool
    notes: list = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.components)


def left_part(v: ModuleCategoryView) -> tuple[tuple, tuple]:
    """L_A and R_A from the definition (pd/id of all predecessors/successors)."""
    bad_pd = [x for x in v.indA if not v.pd_le_one(x)]
    bad_id = [x for x in v.indA if not v.id_le_one(x)]
    LA = set(v.indA) - successors(v, bad_pd)
    RA = set(v.indA) - predecessors(v, bad_id)
    return _ordered(v, LA), _ordered(v, RA)


def left_part_cor(v: ModuleCategoryView) -> tuple[tuple, tuple]:
    """L_A and R_A as non-successors of injectives / non-predecessors of projectives.

    Only valid for non-hereditary cluster-tilted algebras.
    """
    LA = set(v.indA) - successors(v, v.injectives)
    RA = set(v.indA) - predecessors(v, v.projectives)
    return _ordered(v, LA), _ordered(v, RA)


def left_part_lifted(v: ModuleCategoryView) -> tuple:
    """L_T computed in the cluster category: objects outside add tau T reached from
    no tau^2 T by a chain of maps none of which factors through add tau T."""
    mc = v.mc
    removed = set(v.tauT)
    objs = [x for x in mc.objects if x not in removed]
    adj = {x: [y for y in objs if y != x
               and mc.hom_dim(x, y) > mc.factor_subspace_dim(x, y, v.tauT)] for x in objs}
    reached = _closure(adj, v.tau2T)
    return tuple(x for x in objs if x not in reached)


def _ar_adj(v: ModuleCategoryView) -> tuple[dict, dict]:
    out = {x: [] for x in v.indA}
    inn = {x: [] for x in v.indA}
    for s, t, _ in v.ar_arrows():
        out[s].append(t)
        inn[t].append(s)
    return out, inn


def has_sectional_path(v: ModuleCategoryView, sources, target) -> bool:
    """A sectional path (possibly trivial) of AR arrows from some source to target."""
    out, _ = _ar_adj(v)
    sources = set(sources)
    if target in sources:
        return True
    seen = set()
    todo = deque((None, s) for s in sources)
    while todo:
        prev, cur = todo.popleft()
        for nxt in out[cur]:
            if prev is not None and v.tau_A(nxt) == prev:
                continue
            if nxt == target:
                return True
            if (cur, nxt) not in seen:
                seen.add((cur, nxt))
                todo.append((cur, nxt))
    return False


def ext_injectives(v: ModuleCategoryView, LA) -> tuple[tuple, tuple, tuple]:
    LA = set(LA)
    E = [x for x in v.indA if x in LA and (v.tau_inv_A(x) is None or v.tau_inv_A(x) not in LA)]
    after_inj = successors(v, v.injectives)
    E1 = [x for x in E if x in after_inj]
    outside = [p for p in v.projectives if p not in LA]
    E2 = [x for x in E if x not in E1 and v.tau_inv_A(x) is not None
          and has_sectional_path(v, outside, v.tau_inv_A(x))]
    lost = [x for x in E if x not in E1 and x not in E2]
    if lost:
        raise LeftPartError(f"Ext-injectives in neither class: {v.labels(lost)}")
    return tuple(E), tuple(E1), tuple(E2)


def analyze(v: ModuleCategoryView) -> LeftPartReport:
    LA, RA = left_part(v)
    hereditary = v.is_hereditary
    if hereditary:
        LA_cor = RA_cor = None
        if set(LA) != set(v.indA):
            raise LeftPartError("hereditary algebra with L_A != ind A")
    else:
        LA_cor, RA_cor = left_part_cor(v)
        if set(LA) != set(LA_cor) or set(RA) != set(RA_cor):
            raise LeftPartError(
                f"left part mismatch: def={v.labels(LA)} cor={v.labels(LA_cor)}; "
                f"right def={v.labels(RA)} cor={v.labels(RA_cor)}")
    E, E1, E2 = ext_injectives(v, LA)
    F = tuple(p for p in v.projectives if p not in set(LA))
    L = _ordered(v, set(E) | set(F))
    U = tuple(sorted(set(E1) | {v.g.tau_inv_of(x) for x in E2} | set(F)))
    return LeftPartReport(LA, RA, LA_cor, RA_cor, v.components(LA), E, E1, E2, F, L, U, hereditary)


def canonical_modules(v: ModuleCategoryView, lp: LeftPartReport | None = None) -> tuple:
    """(F, L, U) and whether L and U pass the tilting-module test."""
    lp = lp or analyze(v)
    return lp.F, lp.L, lp.U, v.is_tilting_module(lp.L), v.is_tilting_module(lp.U)


# ---- slices -------------------------------------------------------------

def sigma_P(v: ModuleCategoryView, LA=None) -> frozenset:
    LA = set(LA if LA is not None else left_part(v)[0])
    if not LA:
        raise LeftPartError("L_A is empty: the quiver of A has no sink")
    return frozenset(p for p in v.projectives if p in LA)


def _induced_arrows(v: ModuleCategoryView, s) -> list[tuple]:
    s = set(s)
    return [(a, b) for a, b, _ in v.ar_arrows() if a in s and b in s]


def slice_sources(v: ModuleCategoryView, s) -> list:
    targets = {b for _, b in _induced_arrows(v, s)}
    return [x for x in _ordered(v, s) if x not in targets]


def slice_sinks(v: ModuleCategoryView, s) -> list:
    starts = {a for a, _ in _induced_arrows(v, s)}
    return [x for x in _ordered(v, s) if x not in starts]


def slice_exchange_step(v: ModuleCategoryView, s, x, LA=None) -> frozenset:
    """Replace the source x by tau^-1 x, which must stay inside L_A."""
    LA = set(LA if LA is not None else left_part(v)[0])
    x = v.key(x)
    if x not in s or x not in slice_sources(v, s):
        raise LeftPartError(f"{v.label(x)} is not a source of the slice")
    y = v.tau_inv_A(x)
    if y is None or y not in LA:
        raise LeftPartError(f"tau^-1 {v.label(x)} leaves L_A")
    return frozenset(set(s) - {x} | {y})


def slice_exchange_back(v: ModuleCategoryView, s, x) -> frozenset:
    """Replace a non-projective sink x by tau x (inverse of the forward step)."""
    x = v.key(x)
    if x not in s or x not in slice_sinks(v, s):
        raise LeftPartError(f"{v.label(x)} is not a sink of the slice")
    y = v.tau_A(x)
    if y is None:
        raise LeftPartError(f"{v.label(x)} is projective")
    return frozenset(set(s) - {x} | {y})


def _tau_orbit_in(v: ModuleCategoryView, x, within: set) -> set:
    orbit = {x}
    for step in (v.tau_A, v.tau_inv_A):
        y = x
        while True:
            y = step(y)
            if y is None or y not in within or y in orbit:
                break
            orbit.add(y)
    return orbit


def is_slice(v: ModuleCategoryView, s, LA=None) -> bool:
    """Section axioms per component of L_A, plus one vertex per tau-orbit."""
    LA = set(LA if LA is not None else left_part(v)[0])
    s = set(s)
    if not s or not s <= LA:
        return False
    out, _ = _ar_adj(v)
    for comp in v.components(LA):
        comp = set(comp)
        part = s & comp
        if not part:
            return False
        orbits = {}
        for x in comp:
            orbits.setdefault(frozenset(_tau_orbit_in(v, x, comp)), []).append(x)
        for orb in orbits:
            if len(orb & part) != 1:
                return False
        if len(v.components(part)) != 1:
            return False
    # acyclic and convex in the AR-quiver of A
    reach = {x: _closure(out, out[x]) for x in v.indA}
    for x in s:
        if x in reach[x]:
            return False
        for y in s:
            if y in reach[x]:
                between = {z for z in reach[x] if y in reach[z] or z == y}
                if not between <= s:
                    return False
    return True


def t_sigma(v: ModuleCategoryView, s) -> int:
    """Sum of t_i where S_i = tau^-t_i P_i for a projective P_i."""
    total = 0
    for x in s:
        t, y = 0, x
        while y not in v.projectives:
            y = v.tau_A(y)
            if y is None:
                raise LeftPartError(f"{v.label(x)} is not in the tau-orbit of a projective")
            t += 1
        total += t
    return total


@dataclass
class SliceEnumeration:
    start: frozenset
    slices: list  # BFS order
    parent: dict  # slice -> (previous slice, exchanged source)

    def path(self, s) -> list:
        """Exchanged sources, in order, leading from the start to s."""
        steps = []
        while s != self.start:
            s, x = self.parent[s]
            steps.append(x)
        return steps[::-1]


def enumerate_slices(v: ModuleCategoryView, LA=None) -> SliceEnumeration:
    LA = tuple(LA if LA is not None else left_part(v)[0])
    if not LA:
        return SliceEnumeration(frozenset(), [], {})
    start = sigma_P(v, LA)
    order, parent = [start], {}
    seen = {start}
    todo = deque([start])
    LAs = set(LA)
    while todo:
        s = todo.popleft()
        for x in slice_sources(v, s):
            y = v.tau_inv_A(x)
            if y is None or y not in LAs:
                continue
            nxt = slice_exchange_step(v, s, x, LAs)
            if nxt not in seen:
                seen.add(nxt)
                parent[nxt] = (s, x)
                order.append(nxt)
                todo.append(nxt)
    return SliceEnumeration(start, order, parent)


# ---- verification --------------------------------------------------------

def _inst(v: ModuleCategoryView, extra: str = "") -> str:
    base = "T=" + fmt_set(v.labels(v.t))
    return base + (";" + extra if extra else "")


def _reflect_along(v: ModuleCategoryView, q: QuiverGraph, steps) -> tuple[QuiverGraph, str]:
    """Sink reflections at each exchanged vertex, relabelling x -> tau^-1 x."""
    for x in steps:
        lab = v.label(x)
        if lab not in q.sinks():
            return q, f"{lab} is not a sink"
        q = sink_reflection(q, lab).relabel({lab: v.label(v.g.tau_inv_of(x))})
    return q, ""


def verify_theorem3(v: ModuleCategoryView, s, steps, lp: LeftPartReport) -> Report:
    rep = Report()
    mc = v.mc
    ts = tuple(sorted(set(s) | set(lp.F)))
    inst = _inst(v, "Sigma=" + fmt_set(v.labels(_ordered(v, s))))
    rep.check("theorem3.a", inst, v.is_tilting_module(ts))
    bad = [(x, y) for x in ts for y in ts if mc.factor_subspace_dim(x, y, v.tauT)]
    rep.check("theorem3.b", inst, not bad,
              ",".join(f"{v.label(x)}>{v.label(y)}" for x, y in bad[:3]))
    t = t_sigma(v, s)
    q_sigma = mc.gabriel_quiver(ts)
    q, why = _reflect_along(v, mc.gabriel_quiver(v.t), steps)
    same = not why and len(steps) == t and quiver_isomorphic(q, q_sigma) is not None
    rep.check("theorem3.c", inst, same, why or f"t={t} steps={len(steps)}")
    return rep


def _lr_sets(v_other: ModuleCategoryView) -> tuple[frozenset, frozenset]:
    lp_LA, lp_RA = left_part(v_other)
    return frozenset(lp_LA), frozenset(lp_RA)


def _view(v: ModuleCategoryView, summands) -> ModuleCategoryView:
    return ModuleCategoryView(v.mc, TiltingObject(tuple(sorted(summands))))


def continuation_to_U(v: ModuleCategoryView, lp: LeftPartReport, rep: Report | None = None) -> list:
    """Exchange the E-part of L one summand at a time until it becomes tau^-1 E.

    Each step picks (in object order) a summand x still from E whose whole
    mesh towards tau^-1 x lies in the other summands, so the exchange is an
    almost split one.  Returns the exchanged summands in order.
    """
    g = v.g
    current = set(lp.L)
    pending = [x for x in v.indA if x in set(lp.E)]
    steps = []
    while pending:
        pick = None
        for x in pending:
            rest = current - {x}
            mids = [y for y, _ in g.successors(x)]
            if all(y in rest for y in mids):
                pick = x
                break
        if pick is None:
            raise LeftPartError(f"no almost split exchange available from {v.labels(sorted(current))}")
        rest = current - {pick}
        a, b = complements(v.mc, rest)
        other = b if a == pick else a
        if rep is not None:
            rep.check("remark.ase", _inst(v, v.label(pick)), other == g.tau_inv_of(pick),
                      f"complement={v.label(other)}")
        current = rest | {g.tau_inv_of(pick)}
        pending.remove(pick)
        steps.append(pick)
    return steps


def verify_propU(v: ModuleCategoryView, lp: LeftPartReport | None = None,
                 slices: SliceEnumeration | None = None) -> Report:
    rep = Report()
    lp = lp or analyze(v)
    mc = v.mc
    inst = _inst(v)
    U = tuple(sorted(lp.U))
    rep.check("propU.a", inst, v.is_tilting_module(U))
    bad = [(x, y) for x in U for y in U if mc.factor_subspace_dim(x, y, v.tauT)]
    rep.check("propU.b", inst, not bad)
    # Lemma: an irreducible map out of a source of E ends in E or a projective
    out, inn = _ar_adj(v)
    Eset = set(lp.E)
    for x in lp.E:
        if not any(y in Eset for y in inn[x]):
            ok = all(y in Eset or y in v.projectives for y in out[x])
            rep.check("source.lemma", _inst(v, v.label(x)), ok)
    if not lp.LA:
        rep.check("propU.c", inst, set(U) == set(v.t), "L_A empty so U = A")
        return rep
    slices = slices or enumerate_slices(v, lp.LA)
    e_slice = frozenset(lp.E)
    if e_slice not in slices.parent and e_slice != slices.start:
        rep.check("propU.c", inst, False, "E not reachable from Sigma_P")
        return rep
    steps = slices.path(e_slice) + continuation_to_U(v, lp, rep)
    q, why = _reflect_along(v, mc.gabriel_quiver(v.t), steps)
    ok = not why and len(steps) == len(lp.LA) and quiver_isomorphic(q, mc.gabriel_quiver(U)) is not None
    rep.check("propU.c", inst, ok, why or f"reflections={len(steps)} |LA|={len(lp.LA)}")
    vU = _view(v, U)
    LU, _ = _lr_sets(vU)
    rep.check("propU.LU_empty", inst, not LU, f"|L_U|={len(LU)}")
    rep.check("propU.no_sink", inst, not mc.gabriel_quiver(U).sinks())
    return rep


def verify_counts(v: ModuleCategoryView, lp: LeftPartReport | None = None,
                  slices: SliceEnumeration | None = None) -> Report:
    """Left/right part bookkeeping along every exchange path, computed in
    the views of the tilting objects T_Sigma."""
    rep = Report()
    lp = lp or analyze(v)
    if not lp.LA:
        return rep
    slices = slices or enumerate_slices(v, lp.LA)
    F = set(lp.F)
    LT, RT = frozenset(lp.LA), frozenset(lp.RA)
    parts = {}
    for s in slices.slices:
        parts[s] = _lr_sets(_view(v, set(s) | F))
    for s in slices.slices:
        L, R = parts[s]
        t = t_sigma(v, s)
        inst = _inst(v, "Sigma=" + fmt_set(v.labels(_ordered(v, s))))
        rep.check("corlara.a", inst, len(L) == len(LT) - t, f"|L|={len(L)} |L_T|={len(LT)} t={t}")
        rep.check("corlara.b", inst, len(R) == len(RT) + t, f"|R|={len(R)} |R_T|={len(RT)} t={t}")
        if s in slices.parent:
            prev, x = slices.parent[s]
            Lp, Rp = parts[prev]
            rep.check("lara.a", inst, L == Lp - {x}, f"S1={v.label(x)}")
            rep.check("lara.b", inst, R == Rp | {v.g.tau[x]}, f"S1={v.label(x)}")
            rep.check("lara.sum", inst, len(L) + len(R) == len(Lp) + len(Rp))
    U = set(lp.U)
    LU, RU = _lr_sets(_view(v, U))
    rep.check("corlara.U", _inst(v), not LU and len(RU) == len(RT) + len(LT),
              f"|L_U|={len(LU)} |R_U|={len(RU)} |R_T|={len(RT)} |L_T|={len(LT)}")
    return rep


def structural_checks(v: ModuleCategoryView, lp: LeftPartReport | None = None) -> Report:
    rep = Report()
    lp = lp or analyze(v)
    inst = _inst(v)
    if not lp.hereditary:
        for comp in v.components():
            cs = set(comp)
            has_p = any(p in cs for p in v.projectives)
            has_i = any(i in cs for i in v.injectives)
            rep.check("nsr", _inst(v, v.label(comp[0])), has_p == has_i,
                      f"projectives={has_p} injectives={has_i}")
        rep.check("cor.E1", inst, not lp.E1, fmt_set(v.labels(lp.E1)))
        lifted = left_part_lifted(v)
        rep.check("lemma.LT", inst, set(lifted) == set(lp.LA),
                  f"C-level={fmt_set(v.labels(lifted))}")
    LAs = set(lp.LA)
    _, inn = _ar_adj(v)
    bad = [(m, p) for p in v.projectives if p in LAs for m in inn[p] if m not in v.projectives]
    rep.check("hered.support", inst, not bad,
              ",".join(f"{v.label(m)}>{v.label(p)}" for m, p in bad[:3]))
    has_sink = bool(v.mc.gabriel_quiver(v.t).sinks())
    rep.check("sink.criterion", inst, bool(lp.LA) == has_sink, f"LA={len(lp.LA)} sink={has_sink}")
    F, L, U, l_ok, u_ok = canonical_modules(v, lp)
    rep.check("act.L", inst, l_ok, fmt_set(v.labels(L)))
    rep.check("act.U", inst, u_ok, fmt_set(v.labels(U)))
    rep.info("laura", inst, "true (hereditary or representation-finite)")
    return rep


def verify_section5(v: ModuleCategoryView) -> Report:
    """Everything about left parts and slices for one non-hereditary view."""
    rep = Report()
    lp = analyze(v)
    rep.check("leftpart.agree", _inst(v), True, f"|LA|={len(lp.LA)} |RA|={len(lp.RA)}")
    rep.extend(structural_checks(v, lp))
    slices = enumerate_slices(v, lp.LA)
    for s in slices.slices:
        rep.check("slice.axioms", _inst(v, fmt_set(v.labels(_ordered(v, s)))), is_slice(v, s, lp.LA))
        rep.extend(verify_theorem3(v, s, slices.path(s), lp))
    if lp.LA:
        rep.check("slice.E", _inst(v), frozenset(lp.E) in set(slices.slices))
        rep.check("slice.tE", _inst(v), t_sigma(v, lp.E) == len(lp.LA) - len(slices.start))
    rep.extend(verify_propU(v, lp, slices))
    rep.extend(verify_counts(v, lp, slices))
    return rep
