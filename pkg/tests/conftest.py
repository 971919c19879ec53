import pytest

from clustertilt.ar_quiver import DynkinSpec, build_cluster_quiver
from clustertilt.mesh import build_mesh_category
from clustertilt.modcat import ModuleCategoryView
from clustertilt.search import cluster_category
from clustertilt.tilting import resolve_tilting


def euler_form(spec, a, b) -> int:
    s = sum(x * y for x, y in zip(a, b))
    for i, j in spec.arrows:
        s -= a[spec.index(i)] * b[spec.index(j)]
    return s


def euler_hom(g, x, y) -> int:
    """Hom in C_H from the Euler form of H alone: Hom_D(X, Y) + Hom_D(X, F Y),
    F = tau^-1 [1].  Shares nothing with the mesh construction."""
    sp = g.spec
    X, Y = g.objects[x], g.objects[y]
    inj = set(g.slices["injective"])
    proj = g.slices["projective"]

    def pdim(v):
        return g.objects[proj[sp.index(v)]].dimvec

    def hom(a, b):
        return max(euler_form(sp, a, b), 0)

    def ext(a, b):
        return max(-euler_form(sp, a, b), 0)

    tinv = g.tau_inv_of
    if X.is_module and Y.is_module:
        r = hom(X.dimvec, Y.dimvec)
        if y not in inj:
            r += ext(X.dimvec, g.objects[tinv(y)].dimvec)
        return r
    if not X.is_module and Y.is_module:
        return 0 if y in inj else hom(pdim(X.vertex), g.objects[tinv(y)].dimvec)
    if X.is_module and not Y.is_module:
        return ext(X.dimvec, pdim(Y.vertex))
    return hom(pdim(X.vertex), pdim(Y.vertex))


@pytest.fixture(scope="session")
def cat():
    """cat(n) = mesh category of linear A_n, cached for the session."""
    return lambda n: cluster_category("A", n)


@pytest.fixture(scope="session")
def a3(cat):
    return cat(3)


@pytest.fixture(scope="session")
def a3_view(a3):
    return ModuleCategoryView(a3, resolve_tilting(a3, "3,1/2/3,1"))


def mesh_for(family, rank, orientation, experimental=False):
    spec = DynkinSpec.from_orientation(family, rank, orientation, experimental=experimental)
    return build_mesh_category(build_cluster_quiver(spec))


# ---- acceptance summary: one line per criterion ------------------------------

_CRITERIA: dict = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    k = int(report.nodeid.rsplit("test_criterion_", 1)[1].split("_", 1)[0])
    _CRITERIA[k] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        outcome, secs = _CRITERIA[k]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"CRITERION {k} {verdict} ({secs:.2f} s)")
