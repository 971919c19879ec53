import copy
import json
from importlib.resources import files

import pytest

from clustertilt.ar_quiver import TranslationQuiver
from clustertilt.cli import main, run_suite
from clustertilt.modcat import ModuleCategoryView
from clustertilt.search import cluster_category
from clustertilt.tilting import enumerate_tilting

A3 = ["--rank", "3", "--orientation", "1>2,2>3"]
DATA = files("clustertilt") / "data"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_tilting_commands(capsys):
    code, out = run(capsys, "tilting", "enumerate", *A3)
    assert code == 0 and len(out.splitlines()) == 14
    code, out = run(capsys, "tilting", "mutate", *A3, "--tilting", "3,2/3,1/2/3", "--at", "3")
    assert out.strip() == "1/2/3,2/3,2"
    code, out = run(capsys, "tilting", "complements", *A3, "--set", "1/2/3,2/3")
    assert out.split() == ["3", "2"]
    code, out = run(capsys, "tilting", "graph", *A3)
    assert out.startswith("# tilting=14 connected=True")


def test_modcat_pd_table(capsys, tmp_path):
    dotfile = tmp_path / "a.dot"
    code, out = run(capsys, "modcat", *A3, "--tilting", "3,1/2/3,1", "--pd-table", "--ar-dot", str(dotfile))
    assert code == 0 and "ind A (6)" in out
    assert "1/2\t100\t0\t0\t2/3" in out
    assert dotfile.read_text().startswith('digraph "modA"')


def test_verify_reports_and_exit(capsys, tmp_path):
    side = tmp_path / "r.json"
    code, out = run(capsys, "verify", "all", "--ranks", "1-3", "--all", "--json", str(side))
    assert code == 0
    assert out.splitlines()[-1].startswith("SUMMARY checks=")
    assert json.loads(side.read_text())["ok"] is True
    assert all(line.split()[0] in {"CHECK", "INFO", "SUMMARY"} for line in out.splitlines())


def test_verify_jobs_deterministic(capsys):
    _, one = run(capsys, "verify", "prop2", "--ranks", "3", "--all")
    _, four = run(capsys, "verify", "prop2", "--ranks", "3", "--all", "--jobs", "4")
    assert one == four


def test_negative_control_corrupted_tau():  # [TRIVIAL: sanity of the harness]
    mc0 = cluster_category("A", 3)
    g = mc0.quiver
    tau = dict(g.tau)
    tau[0], tau[1] = tau[1], tau[0]
    mc = copy.copy(mc0)
    mc.quiver = TranslationQuiver(g.objects, g.arrows, tau, g.slices, g.spec, True)
    failed = 0
    for t in enumerate_tilting(mc0):
        rep = run_suite("all", ModuleCategoryView(mc, t))
        failed += len(rep.failures)
        assert all(line.startswith(("CHECK", "INFO", "SUMMARY")) for line in rep.lines())
    assert failed > 0


def test_leftpart_and_slices(capsys, tmp_path):
    code, out = run(capsys, "leftpart", *A3, "--tilting", "3,1/2/3,1")
    assert "LA (0): {}" in out and "F: {1/2/3,3,1}" in out
    code, out = run(capsys, "slices", "enumerate", "--rank", "4", "--orientation", "linear",
                    "--tilting", "1/2/3/4,3/4,4,1")
    assert code == 0 and out.startswith("# slices=")


def test_oracle_command(capsys):
    code, out = run(capsys, "oracle", "--rank", "3", "--check")
    assert code == 0 and "SUMMARY checks=7 passed=7 failed=0" in out


def test_find_algebra_cycle(capsys):
    code, out = run(capsys, "find-algebra", str(DATA / "a3_cycle.quiver"), "--ranks", "3")
    assert code == 0
    assert out.splitlines()[1] == "T=1/2/3,3,1"  # [PAPER: the tilting object of the A_3 example]


def test_find_algebra_linear(capsys):  # [TRIVIAL: projective slice]
    code, out = run(capsys, "find-algebra", str(DATA / "a3_linear.quiver"), "--ranks", "3")
    assert code == 0 and out.splitlines()[1] == "T=1/2/3,2/3,3"


def test_find_algebra_no_match(capsys):
    code, _ = run(capsys, "find-algebra", str(DATA / "a3_cycle.quiver"), "--ranks", "2,4")
    assert code == 1


def test_dot_and_png(capsys, tmp_path):
    png = tmp_path / "c.png"
    code, out = run(capsys, "dot", "cluster", *A3, "--png", str(png))
    assert code == 0 and out.count("->") == 21
    assert png.read_bytes()[:4] == b"\x89PNG"
    _, again = run(capsys, "dot", "cluster", *A3)
    assert again == out
    code, out = run(capsys, "dot", "gabriel", *A3, "--tilting", "3,1/2/3,1")
    assert out.count("->") == 3
    for what in ("modcat",):
        png2 = tmp_path / "m.png"
        code, _ = run(capsys, "dot", what, *A3, "--tilting", "3,1/2/3,1", "--png", str(png2))
        assert code == 0 and png2.exists()


def test_usage_errors(capsys):
    with pytest.raises(SystemExit):
        main(["dot", "bogus", *A3])
    with pytest.raises(SystemExit):
        main(["tilting", "enumerate", "--rank", "3"])  # orientation must be explicit
    assert main(["modcat", *A3, "--tilting", "3,1/2,1"]) == 2


def test_mesh_dump_and_objects(capsys, tmp_path):
    out_file = tmp_path / "dump.txt"
    assert main(["mesh", "dump", *A3, "--out", str(out_file)]) == 0
    assert "hom 3 2/3 1" in out_file.read_text()
    code, out = run(capsys, "objects", "--quiver-file", str(DATA / "a3_linear.quiver"))
    assert code == 0 and "objects=9" in out


def test_experimental_flag(capsys):
    assert main(["tilting", "enumerate", "--type", "D", "--rank", "4", "--orientation", "1>2,3>2,4>2"]) == 2
    code, out = run(capsys, "tilting", "enumerate", "--type", "D", "--rank", "4",
                    "--orientation", "1>2,3>2,4>2", "--experimental")
    assert code == 0 and len(out.splitlines()) == 50  # [DERIVED: cluster number of D4]
