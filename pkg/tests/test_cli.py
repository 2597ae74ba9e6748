import json

import pytest
from click.testing import CliRunner

from cyclodmr import checks, cli, serialize
from cyclodmr.betti import GAElem, iso_W
from cyclodmr.crossed import z_gen
from cyclodmr.dmr import SolverObstruction
from cyclodmr.harmonic import SeriesY
from cyclodmr.series import Embedding, Tensor
from cyclodmr.transport import y_pm_generator


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    runner = CliRunner()

    def go(*args):
        return runner.invoke(cli.main, [str(a) for a in args])

    return go


def load(path):
    return json.loads(open(path, encoding="utf-8").read())


def coeff_of(doc, word):
    return next((t["coeff"] for t in doc["terms"] if t["word"] == word), "0")


def test_solve_anchor(run):
    r = run("solve", "--N", 1, "--D", 4, "--lambda", 1, "--report", "rep.json")
    assert r.exit_code == 0, r.output
    assert coeff_of(load("psi.json"), ["0", "g0"]) == "-1/24"
    rep = load("rep.json")
    assert rep["conditions"]["iii"] is True
    assert rep["values"]["iii"] == "-1/24"


def test_solve_trivial(run):
    r = run("solve", "--N", 1, "--D", 2, "--lambda", 0, "--out", "one.json")
    assert r.exit_code == 0, r.output
    assert load("one.json")["terms"] == [{"word": [], "coeff": "1"}]


def test_solve_difference_anchor(run):
    r = run("solve", "--N", 3, "--D", 3, "--lambda", 1, "--giota", 1, "--report", "rep.json")
    assert r.exit_code == 0, r.output
    assert load("rep.json")["values"]["iv"] == "1/2"


def test_dry_run_and_cap(run, monkeypatch):
    r = run("solve", "--N", 2, "--D", 3, "--dry-run")
    assert json.loads(r.output)["spanning_set"] == 27
    assert run("solve", "--N", 1, "--D", 9).exit_code == 2
    assert run("solve", "--N", 1, "--D", 7, "--max-degree", 7, "--dry-run").exit_code == 0
    monkeypatch.setenv("CYCLODMR_MAX_DEGREE", "8")
    assert run("solve", "--N", 1, "--D", 8, "--dry-run").exit_code == 0


def test_usage_errors(run):
    assert run("solve", "--N", 4, "--D", 2, "--giota", 2).exit_code == 2
    assert run("solve", "--N", 0, "--D", 2).exit_code == 2
    assert run("solve", "--N", 1, "--D", 2, "--lambda", "x").exit_code == 2
    assert run("solve", "--N", 1, "--D", 2, "--policy", "bogus").exit_code == 2


def test_obstruction_exit_code(run, monkeypatch):
    def boom(*a, **k):
        raise SolverObstruction(2)

    monkeypatch.setattr(cli, "dmr_solve", boom)
    r = run("solve", "--N", 1, "--D", 2)
    assert r.exit_code == 3
    assert "degree 2" in r.output


def test_verify_hopf(run):
    r = run("verify", "--suite", "hopf", "--N", 2, "--D", 4)
    assert r.exit_code == 0, r.output
    assert json.loads(r.output)["passed"]


def test_verify_independence(run):
    r = run("verify", "--suite", "independence", "--N", 1, "--D", 4, "--out", "v.json")
    assert r.exit_code == 0
    v = load("v.json")
    assert v["agree"] is True and v["degree"] == 4 and v["theorem"] == "betti_coproduct_independence"


def test_verify_filtration(run):
    r = run("verify", "--suite", "betti-filtration", "--N", 3, "--m", 3)
    assert r.exit_code == 0
    assert json.loads(r.output)["gr_dimensions"] == [3, 12, 48, 192]


def test_verify_failure_exit_code(run, monkeypatch):
    monkeypatch.setattr(checks, "kernel_suite", lambda N: {"sigma_round_trip": False})
    assert run("verify", "--suite", "kernel", "--N", 2).exit_code == 1


def write(obj, name):
    with open(name, "w", encoding="utf-8") as f:
        json.dump(serialize.dump(obj), f)
    return name


def test_coproduct_unit(run):
    write(GAElem.one(), "one.json")
    r = run("coproduct", "--kind", "M-B", "--N", 2, "--D", 3, "--input", "one.json")
    assert r.exit_code == 0, r.output
    t = serialize.load(json.loads(r.output))
    assert t.terms == {((), ()): 1}


def test_coproduct_z2(run):
    write(z_gen(2, 4, 2, 1), "z.json")
    r = run("coproduct", "--kind", "W-DR", "--N", 2, "--input", "z.json")
    assert r.exit_code == 0, r.output
    t = serialize.load(json.loads(r.output))
    assert t.terms == {
        (((2, 1),), ()): 1,
        ((), ((2, 1),)): 1,
        (((1, 0),), ((1, 1),)): 1,
        (((1, 1),), ((1, 0),)): 1,
    }


def test_coproduct_y2_plus(run):
    write(y_pm_generator(2, 1), "y.json")
    r = run("coproduct", "--kind", "W-B", "--N", 1, "--D", 4, "--input", "y.json")
    assert r.exit_code == 0, r.output
    t = serialize.load(json.loads(r.output))
    iota = Embedding(1, 1)
    y1, y2 = (iso_W(iota, y_pm_generator(k, 1), 4) for k in (1, 2))
    one = SeriesY.one(1, 4)
    assert t == Tensor.outer(y2, one) + Tensor.outer(one, y2) + Tensor.outer(y1, y1)


def test_coproduct_domain_errors(run):
    write(GAElem.letter(1) - 1, "x0.json")
    r = run("coproduct", "--kind", "W-B", "--N", 1, "--D", 3, "--input", "x0.json")
    assert r.exit_code == 2
    open("junk.json", "w").write("{")
    assert run("coproduct", "--kind", "harmonic", "--N", 1, "--input", "junk.json").exit_code == 2
    write(GAElem.one(), "one.json")
    assert run("coproduct", "--kind", "shuffle", "--N", 1, "--input", "one.json").exit_code == 2
