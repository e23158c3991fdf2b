import json

import pytest
from click.testing import CliRunner

from deformkr.cli import main, parse_sigma
from deformkr.errors import InputError
from deformkr.symfn import RootMultiset
from deformkr.webs import HomologyTable, LinkDiagram


def run(*args):
    r = CliRunner().invoke(main, list(args))
    if "--out" in args or r.exit_code not in (0, 1):
        return r, None
    return r, json.loads(r.stdout)


# grass -----------------------------------------------------------------------------------

def test_grass_example():
    r, rep = run("grass", "--n", "5", "--a", "2", "--sigma", "0,0,1,1,1")
    assert r.exit_code == 0, r.output
    assert rep["dim"] == 10 and [s["dim"] for s in rep["summands"]] == [1, 6, 3]
    assert rep["iso_verified"] is True and len(rep["basis"]) == 10


def test_grass_lee_case():
    r, rep = run("grass", "--n", "2", "--a", "1", "--sigma", "1,-1")
    assert r.exit_code == 0
    assert rep["dim"] == 2 and [s["dim"] for s in rep["summands"]] == [1, 1]


@pytest.mark.parametrize("args", [["--n", "3", "--a", "1", "--sigma", "0,1"],
                                  ["--n", "3", "--a", "1", "--sigma", "0,x,1"],
                                  ["--n", "2", "--a", "3", "--sigma", "0,1"],
                                  ["--n", "two", "--a", "1", "--sigma", "0,1"]])
def test_grass_input_errors(args):
    r, _ = run("grass", *args)
    assert r.exit_code == 2
    assert "error" in r.stderr


def test_sigma_roundtrip():
    r, rep = run("grass", "--n", "4", "--a", "2", "--sigma", "1/2,0,0,-3")
    assert r.exit_code == 0
    assert parse_sigma(",".join(rep["sigma"]), 4) == RootMultiset.parse("1/2,0,0,-3")
    with pytest.raises(InputError):
        parse_sigma("0,1", 3)


# nilhecke ---------------------------------------------------------------------------------

def test_nilhecke_example():
    r, rep = run("nilhecke-check", "--a", "2", "--sigma", "0,1,2")
    assert r.exit_code == 0 and rep["ok"]
    assert all(rep["relations"].values())


def test_nilhecke_guards():
    r, _ = run("nilhecke-check", "--a", "4", "--sigma", "0,1,2")
    assert r.exit_code == 2
    r, rep = run("nilhecke-check", "--a", "1", "--sigma", "0,1")
    assert r.exit_code == 0 and rep["companion_matrix"] == [["E1"]]


# linkhom -------------------------------------------------------------------------------------

def test_linkhom_lee():
    r, rep = run("linkhom", "--braid", "trefoil", "--sigma", "1,-1", "--engine", "cube")
    assert r.exit_code == 0 and rep["total"] == 2
    assert set(rep) >= {"per_degree", "total", "euler"}


def test_linkhom_engines_agree():
    _, cube = run("linkhom", "--braid", "trefoil", "--sigma", "0,0", "--engine", "cube")
    r, mf = run("linkhom", "--braid", "trefoil", "--sigma", "0,0", "--engine", "mf")
    assert r.exit_code == 0 and mf["total"] == 4 == cube["total"]
    assert mf["per_degree"] == cube["per_degree"]
    assert "exclusion_steps" in mf and "residual_ring_dim" in mf


def test_linkhom_algebraic_unknot():
    r, rep = run("linkhom", "--braid", "unknot", "--labels", "2", "--sigma", "0,1,1,2", "--engine", "algebraic")
    assert r.exit_code == 0
    assert rep["total"] == 6
    (comp,) = rep["components"]
    assert comp["a"] == 2 and sorted(s["dim"] for s in comp["summands"]) == [1, 1, 2, 2]


def test_linkhom_braid_text_and_colorings():
    r, rep = run("linkhom", "--braid", "braid: 2; word: 1 1", "--sigma", "0,1", "--engine", "cube")
    assert r.exit_code == 0 and rep["total"] == 4
    assert sum(c["dim"] for c in rep["colorings"]) == 4


def test_linkhom_errors():
    assert run("linkhom", "--braid", "whitehead", "--sigma", "0,1")[0].exit_code == 2
    assert run("linkhom", "--braid", "trefoil", "--sigma", "0,1,2", "--engine", "cube")[0].exit_code == 2


# predict ---------------------------------------------------------------------------------------

@pytest.mark.parametrize("name,total", [("trefoil", 2), ("hopf", 4)])
def test_predict_distinct_roots(name, total):
    r, rep = run("predict", "--braid", name, "--sigma", "0,1")
    assert r.exit_code == 0
    assert rep["prediction"]["total"] == total == rep["computed"]["total"]
    assert rep["totals_match"] and rep["profiles_match_up_to_shift"]


def test_predict_two_labeled_trefoil():
    r, rep = run("predict", "--braid", "trefoil", "--labels", "2", "--sigma", "0,0,1,1,1")
    assert r.exit_code == 0
    assert len(rep["prediction"]["summands"]) == 3


def test_predict_with_table(tmp_path):
    tab = HomologyTable()
    tab.add(2, "trefoil", [1], 4, {-3: 1, -2: 1, 0: 2})
    p = tmp_path / "t.json"
    tab.save(p)
    r, rep = run("predict", "--braid", "trefoil", "--sigma", "0,0,1", "--table", str(p))
    assert r.exit_code == 0
    assert rep["prediction"]["total"] == 5


# plumbing ----------------------------------------------------------------------------------------

def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# grass run\nn = 2\na = 1\nsigma = 1,-1\n")
    r, rep = run("--config", str(cfg), "grass")
    assert r.exit_code == 0 and rep["dim"] == 2
    r, rep = run("--config", str(cfg), "grass", "--n", "3", "--sigma", "0,1,1")
    assert rep["dim"] == 3
    bad = tmp_path / "bad.cfg"
    bad.write_text("n 2\n")
    assert run("--config", str(bad), "grass")[0].exit_code == 2


def test_out_file_and_determinism(tmp_path):
    out = tmp_path / "r.json"
    r, _ = run("linkhom", "--braid", "hopf", "--sigma", "0,0", "--engine", "mf", "--seed", "3", "--out", str(out))
    assert r.exit_code == 0 and "total 4" in r.stdout
    first = json.loads(out.read_text())
    run("linkhom", "--braid", "hopf", "--sigma", "0,0", "--engine", "mf", "--seed", "3", "--out", str(out))
    assert json.loads(out.read_text()) == first
    assert first["total"] == 4


def test_link_text_roundtrip():
    _, rep = run("linkhom", "--braid", "braid: 3; word: 1 -2 1", "--sigma", "0,1", "--engine", "cube")
    assert LinkDiagram.parse(rep["link"]).word == (1, -2, 1)
