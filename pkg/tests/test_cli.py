import json

import pytest
from hypothesis import given, strategies as st

from circumference import graphio
from circumference.cli import main
from circumference.harness import petersen, random_3edge_connected

from strategies import cubic_graphs


@given(cubic_graphs(nmax=12), st.sampled_from(["text", "json"]))
def test_round_trip(G, fmt):
    w = {v: v % 5 for v in G.vertices}
    H, w2 = graphio.loads(graphio.dumps(G, w, fmt))
    assert H == G
    assert {v: w2[v] for v in G.vertices} == w


def test_text_comments_and_errors():
    G, w = graphio.loads("# two vertices\ngraph 2 3\nvertex 0 1\nvertex 1 2 # heavy\nedge 0 0 1\nedge 1 0 1\nedge 2 1 0\n")
    assert G.order == 2 and G.size == 3 and w == {0: 1, 1: 2}
    for bad in ["vertex 0 1\n", "graph 1 0\nvertex 0 x\n", "graph 2 0\nvertex 0 1\n", "graph 1 1\nvertex 0 1\nedge 0 0 0\n"]:
        with pytest.raises(graphio.GraphFormatError):
            graphio.loads(bad)


@pytest.fixture
def petersen_file(tmp_path):
    p = tmp_path / "p.txt"
    p.write_text(graphio.dumps(petersen(), {v: v for v in range(10)}))
    return p


def test_longcycle_command(petersen_file, tmp_path, capsys):
    trace = tmp_path / "trace.json"
    assert main(["longcycle", "--graph", str(petersen_file), "--e", "0", "--f", "9", "--json", "--trace", str(trace)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["weight"] >= out["bound"]
    assert json.loads(trace.read_text())["label"]


def test_input_errors_exit_2(petersen_file, tmp_path, capsys):
    assert main(["longcycle", "--graph", str(petersen_file), "--e", "0", "--f", "99"]) == 2
    assert main(["longcycle", "--graph", str(tmp_path / "missing"), "--e", "0", "--f", "1"]) == 2
    assert main(["gen", "--n", "7", "--seed", "1"]) == 2
    assert main(["longcycle", "--graph", str(petersen_file)]) == 2


def test_oracle_command(petersen_file, capsys):
    assert main(["oracle", "--graph", str(petersen_file), "--e", "0", "--budget-ms", "10000"]) == 0
    assert capsys.readouterr().out.startswith("weight ")


def test_gen_and_eulerian(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["gen", "--n", "10", "--seed", "4", "--weights", "max:9", "--out", str(out)]) == 0
    G, w = graphio.load(out)
    assert G.order == 10 and max(w.values()) <= 9
    H = random_3edge_connected(10, 1)
    hf = tmp_path / "h.json"
    hf.write_text(graphio.dumps(H, {v: 1 for v in H.vertices}, "json"))
    e = min(H.edges)
    assert main(["eulerian", "--graph", str(hf), "--e", str(e), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert all(d % 2 == 0 for d in data["degrees"].values())


def test_bounds_command(capsys):
    assert main(["bounds", "--grid-max", "10", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["optimal_exponent"] > 0.800008
    assert all(g["failures"] == 0 for g in data["grid"].values())


def test_verify_command(capsys):
    assert main(["verify", "--trials", "2", "--nmax", "6", "--seed", "1", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["failures"] == []
