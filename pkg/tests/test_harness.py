import json

import pytest
from hypothesis import given, strategies as st

from circumference.cuts import is_3_connected
from circumference.graph import isomorphic
from circumference.harness import (
    BudgetExceeded,
    CycleTable,
    OddOrder,
    all_cycles,
    corpus,
    fig2_instance,
    fig3_instance,
    generalized_petersen,
    k33,
    k4,
    oracle_max_cycle,
    petersen,
    piece_corpus,
    prism,
    random_cubic_3connected,
    theta,
    verify,
)


def test_generator_small_orders():
    assert isomorphic(random_cubic_3connected(4, 0), k4())
    with pytest.raises(OddOrder):
        random_cubic_3connected(7, 0)


def test_order_six_gives_prism_or_k33():
    seen = set()
    for seed in range(1000):
        G = random_cubic_3connected(6, seed)
        if isomorphic(G, prism()):
            seen.add("prism")
        else:
            assert isomorphic(G, k33())
            seen.add("K33")
    assert seen == {"prism", "K33"}


@given(st.integers(2, 9), st.integers(0, 10**6))
def test_generator_is_valid_and_deterministic(half, seed):
    G = random_cubic_3connected(2 * half, seed)
    assert G.order == 2 * half and G.is_cubic() and is_3_connected(G)
    assert G == random_cubic_3connected(2 * half, seed)


def test_oracle_known_values():
    assert oracle_max_cycle(petersen(), {v: 1 for v in range(10)})[0] == 9
    assert oracle_max_cycle(k33(), {v: 1 for v in range(6)})[0] == 6
    assert oracle_max_cycle(theta(), {0: 2, 1: 5}, 0, 2)[0] == 7


def test_oracle_budget():
    G = generalized_petersen(11, 2)
    with pytest.raises(BudgetExceeded):
        oracle_max_cycle(G, {v: 1 for v in G.vertices}, time_budget=1e-6)


def test_cycle_counts():
    # counts of distinct cycles, found by hand for the small ones
    assert len(all_cycles(k4())) == 7
    assert len(all_cycles(theta())) == 3
    assert len(all_cycles(petersen())) == 57


@given(st.integers(2, 6), st.integers(0, 10**6), st.data())
def test_table_agrees_with_dfs(half, seed, data):
    G = random_cubic_3connected(2 * half, seed)
    w = {v: data.draw(st.integers(0, 20)) for v in sorted(G.vertices)}
    es = sorted(G.edges)
    e = data.draw(st.sampled_from(es))
    f = data.draw(st.sampled_from([g for g in es if g != e]))
    t = CycleTable(G)
    cw = t.weights([w])
    assert int(t.best(cw, e, f)[0]) == oracle_max_cycle(G, w, e, f)[0]
    assert int(t.best(cw)[0]) == oracle_max_cycle(G, w)[0]


def test_figure_instances_are_3_connected_cubic():
    for inst in piece_corpus():
        G = inst.graph
        assert G.is_cubic() and is_3_connected(G), inst.name
        assert G.adjacent_edges(inst.e, inst.f)


def test_fig2_weights_land_in_pieces():
    inst = fig2_instance((1, 2, 3, 4, 5), 6, sizes=(1, 3, 1, 3, 5), seed=2)
    for i, x in enumerate((1, 2, 3, 4, 5), start=1):
        assert sum(inst.weights.get(v, 0) for v in inst.pieces[f"X{i}"]) == x
    assert sum(inst.weights.get(v, 0) for v in inst.pieces["Z"]) == 6
    assert len(inst.pieces["X5"]) == 5


def test_fig3_shares_a_side():
    inst = fig3_instance(1, 2, 3, 4, 5, 6, sizes=(1, 1, 1, 3, 1))
    G = inst.graph
    Y1 = inst.pieces["Y1"]
    u1, u3 = G.other(inst.e, 1), G.other(inst.f, 1)
    assert any(G.other(g, u1) in Y1 for g in G.incident(u1))
    assert any(G.other(g, u3) in Y1 for g in G.incident(u3))


def test_corpus_names():
    assert set(corpus()) == {"theta", "K4", "prism", "K33", "cube", "petersen", "mobius_kantor"}


def test_small_verify_is_clean_and_deterministic():
    a = verify(trials=4, nmax=8, seed=3)
    b = verify(trials=4, nmax=8, seed=3)
    assert a.failures == []
    assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())
