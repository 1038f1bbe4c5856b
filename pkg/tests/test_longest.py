import json

import pytest
from hypothesis import given

from circumference.bounds import C, bound
from circumference.cuts import PreconditionViolated
from circumference.graph import MultiGraph
from circumference.harness import (
    CycleTable,
    corpus,
    fig2_instance,
    fig3_instance,
    k4,
    oracle_max_cycle,
    petersen,
    prism,
    theta,
)
from circumference.longest import Engine, long_cycle, zero_terminal_weights

from strategies import weighted_pairs


def sandwich(G, w, e, f, res, best=None):
    res.cycle.validate(G)
    assert e in res.cycle.edges and f in res.cycle.edges
    assert res.weight == sum(w.get(v, 0) for v in res.cycle.vertices)
    W = sum(w.get(v, 0) for v in G.vertices)
    assert res.weight + 1e-9 >= bound(G.adjacent_edges(e, f), W)
    if best is None:
        best, _ = oracle_max_cycle(G, w, e, f)
    assert res.weight <= best


def test_theta_is_the_base_case():
    G = theta()
    res = long_cycle(G, {0: 3, 1: 4}, 0, 1)
    assert res.weight == 7
    assert res.trace.label == "base"


def test_k4_unit_weights():
    G = k4()
    w = {v: 1 for v in G.vertices}
    for e in G.edges:
        for f in G.edges:
            if e < f:
                res = long_cycle(G, w, e, f)
                sandwich(G, w, e, f, res)


def test_zero_weights_give_any_cycle():
    G = petersen()
    res = long_cycle(G, {}, 0, 9)
    assert res.weight == 0 and res.trace.label == "zero_weight"


def test_heavy_vertex_on_petersen():
    G = petersen()
    w = {v: 0 for v in G.vertices}
    w[7] = 100
    res = long_cycle(G, w, 0, 1)
    # the only weight sits on one vertex, so the cycle must pass it
    assert res.weight == 100


def test_nonadjacent_bound_uses_c():
    G = prism()
    w = {v: 1 for v in G.vertices}
    res = long_cycle(G, w, 0, 3)
    assert not res.adjacent
    assert res.bound == pytest.approx(C * 6**0.8)


def test_corpus_sandwich():
    for name, G in corpus().items():
        if G.order > 10:
            continue
        w = {v: (3 * v + 1) % 7 for v in G.vertices}
        table = CycleTable(G)
        cw = table.weights([w])
        for e in sorted(G.edges):
            for f in sorted(G.edges):
                if e < f:
                    sandwich(G, w, e, f, long_cycle(G, w, e, f), int(table.best(cw, e, f)[0]))


@given(weighted_pairs(nmax=12))
def test_random_sandwich(inst):
    G, w, e, f = inst
    sandwich(G, w, e, f, long_cycle(G, w, e, f))


def test_input_errors():
    G = k4()
    with pytest.raises(PreconditionViolated):
        long_cycle(G, {}, 0, 0)
    with pytest.raises(PreconditionViolated):
        long_cycle(G, {}, 0, 42)
    with pytest.raises(PreconditionViolated):
        long_cycle(G, {0: -1}, 0, 1)
    with pytest.raises(PreconditionViolated):
        long_cycle(G, {9: 1}, 0, 1)
    square = MultiGraph(range(4), {0: (0, 1), 1: (1, 2), 2: (2, 3), 3: (3, 0)})
    with pytest.raises(PreconditionViolated):
        long_cycle(square, {}, 0, 1)


def test_two_cut_must_separate():
    # two K4-minus-an-edge blocks joined by edges 10 and 11
    G = MultiGraph(
        range(8),
        {0: (0, 1), 1: (0, 2), 2: (1, 2), 3: (1, 3), 4: (2, 3), 5: (4, 5), 6: (4, 6), 7: (5, 6), 8: (5, 7), 9: (6, 7), 10: (0, 4), 11: (3, 7)},
    )
    w = {v: v + 1 for v in G.vertices}
    res = long_cycle(G, w, 2, 7)
    sandwich(G, w, 2, 7, res)
    assert res.trace.label == "nonadjacent.2cut"
    with pytest.raises(PreconditionViolated):
        long_cycle(G, w, 0, 2)


def test_terminal_weights_are_split_off():
    G = k4()
    w, w0 = zero_terminal_weights(G, {0: 1, 1: 2, 2: 3, 3: 4}, 0, 5)
    assert w0 == sum(x for v, x in {0: 1, 1: 2, 2: 3, 3: 4}.items() if v in G.ends(0) + G.ends(5))
    assert all(v not in w for v in G.ends(0) + G.ends(5))


def test_trace_is_json_and_replays_labels():
    inst = fig2_instance((1, 2, 1, 3, 1), 4)
    res = long_cycle(inst.graph, inst.weights, inst.e, inst.f)
    data = json.loads(json.dumps(res.to_dict()))
    assert data["weight"] == res.weight
    assert res.trace.label == "adjacent.disjoint_pairs"
    hist = res.trace.histogram()
    assert hist["adjacent.sides_unique"] >= 1


def test_hamilton_shortcut():
    inst = fig2_instance((1, 1, 1, 1, 1), -1)
    res = long_cycle(inst.graph, inst.weights, inst.e, inst.f)
    assert "adjacent.disjoint_pairs.hamilton" in res.trace.histogram()
    assert res.weight == 5


def test_shared_side_instance():
    inst = fig3_instance(1, 1, 1, 1, 1, 1, sizes=(1, 1, 1, 3, 1))
    res = long_cycle(inst.graph, inst.weights, inst.e, inst.f)
    sandwich(inst.graph, inst.weights, inst.e, inst.f, res)
    assert "adjacent.shared_side" in res.trace.histogram()


def test_engine_memo_is_transparent():
    G = petersen()
    w = {v: v % 4 for v in G.vertices}
    a = long_cycle(G, w, 0, 7, engine=Engine(memo=False))
    b = long_cycle(G, w, 0, 7, engine=Engine())
    assert a.cycle == b.cycle
    assert a.trace.to_dict() == b.trace.to_dict()


# every named candidate of the case tables, keyed by branch
CANDIDATES = {
    "adjacent.disjoint_pairs": {"C12", "C52", "C54", "C5", "Cz", "hamilton"},
    "adjacent.shared_side": {"C1", "C2", "Cy", "Cz", "double_shared"},
    "nonadjacent.overlap1": {"Cx", "Cx'", "Cx''", "Cy"},
    "nonadjacent.overlap2": {"Cx", "Cy"},
    "nonadjacent.cross_paired_sides": {"Cy", "Cx", "Cx'"},
}


def test_every_candidate_builds_a_cycle_meeting_the_bound():
    import random

    from circumference.harness import edge_pairs, piece_corpus, random_cubic_3connected, random_weights

    eng = Engine(exhaustive=True)
    runs = [(i.graph, i.weights, i.e, i.f) for i in piece_corpus()]
    rng = random.Random(1)
    for _ in range(40):
        G = random_cubic_3connected(rng.choice((8, 10, 12, 14)), rng.randrange(10**6))
        w = random_weights(G, rng)
        runs += [(G, w, e, f) for e, f in edge_pairs(G)[::7]]
    good: dict[str, set] = {k: set() for k in CANDIDATES}
    for G, w, e, f in runs:
        for node in long_cycle(G, w, e, f, engine=eng).trace.walk():
            for ev in node.events:
                if ev["kind"] == "candidate" and node.label in good and (ev.get("winner") or ev.get("met")):
                    good[node.label].add(ev["name"])
    assert good == CANDIDATES


def test_exhaustive_engine_keeps_the_result():
    for inst in [fig2_instance((1, 2, 1, 3, 1), 4), fig3_instance(1, 1, 1, 1, 1, 1, sizes=(1, 1, 1, 3, 1))]:
        a = long_cycle(inst.graph, inst.weights, inst.e, inst.f, engine=Engine())
        b = long_cycle(inst.graph, inst.weights, inst.e, inst.f, engine=Engine(exhaustive=True))
        assert a.cycle == b.cycle
        assert any(ev.get("scouted") for node in b.trace.walk() for ev in node.events)


@pytest.mark.parametrize("sizes, tri", [((1, 1, 1, 3, 1), 0), ((3, 1, 3, 3, 1), 1), ((1, 3, 5, 5, 1), 2)])
def test_middle_exit_implies_double_exit(sizes, tri):
    # when the piece behind the shared side is the middle side, the rest of the
    # graph sits behind a 3-cut through e1 and e3, so the end sides coincide
    from circumference.cuts import boundary, maximal_3cut_side

    inst = fig3_instance(1, 1, 1, 1, 0, 1, sizes=sizes, z_triangles=tri, y2_is_x5=True)
    G = inst.graph
    st = Engine()._adj_struct(G, inst.e, inst.f)
    L = st.data["lab"]
    U = {L["u1"], L["u2"], L["u3"]}
    (e6,) = boundary(G, L["X2"]) - {L["e2"], L["e4"]}
    assert maximal_3cut_side(G, e6, L["X2"] | U).side == L["X5"]
    assert L["X1"] == L["X3"] and st.data["exit"] == "double"
    sandwich(G, inst.weights, inst.e, inst.f, long_cycle(G, inst.weights, inst.e, inst.f))
