from hypothesis import given, strategies as st

from circumference.derive import DerivationScript, clear_cache, lift_cycle
from circumference.graph import Cycle, isomorphic
from circumference.harness import k4, petersen, prism
from circumference.longest import merge_contracted
from circumference.search import cycle_through_two_edges

from strategies import cubic_graphs


def test_replay_matches_cached_result():
    G = petersen()
    s = DerivationScript(G)
    s.contract({5, 7})
    s.suppress(0)
    clear_cache()
    assert s.replay() == s.graph
    assert [d["op"] for d in s.describe()] == ["contract", "suppress"]


def test_maps_follow_the_surgery():
    G = prism()
    s = DerivationScript(G, track=(0, 6))
    (v,) = s.contract({3, 4, 5})
    assert s.members(v) == {3, 4, 5}
    assert s.vertex_of(4) == v
    assert s.edge_of(6) == 6  # a boundary edge keeps its id
    assert s.edge_of(3) is None  # an edge inside the piece is gone
    s.suppress(0)
    assert s.edge_of(0) is None
    assert s.steps[-1].images == {0: 0, 6: 6}


@given(cubic_graphs(nmin=6, nmax=10), st.data())
def test_suppression_lifts_to_a_cycle(G, data):
    g = data.draw(st.sampled_from(sorted(G.edges)))
    s = DerivationScript(G)
    s.suppress(g)
    D = s.graph
    es = sorted(D.edges)
    C = cycle_through_two_edges(D, es[0], es[-1])
    out = lift_cycle(s, C)
    out.cycle.validate(G)
    assert len(out.cycle.edges) >= len(C.edges)


def test_merge_routes_through_a_piece():
    G = prism()
    w = {v: 1 for v in G.vertices}
    s = DerivationScript(G)
    (v,) = s.contract({3, 4, 5})
    D = s.graph
    assert isomorphic(D, k4())
    C = Cycle.from_edges(D, [0, 6, 7])
    lifted = merge_contracted(G, w, [], C, script=s)
    lifted.validate(G)
    # the pass through the piece picks the longer way round the triangle
    assert len(lifted.vertices) == 5
