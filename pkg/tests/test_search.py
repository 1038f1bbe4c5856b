import itertools

import pytest
from hypothesis import assume, given, strategies as st

from circumference.graph import MultiGraph
from circumference.harness import k4, petersen, prism, theta
from circumference.search import (
    NotThreeConnected,
    NotTwoConnected,
    cycle_through_three_edges,
    cycle_through_two_edges,
    neighbor_suppression_cycle,
    simple_paths,
)

from strategies import cubic_graphs


@given(cubic_graphs(nmax=12), st.data())
def test_cycle_through_two_edges(G, data):
    es = sorted(G.edges)
    e = data.draw(st.sampled_from(es))
    f = data.draw(st.sampled_from([g for g in es if g != e]))
    C = cycle_through_two_edges(G, e, f)
    C.validate(G)
    assert e in C.edges and f in C.edges


def test_two_edges_on_theta():
    C = cycle_through_two_edges(theta(), 0, 2)
    assert set(C.edges) == {0, 2}


def test_two_edges_need_2_connectivity():
    # two triangles joined by a bridge
    G = MultiGraph(range(6), {0: (0, 1), 1: (1, 2), 2: (2, 0), 3: (2, 3), 4: (3, 4), 5: (4, 5), 6: (5, 3)})
    with pytest.raises(NotTwoConnected):
        cycle_through_two_edges(G, 0, 4)


def test_simple_paths_enumerates_all():
    G = k4()
    paths = list(simple_paths(G, 0, 1))
    # direct edge, two paths of length 2, two of length 3
    assert sorted(len(es) for _, es in paths) == [1, 2, 2, 3, 3]
    for vs, es in paths:
        assert vs[0] == 0 and vs[-1] == 1 and len(set(vs)) == len(vs)


def test_simple_paths_required_and_within():
    G = prism()
    for vs, es in simple_paths(G, 0, 3, required=[7]):
        assert 7 in es
    assert list(simple_paths(G, 0, 3, within={0, 1, 2})) == []


def test_three_edges():
    G = prism()
    # the three rungs form an edge cut
    assert cycle_through_three_edges(G, 6, 7, 8) is None
    C = cycle_through_three_edges(G, 0, 6, 3)
    assert {0, 6, 3} <= set(C.edges)
    G2 = MultiGraph(range(4), {0: (0, 1), 1: (0, 1), 2: (0, 2), 3: (1, 3), 4: (2, 3), 5: (2, 3)})
    with pytest.raises(NotThreeConnected):
        cycle_through_three_edges(G2, 0, 2, 4)


def cut_size(G, X):
    return sum((a in X) != (b in X) for a, b in G.edges.values())


def wide_cuts(G, u, e):
    """Brute force: every X avoiding u and v3, holding exactly one of v1, v2 and
    not both ends of e, with at least two vertices, has at least four boundary edges."""
    v1, v2, v3 = (G.other(g, u) for g in G.incident(u))
    rest = sorted(G.vertices - {u, v1, v2, v3})
    for vk in (v1, v2):
        for r in range(1, len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                X = {vk, *extra}
                if not set(G.ends(e)) <= X and cut_size(G, X) < 4:
                    return False
    return True


@given(cubic_graphs(nmin=6, nmax=12), st.data())
def test_neighbor_suppression_cycle(G, data):
    e = data.draw(st.sampled_from(sorted(G.edges)))
    far = [v for v in sorted(G.vertices) if v not in G.ends(e)]
    u = data.draw(st.sampled_from(far))
    assume(wide_cuts(G, u, e))
    k, H, prov, C = neighbor_suppression_cycle(G, u, e)
    C.validate(H)
    assert k in (1, 2)
    assert H.order == G.order - 2


def test_neighbor_suppression_on_petersen():
    G = petersen()
    k, H, prov, C = neighbor_suppression_cycle(G, 7, 0)
    # one merged edge through u and one through the other end
    assert len(prov.edge_paths) == 2
    assert len(C.edges) >= 3
