"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from circumference.harness import random_cubic_3connected


@st.composite
def cubic_graphs(draw, nmin=4, nmax=12):
    n = draw(st.integers(nmin // 2, nmax // 2)) * 2
    return random_cubic_3connected(n, draw(st.integers(0, 10**6)))


@st.composite
def weighted_pairs(draw, nmin=4, nmax=12, top=10):
    G = draw(cubic_graphs(nmin, nmax))
    w = {v: draw(st.integers(0, top)) for v in sorted(G.vertices)}
    es = sorted(G.edges)
    e = draw(st.sampled_from(es))
    f = draw(st.sampled_from([g for g in es if g != e]))
    return G, w, e, f
