"""Edge cuts: unit-capacity max-flow, maximal 3-boundary sides, small cut
enumeration and connectivity predicates."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .graph import MultiGraph, boundary


class NoQualifyingSide(RuntimeError):
    pass


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class CutSide:
    side: frozenset[int]
    cut_edges: frozenset[int]

    def __len__(self) -> int:
        return len(self.side)

    @classmethod
    def of(cls, G: MultiGraph, side: Iterable[int]) -> "CutSide":
        s = frozenset(side)
        return cls(s, frozenset(boundary(G, s)))


def _augment(G: MultiGraph, S: set[int], T: set[int], limit: int | None):
    """Augmenting-path max-flow with unit capacity on every undirected edge.

    Returns ``(value, reach)`` where ``reach`` is the residual-reachable set
    from ``S`` (``None`` if the search stopped at ``limit``).
    """
    ends = G.edges
    flow: dict[int, int] = {}
    value = 0
    while True:
        if limit is not None and value >= limit:
            return value, None
        parent: dict[int, tuple[int, int] | None] = {s: None for s in S}
        queue = deque(sorted(S))
        hit = None
        while queue and hit is None:
            v = queue.popleft()
            for e in G.incident(v):
                a, b = ends[e]
                x = b if a == v else a
                if x in parent:
                    continue
                d = 1 if v == a else -1
                if flow.get(e, 0) == d:
                    continue
                parent[x] = (v, e)
                if x in T:
                    hit = x
                    break
                queue.append(x)
        if hit is None:
            return value, set(parent)
        x = hit
        while parent[x] is not None:
            v, e = parent[x]
            d = 1 if v == ends[e][0] else -1
            flow[e] = flow.get(e, 0) + d
            x = v
        value += 1


def max_flow(G: MultiGraph, S: Iterable[int], T: Iterable[int], limit: int | None = None) -> int:
    s, t = set(S), set(T)
    if s & t:
        raise ValueError("source and sink sets overlap")
    return _augment(G, s, t, limit)[0]


def min_edge_cut(G: MultiGraph, S: Iterable[int], T: Iterable[int]) -> tuple[int, CutSide]:
    """Minimum S-T edge cut; the returned side is the largest sink side."""
    s, t = set(S), set(T)
    if not s or not t or s & t:
        raise ValueError("S and T must be nonempty and disjoint")
    value, reach = _augment(G, s, t, None)
    return value, CutSide.of(G, G.vertices - reach)


def maximal_3cut_side(G: MultiGraph, e: int, forbidden: Iterable[int]) -> CutSide:
    """Largest X with e in its boundary, |boundary| = 3 and X disjoint from ``forbidden``."""
    bad = set(forbidden)
    a, b = G.ends(e)
    if (a in bad) == (b in bad):
        raise PreconditionViolated("exactly one endpoint of e must be forbidden")
    t = b if a in bad else a
    value, side = min_edge_cut(G, bad, {t})
    if value != 3:
        raise NoQualifyingSide(f"minimum cut is {value}, not 3")
    return side


def submodular_union(G: MultiGraph, A: CutSide, B: CutSide) -> CutSide:
    if len(A.cut_edges) != 3 or len(B.cut_edges) != 3:
        raise PreconditionViolated("both sides must have boundary 3")
    if not (A.side & B.side):
        raise PreconditionViolated("sides do not meet")
    U = A.side | B.side
    if U == G.vertices:
        raise PreconditionViolated("sides cover the whole graph")
    out = CutSide.of(G, U)
    if len(out.cut_edges) != 3:
        raise PreconditionViolated("union boundary is not 3; graph is not 3-connected")
    return out


# -- bridges and small cuts ------------------------------------------------


def bridges(G: MultiGraph, removed: Iterable[int] = ()) -> list[int]:
    """Bridges of G minus ``removed`` (edge-id aware, so parallel edges are never bridges)."""
    gone = set(removed)
    ends = G.edges
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out = []
    counter = 0
    for root in sorted(G.vertices):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(G.incident(root)))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for e in it:
                if e == via or e in gone:
                    continue
                a, b = ends[e]
                x = b if a == v else a
                if x in disc:
                    if disc[x] < low[v]:
                        low[v] = disc[x]
                else:
                    disc[x] = low[x] = counter
                    counter += 1
                    stack.append((x, e, iter(G.incident(x))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if low[v] > disc[p]:
                        out.append(via)
    return sorted(out)


def is_connected(G: MultiGraph) -> bool:
    return len(G.components()) <= 1


def edge_connectivity_at_least(G: MultiGraph, k: int) -> bool:
    if G.order <= 1:
        return True
    if not is_connected(G):
        return k <= 0
    vs = sorted(G.vertices)
    root = vs[0]
    if any(G.degree(v) < k for v in vs):
        return False
    return all(max_flow(G, {root}, {t}, limit=k) >= k for t in vs[1:])


def is_3_connected(G: MultiGraph) -> bool:
    """3-edge-connected and simple, with the two-vertex theta admitted as a base object."""
    if G.order <= 1:
        return False
    if G.order <= 3:
        return edge_connectivity_at_least(G, 3)
    if G.has_parallel_edges():
        return False
    return edge_connectivity_at_least(G, 3)


def two_edge_cuts(G: MultiGraph) -> list[frozenset[int]]:
    """All 2-edge cuts of a 2-edge-connected graph."""
    found = set()
    for g in sorted(G.edges):
        for b in bridges(G, [g]):
            found.add(frozenset((g, b)))
    return sorted(found, key=sorted)


def separates(G: MultiGraph, cut: Iterable[int], e: int, f: int) -> bool:
    """True if e and f lie outside ``cut`` and in different components of G - cut."""
    F = set(cut)
    if e in F or f in F:
        return False
    comps = G.components(F)
    where = {v: i for i, c in enumerate(comps) for v in c}
    return where[G.ends(e)[0]] != where[G.ends(f)[0]]


def find_2_edge_cut_separating(G: MultiGraph, e: int, f: int) -> CutSide | None:
    """A 2-edge cut with e and f on opposite sides; the side returned holds f."""
    ve, vf = set(G.ends(e)), set(G.ends(f))
    if ve & vf:
        return None
    value, side = min_edge_cut(G, ve, vf)
    return side if value == 2 else None


def find_3_edge_cut_separating(G: MultiGraph, e: int, f: int) -> CutSide | None:
    ve, vf = set(G.ends(e)), set(G.ends(f))
    if ve & vf:
        return None
    value, side = min_edge_cut(G, ve, vf)
    return side if value == 3 else None


def _pick_side(G: MultiGraph, cut: frozenset[int]) -> CutSide | None:
    comps = G.components(cut)
    if len(comps) != 2:
        return None
    a, b = comps
    side = min((a, b), key=lambda s: (len(s), min(s)))
    cs = CutSide.of(G, side)
    return cs if cs.cut_edges == cut else None


def enumerate_3_edge_cuts(G: MultiGraph, containing: int | None = None) -> list[CutSide]:
    """All 3-edge cuts of a 3-edge-connected graph, each with its smaller side."""
    es = sorted(G.edges)
    if containing is None:
        pairs = combinations(es, 2)
    else:
        G.ends(containing)
        pairs = ((containing, h) for h in es if h != containing)
    seen: dict[frozenset[int], CutSide] = {}
    for g, h in pairs:
        for b in bridges(G, (g, h)):
            cut = frozenset((g, h, b))
            if cut in seen:
                continue
            cs = _pick_side(G, cut)
            if cs is not None:
                seen[cut] = cs
    return sorted(seen.values(), key=lambda c: (len(c.side), sorted(c.cut_edges)))


def is_nontrivial(G: MultiGraph, cs: CutSide) -> bool:
    return len(cs.side) >= 2 and G.order - len(cs.side) >= 2
