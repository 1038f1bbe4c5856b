"""Cycles through prescribed edges, with no weight objective."""
from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

from .cuts import is_3_connected
from .graph import Cycle, GraphError, MultiGraph, Provenance, suppress_edge


class NotTwoConnected(GraphError):
    pass


class NotThreeConnected(GraphError):
    pass


class HypothesisViolated(RuntimeError):
    pass


class _Net:
    """Directed unit-capacity network with paired residual arcs."""

    def __init__(self):
        self.head: list = []
        self.cap: list[int] = []
        self.tag: list = []
        self.out: dict = {}

    def arc(self, u, v, tag=None) -> None:
        for a, b, c in ((u, v, 1), (v, u, 0)):
            self.out.setdefault(a, []).append(len(self.head))
            self.head.append(b)
            self.cap.append(c)
            self.tag.append(tag if c else None)

    def flow(self, s, t, limit: int) -> int:
        value = 0
        while value < limit:
            prev = {s: None}
            q = deque([s])
            while q and t not in prev:
                u = q.popleft()
                for i in self.out.get(u, ()):
                    v = self.head[i]
                    if self.cap[i] > 0 and v not in prev:
                        prev[v] = i
                        q.append(v)
            if t not in prev:
                break
            v = t
            while prev[v] is not None:
                i = prev[v]
                self.cap[i] -= 1
                self.cap[i ^ 1] += 1
                v = self.head[i ^ 1]
            value += 1
        return value

    def used(self, u) -> list[int]:
        """Forward arcs out of ``u`` that carry flow."""
        return [i for i in self.out.get(u, ()) if i % 2 == 0 and self.cap[i] == 0]


def cycle_through_two_edges(G: MultiGraph, e: int, f: int) -> Cycle:
    """Some cycle containing both e and f, via two internally disjoint paths."""
    if e == f:
        raise GraphError("edges must be distinct")
    a, b = G.ends(e)
    c, d = G.ends(f)
    if {a, b} == {c, d}:
        return Cycle((a, b), (e, f))
    net = _Net()
    S, T = ("s",), ("t",)
    for v in G.vertices:
        net.arc(("i", v), ("o", v))
    net.arc(S, ("i", a), ("e", a))
    net.arc(S, ("i", b), ("e", b))
    net.arc(("o", c), T, ("f", c))
    net.arc(("o", d), T, ("f", d))
    for g, (x, y) in sorted(G.edges.items()):
        if g in (e, f):
            continue
        net.arc(("o", x), ("i", y), g)
        net.arc(("o", y), ("i", x), g)
    if net.flow(S, T, 2) < 2:
        raise NotTwoConnected(f"no cycle through edges {e} and {f}")
    paths = []
    for i in net.used(S):
        start = net.head[i][1]
        verts, edges = [start], []
        node = ("o", start)
        while True:
            (j,) = net.used(node)
            tag = net.tag[j]
            net.cap[j] = 1  # consume so the walk cannot revisit
            nxt = net.head[j]
            if nxt == T:
                break
            edges.append(tag)
            v = nxt[1]
            verts.append(v)
            node = ("o", v)
        paths.append((verts, edges))
    (pa, ea), (pb, eb) = sorted(paths, key=lambda p: p[0][0] != a)
    # pa runs a..x, pb runs b..y; close with e at the front and f at the back
    verts = list(reversed(pa)) + pb
    edges = list(reversed(ea)) + [e] + eb + [f]
    cyc = Cycle(tuple(verts), tuple(edges))
    cyc.validate(G)
    return cyc


def simple_paths(
    G: MultiGraph,
    s: int,
    t: int,
    required: Iterable[int] = (),
    within: Iterable[int] | None = None,
    avoid: Iterable[int] = (),
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every simple s-t path inside ``within`` that uses all ``required`` edges."""
    allowed = set(G.vertices if within is None else within)
    need = set(required)
    banned = set(avoid)
    ends = G.edges
    if s not in allowed or t not in allowed:
        return
    if s == t:
        if not need:
            yield (s,), ()
        return
    visited = {s}
    verts = [s]
    edges: list[int] = []

    def viable(v: int) -> bool:
        missing = [g for g in need if g not in used]
        for g in missing:
            x, y = ends[g]
            if x in visited and x != v and y in visited and y != v:
                return False
        # everything still needed must be reachable through free vertices
        seen = {v}
        q = deque([v])
        while q:
            u = q.popleft()
            for g in G.incident(u):
                if g in banned or g in used:
                    continue
                x = ends[g][1] if ends[g][0] == u else ends[g][0]
                if x in seen or x not in allowed or (x in visited and x != v):
                    continue
                seen.add(x)
                q.append(x)
        if t not in seen:
            return False
        return all(ends[g][0] in seen or ends[g][1] in seen for g in missing)

    used: set[int] = set()

    def rec(v: int):
        if v == t:
            if need <= used:
                yield tuple(verts), tuple(edges)
            return
        if not viable(v):
            return
        for g in G.incident(v):
            if g in banned or g in used:
                continue
            x = ends[g][1] if ends[g][0] == v else ends[g][0]
            if x in visited or x not in allowed:
                continue
            visited.add(x)
            verts.append(x)
            edges.append(g)
            used.add(g)
            yield from rec(x)
            used.discard(g)
            edges.pop()
            verts.pop()
            visited.discard(x)

    yield from rec(s)


def cycle_through_edges(G: MultiGraph, required: Iterable[int]) -> Cycle | None:
    """First cycle found that contains every required edge (exhaustive DFS)."""
    req = sorted(set(required))
    if not req:
        raise GraphError("need at least one edge")
    first = req[0]
    a, b = G.ends(first)
    for verts, edges in simple_paths(G, b, a, required=req[1:], avoid=[first]):
        return Cycle((a,) + verts[:-1], (first,) + edges)
    return None


def cycle_through_three_edges(G: MultiGraph, e1: int, e2: int, e3: int, *, check: bool = True) -> Cycle | None:
    """A cycle through three distinct edges, or None when they form an edge cut."""
    if len({e1, e2, e3}) != 3:
        raise GraphError("edges must be distinct")
    for g in (e1, e2, e3):
        G.ends(g)
    if check and not is_3_connected(G):
        raise NotThreeConnected("graph is not 3-connected")
    if len(G.components((e1, e2, e3))) > 1:
        return None
    return cycle_through_edges(G, (e1, e2, e3))


def neighbor_suppression_cycle(
    G: MultiGraph,
    u: int,
    e: int,
    v1: int | None = None,
    v2: int | None = None,
    v3: int | None = None,
) -> tuple[int, MultiGraph, Provenance, Cycle]:
    """For k in (1, 2): suppress the edge u-v_k and look for a cycle through the
    image of ``e``, the edge formed through u, and the edge formed through v_k.

    Returns ``(k, G - uv_k, provenance, cycle)``.
    """
    if u in G.ends(e):
        raise GraphError("u must not be an endpoint of e")
    nbrs = [G.other(g, u) for g in G.incident(u)]
    if v1 is None:
        v1, v2, v3 = nbrs
    if sorted((v1, v2, v3)) != sorted(nbrs):
        raise GraphError("v1, v2, v3 must be the neighbours of u")
    vs = {1: v1, 2: v2}
    for k in (1, 2):
        uv = next((g for g in G.incident(u) if G.other(g, u) == vs[k]), None)
        if uv is None:
            continue
        try:
            H, prov = suppress_edge(G, uv)
        except GraphError:
            continue
        through_u = through_v = None
        image = e
        for new, (pv, pe) in prov.edge_paths.items():
            if u in pv:
                through_u = new
            if vs[k] in pv:
                through_v = new
            if e in pe:
                image = new
        need = {image, through_u, through_v}
        if not is_3_connected(H):
            continue
        if len(need) == 3 and len(H.components(need)) > 1:
            continue
        cyc = cycle_through_edges(H, need)
        if cyc is not None:
            return k, H, prov, cyc
    raise HypothesisViolated("no suitable cycle after suppressing either u-v1 or u-v2")
