"""Eulerian subgraphs of 3-edge-connected graphs: expand high-degree vertices
into cycles, find a long cycle in the resulting cubic graph, contract back."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .bounds import C, R
from .cuts import is_3_connected, is_connected
from .graph import Cycle, MultiGraph
from .longest import CycleResult, Engine, long_cycle


class DegreeTooSmall(ValueError):
    pass


class CubificationFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class Expansion:
    vertex: int
    cycle: tuple[int, ...]  # attachment vertices in cyclic order
    attach: Mapping[int, int]  # attachment vertex -> original edge it carries
    groups: tuple[tuple[int, ...], ...]  # attachment vertices per component of G - u
    cycle_edges: tuple[int, ...]
    carrier: int


def expand_vertex(G: MultiGraph, w: Mapping[int, int], u: int) -> tuple[MultiGraph, dict[int, int], Expansion]:
    """Replace u by a cycle with one attachment vertex per incident edge."""
    inc = sorted(G.incident(u))
    if len(inc) < 4:
        raise DegreeTooSmall(f"vertex {u} has degree {len(inc)}")
    comps = sorted(G.components(within=G.vertices - {u}), key=min)
    where = {v: i for i, c in enumerate(comps) for v in c}
    nv = G.next_vertex
    groups: list[list[int]] = [[] for _ in comps]
    attach: dict[int, int] = {}
    for g in inc:
        v = nv
        nv += 1
        attach[v] = g
        groups[where[G.other(g, u)]].append(v)
    order = [v for grp in groups for v in grp]
    carrier = order[0]
    if len(groups) > 1:
        k = len(groups)
        for s in range(k):
            a, b = groups[s][-1], groups[(s + 1) % k][0]
            i, j = order.index(a), order.index(b)
            order[i], order[j] = order[j], order[i]
    edges = {g: ab for g, ab in G.edges.items() if u not in ab}
    for v, g in attach.items():
        edges[g] = (v, G.other(g, u))
    ne = G.next_edge
    cyc_edges = []
    for i, v in enumerate(order):
        edges[ne] = (v, order[(i + 1) % len(order)])
        cyc_edges.append(ne)
        ne += 1
    H = MultiGraph((G.vertices - {u}) | set(attach), edges, nv, ne)
    w2 = {v: x for v, x in w.items() if v != u}
    w2[carrier] = w.get(u, 0)
    for v in attach:
        w2.setdefault(v, 0)
    exp = Expansion(u, tuple(order), attach, tuple(tuple(g) for g in groups), tuple(cyc_edges), carrier)
    return H, w2, exp


def cubify(G: MultiGraph, w: Mapping[int, int]) -> tuple[MultiGraph, dict[int, int], list[Expansion]]:
    """Expand every vertex of degree at least 4, largest degree first, ties by id."""
    todo = sorted((v for v in G.vertices if G.degree(v) >= 4), key=lambda v: (-G.degree(v), v))
    L, wL, exps = G, dict(w), []
    for u in todo:
        L, wL, exp = expand_vertex(L, wL, u)
        exps.append(exp)
    if not L.is_cubic():
        raise CubificationFailed("result is not cubic")
    if L.order > 2 and not is_3_connected(L):
        raise CubificationFailed("result is not 3-connected")
    return L, wL, exps


@dataclass
class EulerianResult:
    edges: tuple[int, ...]
    vertices: frozenset[int]
    weight: int
    bound: float
    partner: int
    cycle: CycleResult
    L: MultiGraph
    expansions: list[Expansion] = field(default_factory=list)

    def degrees(self, G: MultiGraph) -> dict[int, int]:
        deg: Counter[int] = Counter()
        for g in self.edges:
            a, b = G.ends(g)
            deg[a] += 1
            deg[b] += 1
        return dict(sorted(deg.items()))

    def to_dict(self, G: MultiGraph) -> dict:
        return {
            "edges": list(self.edges),
            "vertices": sorted(self.vertices),
            "degrees": {str(v): d for v, d in self.degrees(G).items()},
            "weight": self.weight,
            "bound": self.bound,
            "partner": self.partner,
            "cycle_weight": self.cycle.weight,
            "expanded": [x.vertex for x in self.expansions],
        }


def partner_edge(L: MultiGraph, e: int) -> int:
    """The smallest other edge at the smaller endpoint of e."""
    v = min(L.ends(e))
    return min(g for g in L.incident(v) if g != e)


def eulerian_subgraph(
    G: MultiGraph, w: Mapping[int, int], e: int, f: int | None = None, engine: Engine | None = None
) -> EulerianResult:
    """Connected even subgraph through e (and f) of weight at least w(G)^r,
    or c*w(G)^r when f is given."""
    G.ends(e)
    if f is not None:
        G.ends(f)
    L, wL, exps = cubify(G, w)
    partner = partner_edge(L, e) if f is None else f
    res = long_cycle(L, wL, e, partner, engine=engine)
    back = {v: x.vertex for x in exps for v in x.attach}
    # an attachment vertex can itself come from an earlier expansion's cycle only
    # if it was re-expanded, which never happens since attachment vertices are cubic
    edges = tuple(sorted(g for g in res.cycle.edges if g in G.edges))
    verts = frozenset(back.get(v, v) for v in res.cycle.vertices)
    weight = sum(w.get(v, 0) for v in verts)
    total = sum(w.get(v, 0) for v in G.vertices)
    bnd = total**R if f is None else C * total**R
    return EulerianResult(edges, verts, weight, bnd, partner, res, L, exps)


def is_eulerian(G: MultiGraph, edges: tuple[int, ...]) -> bool:
    """Nonempty, connected and every vertex of even degree."""
    if not edges:
        return False
    deg: Counter[int] = Counter()
    for g in edges:
        a, b = G.ends(g)
        deg[a] += 1
        deg[b] += 1
    if any(d % 2 for d in deg.values()):
        return False
    H = MultiGraph(deg, {g: G.ends(g) for g in edges})
    return is_connected(H)
