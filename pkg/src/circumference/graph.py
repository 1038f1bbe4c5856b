"""Identity-preserving multigraphs and the three surgeries: contraction,
suppression of an edge, and insertion of an edge.

Vertex and edge ids are opaque integers. Every graph carries two watermarks
(``next_vertex``/``next_edge``); fresh ids are always taken from them, so ids
are never reused anywhere along a chain of surgeries and replaying the same
chain reproduces the same ids.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    pass


class LoopEdge(GraphError):
    pass


class DisconnectedPiece(GraphError):
    pass


class OverlappingPieces(GraphError):
    pass


class ParallelRemainder(GraphError):
    pass


class LoopWouldForm(GraphError):
    pass


class SameEdge(GraphError):
    pass


class ForeignEdge(GraphError):
    pass


class MultiGraph:
    """Loopless multigraph with stable vertex and edge ids. Treat as immutable."""

    __slots__ = ("_vertices", "_ends", "_inc", "next_vertex", "next_edge", "_key", "_hash")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Mapping[int, tuple[int, int]],
        next_vertex: int | None = None,
        next_edge: int | None = None,
    ):
        vs = frozenset(vertices)
        inc: dict[int, list[int]] = {v: [] for v in vs}
        ends: dict[int, tuple[int, int]] = {}
        for eid in sorted(edges):
            a, b = edges[eid]
            if a == b:
                raise LoopEdge(f"edge {eid} is a loop at {a}")
            if a not in inc or b not in inc:
                raise GraphError(f"edge {eid} has an endpoint outside the vertex set")
            ends[eid] = (a, b)
            inc[a].append(eid)
            inc[b].append(eid)
        self._vertices = vs
        self._ends = ends
        self._inc = {v: tuple(es) for v, es in inc.items()}
        top_v = max(vs, default=-1) + 1
        top_e = max(ends, default=-1) + 1
        self.next_vertex = top_v if next_vertex is None else max(next_vertex, top_v)
        self.next_edge = top_e if next_edge is None else max(next_edge, top_e)
        self._key = None
        self._hash = None

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def edges(self) -> Mapping[int, tuple[int, int]]:
        return self._ends

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self._ends)

    def __len__(self) -> int:
        return len(self._vertices)

    def ends(self, e: int) -> tuple[int, int]:
        try:
            return self._ends[e]
        except KeyError:
            raise ForeignEdge(f"edge {e} is not in the graph") from None

    def other(self, e: int, v: int) -> int:
        a, b = self._ends[e]
        return b if a == v else a

    def incident(self, v: int) -> tuple[int, ...]:
        return self._inc[v]

    def degree(self, v: int) -> int:
        return len(self._inc[v])

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self._inc[v]]

    def has_edge(self, e: int) -> bool:
        return e in self._ends

    def edges_between(self, a: int, b: int) -> list[int]:
        return [e for e in self._inc[a] if self.other(e, a) == b]

    def is_cubic(self) -> bool:
        return all(len(es) == 3 for es in self._inc.values())

    def has_parallel_edges(self) -> bool:
        seen = set()
        for a, b in self._ends.values():
            key = (a, b) if a < b else (b, a)
            if key in seen:
                return True
            seen.add(key)
        return False

    def adjacent_edges(self, e: int, f: int) -> bool:
        return bool(set(self._ends[e]) & set(self._ends[f]))

    def vertices_of(self, edges: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for e in edges:
            out.update(self._ends[e])
        return out

    def induced_edges(self, vertices: Iterable[int]) -> list[int]:
        vs = set(vertices)
        return [e for e, (a, b) in self._ends.items() if a in vs and b in vs]

    def components(self, removed_edges: Iterable[int] = (), within: Iterable[int] | None = None) -> list[set[int]]:
        gone = set(removed_edges)
        pool = set(self._vertices if within is None else within)
        comps = []
        while pool:
            root = min(pool)
            pool.discard(root)
            comp = {root}
            stack = [root]
            while stack:
                v = stack.pop()
                for e in self._inc[v]:
                    if e in gone:
                        continue
                    x = self.other(e, v)
                    if x in pool:
                        pool.discard(x)
                        comp.add(x)
                        stack.append(x)
            comps.append(comp)
        return comps

    # -- identity ------------------------------------------------------

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = (
                tuple(sorted(self._vertices)),
                tuple(self._ends.items()),
                self.next_vertex,
                self.next_edge,
            )
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiGraph) and self.key == other.key

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __repr__(self) -> str:
        return f"MultiGraph(order={self.order}, size={self.size})"

    def relabeled_signature(self) -> tuple:
        """Sorted degree/multiplicity profile; cheap isomorphism pre-filter."""
        mult: dict[tuple[int, int], int] = {}
        for a, b in self._ends.values():
            k = (a, b) if a < b else (b, a)
            mult[k] = mult.get(k, 0) + 1
        return (self.order, self.size, tuple(sorted(mult.values())), tuple(sorted(self.degree(v) for v in self._vertices)))


Weights = Mapping[int, int]


def total_weight(w: Weights, vertices: Iterable[int]) -> int:
    return sum(w.get(v, 0) for v in vertices)


@dataclass(frozen=True)
class Cycle:
    """Closed walk without repeated vertices; ``edges[i]`` joins ``vertices[i]`` and ``vertices[i+1]``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    def weight(self, w: Weights) -> int:
        return total_weight(w, self.vertices)

    def validate(self, G: MultiGraph) -> None:
        k = len(self.edges)
        if k < 2 or len(self.vertices) != k:
            raise GraphError("a cycle needs at least two edges and as many vertices")
        if len(set(self.vertices)) != k or len(set(self.edges)) != k:
            raise GraphError("cycle repeats a vertex or an edge")
        for i, e in enumerate(self.edges):
            a, b = G.ends(e)
            x, y = self.vertices[i], self.vertices[(i + 1) % k]
            if {a, b} != {x, y}:
                raise GraphError(f"edge {e} does not join {x} and {y}")

    def is_valid(self, G: MultiGraph) -> bool:
        try:
            self.validate(G)
        except GraphError:
            return False
        return True

    @classmethod
    def from_edges(cls, G: MultiGraph, edges: Iterable[int]) -> "Cycle":
        es = list(dict.fromkeys(edges))
        if len(es) < 2:
            raise GraphError("a cycle needs at least two edges")
        inc: dict[int, list[int]] = {}
        for e in es:
            for v in G.ends(e):
                inc.setdefault(v, []).append(e)
        if any(len(x) != 2 for x in inc.values()):
            raise GraphError("edge set is not 2-regular")
        start = es[0]
        v0 = G.ends(start)[0]
        verts, path = [v0], [start]
        v = G.other(start, v0)
        prev = start
        while v != v0:
            verts.append(v)
            a, b = inc[v]
            nxt = b if a == prev else a
            path.append(nxt)
            prev = nxt
            v = G.other(nxt, v)
        if len(path) != len(es):
            raise GraphError("edge set is not a single cycle")
        return cls(tuple(verts), tuple(path))


@dataclass(frozen=True)
class Provenance:
    """How a derived graph relates to its parent.

    ``edge_paths`` maps each new derived edge to the parent path it replaces,
    given as ``(vertices, edges)`` from one end to the other. Edges absent from
    the map keep their id and meaning. ``vertex_sets`` maps each new derived
    vertex to the parent vertices it stands for.
    """

    kind: str
    edge_paths: Mapping[int, tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=dict)
    vertex_sets: Mapping[int, frozenset[int]] = field(default_factory=dict)
    removed_edges: frozenset[int] = frozenset()
    removed_vertices: frozenset[int] = frozenset()
    new_edge: int | None = None


# -- surgeries --------------------------------------------------------------


def boundary(G: MultiGraph, X: Iterable[int]) -> set[int]:
    xs = set(X)
    return {e for e, (a, b) in G.edges.items() if (a in xs) != (b in xs)}


def contract(
    G: MultiGraph, components: Sequence[Iterable[int]], *, require_connected: bool = True
) -> tuple[MultiGraph, Provenance]:
    """Identify each vertex set to one fresh vertex; parallel edges stay, loops go."""
    groups = [frozenset(c) for c in components]
    owner: dict[int, int] = {}
    nv = G.next_vertex
    sets: dict[int, frozenset[int]] = {}
    for grp in groups:
        if not grp:
            raise GraphError("cannot contract an empty set")
        if not grp <= G.vertices:
            raise GraphError("contracted set contains foreign vertices")
        if require_connected and len(G.components(within=grp)) != 1:
            raise DisconnectedPiece(f"set {sorted(grp)} is not connected")
        for v in grp:
            if v in owner:
                raise OverlappingPieces(f"vertex {v} lies in two contracted sets")
            owner[v] = nv
        sets[nv] = grp
        nv += 1
    vertices = (G.vertices - owner.keys()) | sets.keys()
    edges = {}
    dropped = set()
    for e, (a, b) in G.edges.items():
        a2, b2 = owner.get(a, a), owner.get(b, b)
        if a2 == b2:
            dropped.add(e)
        else:
            edges[e] = (a2, b2)
    H = MultiGraph(vertices, edges, nv, G.next_edge)
    return H, Provenance("contract", vertex_sets=sets, removed_edges=frozenset(dropped))


def smooth(G: MultiGraph, deleted: Iterable[int], suppress: Iterable[int] | None = None) -> tuple[MultiGraph, Provenance]:
    """Delete edges, then suppress the listed degree-2 vertices (default: the
    endpoints of the deleted edges), merging the edges through each of them."""
    gone = set(deleted)
    for e in gone:
        G.ends(e)
    if suppress is None:
        sup = set(G.vertices_of(gone))
    else:
        sup = set(suppress)
    live: dict[int, list[int]] = {}
    for v in sup:
        es = [e for e in G.incident(v) if e not in gone]
        if len(es) != 2:
            raise GraphError(f"vertex {v} has degree {len(es)} after deletion; cannot suppress")
        live[v] = es
    used: set[int] = set()
    edges = {e: ab for e, ab in G.edges.items() if e not in gone}
    paths: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    ne = G.next_edge
    for v0 in sorted(sup):
        if live[v0][0] in used:
            continue
        # walk each way from v0 until leaving the suppressed set
        halves = []
        for start in live[v0]:
            vs, es = [], [start]
            prev, v = start, G.other(start, v0)
            while v in sup:
                if v == v0:
                    raise LoopWouldForm(f"suppressed vertices around {v0} close a cycle")
                vs.append(v)
                a, b = live[v]
                nxt = b if a == prev else a
                es.append(nxt)
                prev, v = nxt, G.other(nxt, v)
            halves.append((v, vs, es))
        (x, vs1, es1), (y, vs2, es2) = halves
        if x == y:
            raise LoopWouldForm(f"suppressing {v0} would create a loop at {x}")
        verts = (x, *reversed(vs1), v0, *vs2, y)
        path_edges = (*reversed(es1), *es2)
        for e in path_edges:
            used.add(e)
            edges.pop(e, None)
        edges[ne] = (x, y)
        paths[ne] = (verts, path_edges)
        ne += 1
    H = MultiGraph(G.vertices - sup, edges, G.next_vertex, ne)
    return H, Provenance("suppress", edge_paths=paths, removed_edges=frozenset(gone), removed_vertices=frozenset(sup))


def suppress_edge(G: MultiGraph, e: int) -> tuple[MultiGraph, Provenance]:
    """Delete ``e`` and suppress both of its endpoints."""
    a, b = G.ends(e)
    for v in (a, b):
        rest = [g for g in G.incident(v) if g != e]
        if len(rest) != 2:
            raise GraphError(f"endpoint {v} of edge {e} does not have degree 3")
        if set(G.ends(rest[0])) == set(G.ends(rest[1])):
            raise ParallelRemainder(f"edges {rest[0]} and {rest[1]} at {v} are parallel")
    return smooth(G, [e])


def insert_edge(H: MultiGraph, ei: int, ej: int, name: int | None = None) -> tuple[MultiGraph, Provenance]:
    """Subdivide ``ei`` and ``ej`` and join the two new vertices by a new edge."""
    if ei == ej:
        raise SameEdge("cannot insert between an edge and itself")
    H.ends(ei)
    H.ends(ej)
    s, t = H.next_vertex, H.next_vertex + 1
    ne = H.next_edge
    if name is None:
        name = ne
        ne += 1
    elif name in H.edges:
        raise GraphError(f"edge id {name} already in use")
    edges = {e: ab for e, ab in H.edges.items() if e not in (ei, ej)}
    halves: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for old, mid in ((ei, s), (ej, t)):
        a, b = H.ends(old)
        h1, h2 = ne, ne + 1
        ne += 2
        edges[h1] = (a, mid)
        edges[h2] = (mid, b)
        halves[h1] = ((a, b), (old,))
        halves[h2] = ((a, b), (old,))
    edges[name] = (s, t)
    G = MultiGraph(H.vertices | {s, t}, edges, s + 2, max(ne, name + 1))
    return G, Provenance(
        "insert",
        edge_paths=halves,
        vertex_sets={s: frozenset(), t: frozenset()},
        removed_edges=frozenset((ei, ej)),
        new_edge=name,
    )


def induced_with_edge(G: MultiGraph, vertices: Iterable[int], a: int, b: int) -> tuple[MultiGraph, int]:
    """Induced subgraph on ``vertices`` plus one fresh edge ``a``-``b``."""
    vs = set(vertices)
    edges = {e: ab for e, ab in G.edges.items() if ab[0] in vs and ab[1] in vs}
    ne = G.next_edge
    edges[ne] = (a, b)
    return MultiGraph(vs, edges, G.next_vertex, ne + 1), ne


def isomorphic(G: MultiGraph, H: MultiGraph) -> bool:
    """Brute-force multigraph isomorphism for small graphs."""
    if G.relabeled_signature() != H.relabeled_signature():
        return False

    def mult(X: MultiGraph) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for a, b in X.edges.values():
            k = (a, b) if a < b else (b, a)
            out[k] = out.get(k, 0) + 1
        return out

    mg, mh = mult(G), mult(H)
    gv = sorted(G.vertices)
    hv = sorted(H.vertices)
    nbr_h = {v: set(H.neighbors(v)) for v in hv}

    def extend(assign: dict[int, int], used: set[int]) -> bool:
        if len(assign) == len(gv):
            return True
        v = gv[len(assign)]
        for x in hv:
            if x in used or G.degree(v) != H.degree(x):
                continue
            ok = True
            for u, y in assign.items():
                k1 = (u, v) if u < v else (v, u)
                k2 = (x, y) if x < y else (y, x)
                if mg.get(k1, 0) != mh.get(k2, 0):
                    ok = False
                    break
            if ok:
                assign[v] = x
                used.add(x)
                if extend(assign, used):
                    return True
                del assign[v]
                used.discard(x)
        return False

    del nbr_h
    return extend({}, set())
