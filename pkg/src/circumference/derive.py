"""Chains of surgeries with bookkeeping back to the base graph, and lifting of
cycles from the end of a chain to its base."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .graph import (
    Cycle,
    ForeignEdge,
    GraphError,
    MultiGraph,
    OverlappingPieces,
    Provenance,
    contract,
    insert_edge,
    smooth,
    suppress_edge,
)

_CACHE: dict = {}
_CACHE_LIMIT = 100_000


def _cached(parent: MultiGraph, op: tuple, build: Callable[[], tuple[MultiGraph, Provenance]]):
    key = (parent, op)
    hit = _CACHE.get(key)
    if hit is None:
        if len(_CACHE) >= _CACHE_LIMIT:
            _CACHE.clear()
        hit = build()
        _CACHE[key] = hit
    return hit


def clear_cache() -> None:
    _CACHE.clear()


@dataclass(frozen=True)
class Step:
    kind: str
    parent: MultiGraph
    child: MultiGraph
    prov: Provenance
    roles: Mapping[int, str] = field(default_factory=dict)
    op: tuple = ()
    images: Mapping[int, int | None] = field(default_factory=dict)


class DerivationScript:
    """Surgeries applied in order to ``base``, addressed either by base ids
    (``contract``, ``suppress``, ``smooth``) or by current ids (``*_current``)."""

    def __init__(self, base: MultiGraph, track: Iterable[int] = ()):
        self.base = base
        self.track = tuple(track)
        self.ever: dict[int, frozenset[int]] = {}
        self.graph = base
        self.steps: list[Step] = []
        self._vmap: dict[int, int | None] = {v: v for v in base.vertices}
        self._emap: dict[int, int | None] = {e: e for e in base.edges}
        self._members: dict[int, frozenset[int]] = {v: frozenset((v,)) for v in base.vertices}
        self._expand: dict[int, frozenset[int]] = {e: frozenset((e,)) for e in base.edges}

    # -- lookups ---------------------------------------------------------

    def vertex_of(self, v: int) -> int | None:
        return self._vmap[v]

    def edge_of(self, e: int) -> int | None:
        return self._emap[e]

    def members(self, cv: int) -> frozenset[int]:
        """Base vertices represented by current vertex ``cv``."""
        return self._members[cv]

    def expansion(self, ce: int) -> frozenset[int]:
        """Base edges absorbed into current edge ``ce``."""
        return self._expand[ce]

    def current_set(self, base_vertices: Iterable[int]) -> frozenset[int]:
        bs = frozenset(base_vertices)
        out = set()
        for b in bs:
            cv = self._vmap[b]
            if cv is None:
                raise GraphError(f"base vertex {b} no longer exists")
            out.add(cv)
        for cv in out:
            if not self._members[cv] <= bs:
                raise OverlappingPieces(f"current vertex {cv} is only partly inside the set")
        return frozenset(out)

    # -- surgeries -------------------------------------------------------

    def contract(self, *base_sets: Iterable[int], role: str = "piece") -> list[int]:
        return self.contract_current(*(self.current_set(s) for s in base_sets), role=role)

    def contract_current(self, *sets: Iterable[int], role: str = "piece") -> list[int]:
        groups = tuple(tuple(sorted(s)) for s in sets)
        G = self.graph
        images = self._snapshot()
        child, prov = _cached(G, ("contract", groups), lambda: contract(G, [set(g) for g in groups]))
        new = sorted(prov.vertex_sets)
        for nv in new:
            grp = prov.vertex_sets[nv]
            mem = frozenset().union(*(self._members.pop(v) for v in grp))
            self._members[nv] = mem
            self.ever[nv] = mem
            for b in mem:
                self._vmap[b] = nv
        for g in prov.removed_edges:
            for b in self._expand.pop(g):
                self._emap[b] = None
        self._push(Step("contract", G, child, prov, {nv: role for nv in new}, ("contract", groups, role), images))
        return new

    def suppress(self, base_edge: int) -> list[int]:
        ce = self._emap[base_edge]
        if ce is None:
            raise GraphError(f"base edge {base_edge} no longer exists")
        return self.suppress_current(ce)

    def suppress_current(self, ce: int) -> list[int]:
        G = self.graph
        images = self._snapshot()
        child, prov = _cached(G, ("suppress", ce), lambda: suppress_edge(G, ce))
        return self._after_smooth(G, child, prov, ("suppress", ce), images)

    def smooth(self, base_edges: Iterable[int]) -> list[int]:
        ces = []
        for b in base_edges:
            ce = self._emap[b]
            if ce is None:
                raise GraphError(f"base edge {b} no longer exists")
            ces.append(ce)
        return self.smooth_current(ces)

    def smooth_current(self, ces: Iterable[int]) -> list[int]:
        G = self.graph
        key = tuple(sorted(set(ces)))
        images = self._snapshot()
        child, prov = _cached(G, ("smooth", key), lambda: smooth(G, key))
        return self._after_smooth(G, child, prov, ("smooth", key), images)

    def insert_current(self, ei: int, ej: int, name: int | None = None) -> int:
        G = self.graph
        images = self._snapshot()
        child, prov = _cached(G, ("insert", ei, ej, name), lambda: insert_edge(G, ei, ej, name))
        for h, (_, (old,)) in prov.edge_paths.items():
            self._expand[h] = self._expand.get(old, frozenset())
        for old in (ei, ej):
            exp = self._expand.pop(old)
            h = min(k for k, (_, p) in prov.edge_paths.items() if p == (old,))
            for b in exp:
                self._emap[b] = h
        self._expand[prov.new_edge] = frozenset()
        for nv in prov.vertex_sets:
            self._members[nv] = frozenset()
        self._push(Step("insert", G, child, prov, {}, ("insert", ei, ej, name), images))
        return prov.new_edge

    def _snapshot(self) -> dict[int, int | None]:
        return {b: self._emap[b] for b in self.track}

    def _after_smooth(self, G, child, prov, op, images) -> list[int]:
        for g in prov.removed_edges:
            for b in self._expand.pop(g):
                self._emap[b] = None
        for v in prov.removed_vertices:
            for b in self._members.pop(v):
                self._vmap[b] = None
        for new, (_, pe) in prov.edge_paths.items():
            mem = frozenset().union(*(self._expand.pop(g) for g in pe))
            self._expand[new] = mem
            for b in mem:
                self._emap[b] = new
        self._push(Step("suppress", G, child, prov, {}, op, images))
        return sorted(prov.edge_paths)

    def _push(self, step: Step) -> None:
        self.steps.append(step)
        self.graph = step.child

    # -- replay ----------------------------------------------------------

    def replay(self) -> MultiGraph:
        """Re-apply every recorded operation to the base without the cache."""
        G = self.base
        for st in self.steps:
            op = st.op
            if op[0] == "contract":
                G, _ = contract(G, [set(g) for g in op[1]])
            elif op[0] == "suppress":
                G, _ = suppress_edge(G, op[1])
            elif op[0] == "smooth":
                G, _ = smooth(G, op[1])
            else:
                G, _ = insert_edge(G, op[1], op[2], op[3])
        return G

    def describe(self) -> list[dict]:
        out = []
        for st in self.steps:
            op = st.op
            if op[0] == "contract":
                out.append({"op": "contract", "sets": [list(g) for g in op[1]], "role": op[2]})
            elif op[0] == "suppress":
                out.append({"op": "suppress", "edge": op[1]})
            elif op[0] == "smooth":
                out.append({"op": "smooth", "edges": list(op[1])})
            else:
                out.append({"op": "insert", "edges": [op[1], op[2]], "name": op[3]})
        return out


# -- lifting ---------------------------------------------------------------


@dataclass
class Visit:
    """A pass of the cycle through a contracted vertex that was left open."""

    step: int
    vertex: int
    members: set[int]
    entry: int
    exit: int
    role: str


@dataclass
class Lifted:
    cycle: Cycle | None
    fragments: list[tuple[tuple[int, ...], tuple[int, ...]]]
    visits: list[Visit]


Completer = Callable[[int, Step, int, int, int], tuple[Iterable[int], Iterable[int]]]


def _is_gap(x) -> bool:
    return isinstance(x, Visit)


def _touches(item, v: int) -> bool:
    return item == v if not _is_gap(item) else v in item.members


def lift_cycle(script: DerivationScript, C: Cycle, complete: Completer | None = None) -> Lifted:
    """Carry a cycle of ``script.graph`` back to ``script.base``.

    Merged edges are replaced by the paths they stand for. Each pass through a
    contracted vertex is handed to ``complete`` (which returns the inner path,
    vertices then edges, from the entry edge's end to the exit edge's end); without
    a completer the pass is left as an open visit.
    """
    for g in C.edges:
        if not script.graph.has_edge(g):
            raise ForeignEdge(f"edge {g} is not in the derived graph")
    verts: list = list(C.vertices)
    edges: list[int] = list(C.edges)
    gaps: list[Visit] = []
    for idx in range(len(script.steps) - 1, -1, -1):
        st = script.steps[idx]
        prov = st.prov
        if st.kind == "suppress":
            paths = prov.edge_paths
            nv, ne = [], []
            k = len(edges)
            for j in range(k):
                v, g, nxt = verts[j], edges[j], verts[(j + 1) % k]
                nv.append(v)
                if g not in paths:
                    ne.append(g)
                    continue
                pv, pe = paths[g]
                if not _is_gap(v):
                    fwd = v == pv[0]
                elif not _is_gap(nxt):
                    fwd = nxt == pv[-1]
                else:
                    fwd = pv[0] in v.members
                if not fwd:
                    pv, pe = pv[::-1], pe[::-1]
                for t in range(len(pe)):
                    ne.append(pe[t])
                    if t + 1 < len(pe):
                        nv.append(pv[t + 1])
            verts, edges = nv, ne
        elif st.kind == "insert":
            if prov.new_edge in edges:
                raise ForeignEdge("cycle uses the inserted edge and cannot be carried back")
            subs = set(prov.vertex_sets)
            nv, ne = [], []
            k = len(edges)
            for j in range(k):
                if verts[j] in subs:
                    continue
                nv.append(verts[j])
                g = edges[j]
                if g in prov.edge_paths:
                    g = prov.edge_paths[g][1][0]
                ne.append(g)
            verts, edges = nv, ne
        else:
            sets = prov.vertex_sets
            for gp in gaps:
                hit = [v for v in gp.members if v in sets]
                for v in hit:
                    gp.members.discard(v)
                    gp.members.update(sets[v])
            nv, ne = [], []
            k = len(edges)
            for j in range(k):
                v = verts[j]
                if _is_gap(v) or v not in sets:
                    nv.append(v)
                    ne.append(edges[j])
                    continue
                entry, exit_ = edges[j - 1], edges[j]
                if complete is None:
                    gp = Visit(idx, v, set(sets[v]), entry, exit_, st.roles.get(v, "piece"))
                    gaps.append(gp)
                    nv.append(gp)
                    ne.append(exit_)
                    continue
                pv, pe = complete(idx, st, v, entry, exit_)
                pv, pe = list(pv), list(pe)
                mem = sets[v]
                P = st.parent
                if pv[0] not in P.ends(entry) or pv[-1] not in P.ends(exit_) or not set(pv) <= mem:
                    raise GraphError(f"completion inside contracted vertex {v} does not fit")
                nv.extend(pv)
                ne.extend(pe)
                ne.append(exit_)
            verts, edges = nv, ne
    if not gaps:
        cyc = Cycle(tuple(verts), tuple(edges))
        cyc.validate(script.base)
        return Lifted(cyc, [(cyc.vertices, cyc.edges)], [])
    # split into open runs between visits
    k = len(edges)
    start = next(j for j in range(k) if _is_gap(verts[j]))
    frags = []
    run_v: list[int] = []
    run_e: list[int] = []
    for t in range(k):
        j = (start + t) % k
        v = verts[j]
        if _is_gap(v):
            if run_e:
                frags.append((tuple(run_v), tuple(run_e)))
            run_v, run_e = [], [edges[j]]
        else:
            run_v.append(v)
            run_e.append(edges[j])
    if run_e:
        frags.append((tuple(run_v), tuple(run_e)))
    return Lifted(None, frags, gaps)
