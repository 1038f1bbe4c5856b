"""Recursive construction of a heavy cycle through two prescribed edges.

``long_cycle`` reduces the instance through small edge cuts and, once none
apply, splits the graph into the maximal 3-boundary sides around the terminal
vertices. Each candidate is a surgery script followed by a recursive call on a
strictly smaller graph; the first candidate whose lifted cycle meets the bound
wins. Contracted sides are re-entered by recursing on the side with its
outside contracted to one vertex.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from .bounds import bound
from .cuts import (
    PreconditionViolated,
    edge_connectivity_at_least,
    enumerate_3_edge_cuts,
    find_2_edge_cut_separating,
    find_3_edge_cut_separating,
    is_3_connected,
    is_nontrivial,
    maximal_3cut_side,
    separates,
    two_edge_cuts,
)
from .derive import DerivationScript, Step, _cached, lift_cycle
from .graph import (
    Cycle,
    GraphError,
    MultiGraph,
    boundary,
    contract,
    induced_with_edge,
    smooth,
    suppress_edge,
    total_weight,
)
from .search import cycle_through_two_edges, neighbor_suppression_cycle, simple_paths

TOL = 1e-9
WEIGHT_CAP = 2**31


class InternalBoundMiss(RuntimeError):
    """No candidate reached the bound; carries the partial trace."""

    def __init__(self, message: str, trace: "TraceNode"):
        super().__init__(message)
        self.trace = trace


class ClaimViolated(RuntimeError):
    """A structural fact the construction relies on failed to hold."""


# -- trace -----------------------------------------------------------------

COUNTED = ("reduction", "check", "case")


@dataclass
class TraceNode:
    order: int
    e: int
    f: int
    adjacent: bool
    total: int
    bound: float
    label: str = ""
    weight: int | None = None
    events: list[dict] = field(default_factory=list)
    children: list["TraceNode"] = field(default_factory=list)

    def event(self, kind: str, label: str | None = None, **detail) -> dict:
        ev = {"kind": kind}
        if label is not None:
            ev["label"] = label
        ev.update(detail)
        self.events.append(ev)
        return ev

    def walk(self) -> Iterator["TraceNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def histogram(self) -> Counter:
        """How often each branch label fired anywhere in the tree."""
        out: Counter = Counter()
        for node in self.walk():
            for ev in node.events:
                if ev["kind"] in COUNTED:
                    out[ev["label"]] += 1
        return out

    def winners(self) -> list[str]:
        return [ev["name"] for ev in self.events if ev["kind"] == "candidate" and ev.get("winner")]

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "e": self.e,
            "f": self.f,
            "adjacent": self.adjacent,
            "total": self.total,
            "bound": self.bound,
            "weight": self.weight,
            "label": self.label,
            "events": self.events,
            "children": [c.to_dict() for c in self.children],
        }


@dataclass
class CycleResult:
    cycle: Cycle
    weight: int
    bound: float
    adjacent: bool
    trace: TraceNode

    @property
    def kind(self) -> str:
        return "adjacent" if self.adjacent else "nonadjacent"

    def to_dict(self, trace: bool = True) -> dict:
        out = {
            "kind": self.kind,
            "weight": self.weight,
            "bound": self.bound,
            "vertices": list(self.cycle.vertices),
            "edges": list(self.cycle.edges),
        }
        if trace:
            out["trace"] = self.trace.to_dict()
        return out


# -- helpers ---------------------------------------------------------------


def zero_terminal_weights(G: MultiGraph, w: Mapping[int, int], e: int, f: int) -> tuple[dict[int, int], int]:
    """Weights with the endpoints of e and f set to 0, and the weight removed."""
    ends = set(G.ends(e)) | set(G.ends(f))
    w0 = sum(w.get(v, 0) for v in ends)
    out = {v: x for v, x in w.items() if v not in ends}
    return out, w0


def _internal(G: MultiGraph, g: int, side: frozenset[int]) -> bool:
    a, b = G.ends(g)
    return a in side and b in side


def _terminal_piece(G: MultiGraph, e: int, f: int):
    """Smallest side of a nontrivial 3-cut through e or f holding neither edge inside."""
    best = None
    for t in (e, f):
        for cs in enumerate_3_edge_cuts(G, containing=t):
            if not is_nontrivial(G, cs):
                continue
            for side in (cs.side, G.vertices - cs.side):
                side = frozenset(side)
                if _internal(G, e, side) or _internal(G, f, side):
                    continue
                key = (len(side), sorted(cs.cut_edges), sorted(side))
                if best is None or key < best[0]:
                    best = (key, side, frozenset(cs.cut_edges))
    return None if best is None else (best[1], best[2])


def _permute(lab: dict, mapping: Mapping[str, str]) -> dict:
    return {k: lab[mapping.get(k, k)] for k in lab}


def _swap(*pairs: tuple[str, str]) -> dict[str, str]:
    m = {}
    for a, b in pairs:
        m[a], m[b] = b, a
    return m


# adjacent labelling: u1 -e- u2 -f- u3, e1,e2 at u1, e3,e4 at u3, e5 at u2
_ADJ_MIRROR = _swap(("u1", "u3"), ("e", "f"), ("e1", "e3"), ("e2", "e4"), ("X1", "X3"), ("X2", "X4"))
_ADJ_S12 = _swap(("e1", "e2"), ("X1", "X2"))
_ADJ_S34 = _swap(("e3", "e4"), ("X3", "X4"))


def _adj_labelings(lab: dict, mirror: bool = True) -> Iterator[tuple[int, dict]]:
    for bits in range(8):
        if not mirror and bits & 1:
            continue
        out = lab
        if bits & 1:
            out = _permute(out, _ADJ_MIRROR)
        if bits & 2:
            out = _permute(out, _ADJ_S12)
        if bits & 4:
            out = _permute(out, _ADJ_S34)
        yield bits, out


def _pos(i: int, j: int) -> str:
    return f"{i}{j}"


def _nonadj_maps() -> list[tuple[int, list[dict[str, str]]]]:
    mirror = {"u1": "u3", "u2": "u4", "u3": "u1", "u4": "u2", "e": "f", "f": "e"}
    for i in range(1, 5):
        k = (i + 1) % 4 + 1
        for j in (1, 2):
            mirror["e" + _pos(i, j)] = "e" + _pos(k, j)
            mirror["X" + _pos(i, j)] = "X" + _pos(k, j)

    def swap_u(a, b):
        m = {f"u{a}": f"u{b}", f"u{b}": f"u{a}"}
        for j in (1, 2):
            for p in "eX":
                m[p + _pos(a, j)] = p + _pos(b, j)
                m[p + _pos(b, j)] = p + _pos(a, j)
        return m

    def swap_j(i):
        return {p + _pos(i, 1): p + _pos(i, 2) for p in "eX"} | {p + _pos(i, 2): p + _pos(i, 1) for p in "eX"}

    gens = [mirror, swap_u(1, 2), swap_u(3, 4)] + [swap_j(i) for i in range(1, 5)]
    out = []
    for bits in range(128):
        out.append((bits, [g for t, g in enumerate(gens) if bits >> t & 1]))
    return out


_NONADJ_GROUP = _nonadj_maps()
_POSITIONS = [_pos(i, j) for i in range(1, 5) for j in (1, 2)]


def _compose(maps: list[dict[str, str]]) -> dict[str, str]:
    # the name whose value lands on each key after applying maps in order
    names = ["e", "f"] + [f"u{i}" for i in range(1, 5)] + [p + q for p in "eX" for q in _POSITIONS]
    out = {k: k for k in names}
    for m in maps:
        out = {k: out[m.get(k, k)] for k in names}
    return out


_NONADJ_COMPOSED = [(bits, _compose(maps)) for bits, maps in _NONADJ_GROUP]


def _nonadj_labelings(lab: dict) -> Iterator[tuple[int, dict]]:
    for bits, src in _NONADJ_COMPOSED:
        yield bits, {k: lab[v] for k, v in src.items()}


@dataclass
class _Call:
    G: MultiGraph
    w: dict[int, int]
    e: int
    f: int
    adjacent: bool
    total: int
    bound: float
    w0: int
    node: TraceNode

    def x(self, vs: Iterable[int]) -> int:
        return total_weight(self.w, vs)


@dataclass
class _Struct:
    kind: str
    data: dict = field(default_factory=dict)
    checks: list[str] = field(default_factory=list)


Build = Callable[[DerivationScript], Cycle]


# -- engine ----------------------------------------------------------------


class Engine:
    """Recursive solver with structural caches and an optional result memo.

    With ``exhaustive`` set, every candidate of a branch is built and checked
    after the first one meets the bound; the extra ones are logged as scouted
    candidates and never change the result.
    """

    def __init__(self, memo: bool = True, limit: int = 200_000, exhaustive: bool = False):
        self.memo: dict | None = {} if memo else None
        self.limit = limit
        self.exhaustive = exhaustive
        self._structs: dict = {}
        self._conn: dict = {}

    def clear(self) -> None:
        if self.memo is not None:
            self.memo.clear()
        self._structs.clear()
        self._conn.clear()

    # -- shared plumbing -------------------------------------------------

    def three_connected(self, G: MultiGraph) -> bool:
        hit = self._conn.get(G)
        if hit is None:
            if len(self._conn) >= self.limit:
                self._conn.clear()
            hit = self._conn[G] = is_3_connected(G)
        return hit

    def _struct(self, key, build):
        hit = self._structs.get(key)
        if hit is None:
            if len(self._structs) >= self.limit:
                self._structs.clear()
            hit = self._structs[key] = build()
        return hit

    def solve(self, G: MultiGraph, w: Mapping[int, int], e: int, f: int) -> tuple[Cycle, TraceNode]:
        key = None
        if self.memo is not None:
            wkey = tuple(sorted((v, x) for v, x in w.items() if x and v in G.vertices))
            key = (G, e, f, wkey)
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        adj = G.adjacent_edges(e, f)
        W = total_weight(w, G.vertices)
        b = bound(adj, W)
        node = TraceNode(G.order, e, f, adj, W, b)
        wz, w0 = zero_terminal_weights(G, w, e, f)
        call = _Call(G, wz, e, f, adj, W, b, w0, node)
        if G.order == 2:
            a, c = sorted(G.vertices)
            cyc = Cycle((a, c), (e, f)) if G.ends(e)[0] == a else Cycle((c, a), (e, f))
            node.label = "base"
            node.event("case", "base")
        elif W == w0:
            cyc = cycle_through_two_edges(G, e, f)
            node.label = "zero_weight"
            node.event("case", "zero_weight")
        elif adj:
            cyc = self._adjacent(call)
        else:
            cyc = self._nonadjacent(call)
        cyc.validate(G)
        if e not in cyc.edges or f not in cyc.edges:
            raise AssertionError("cycle misses a prescribed edge")
        node.weight = cyc.weight(w)
        if node.weight + TOL < b:
            raise InternalBoundMiss(f"weight {node.weight} below bound {b:.6f}", node)
        out = (cyc, node)
        if key is not None:
            if len(self.memo) >= self.limit:
                self.memo.clear()
            self.memo[key] = out
        return out

    def _recurse(self, call: _Call, script: DerivationScript, e2: int | None, f2: int | None) -> Cycle:
        D = script.graph
        if e2 is None or f2 is None:
            raise GraphError("a prescribed edge did not survive the surgery")
        if e2 == f2:
            raise GraphError("prescribed edges were merged into one")
        if D.order >= call.G.order:
            raise AssertionError(f"no descent: {D.order} >= {call.G.order}")
        return self._child(call, D, e2, f2)

    def _child(self, call: _Call, D: MultiGraph, e2: int, f2: int) -> Cycle:
        wD = {v: x for v, x in call.w.items() if x and v in D.vertices}
        cyc, child = self.solve(D, wD, e2, f2)
        call.node.children.append(child)
        return cyc

    def _accept(self, call: _Call, name: str, cyc: Cycle | None, **detail) -> bool:
        if cyc is None:
            call.node.event("candidate", name=name, winner=False, **detail)
            return False
        got = cyc.weight(call.w) + call.w0
        ok = got + TOL >= call.bound
        call.node.event("candidate", name=name, weight=got, bound=call.bound, winner=ok, **detail)
        return ok

    def _attempt(self, call: _Call, name: str, build: Build) -> Cycle | None:
        script = DerivationScript(call.G, track=(call.e, call.f))
        try:
            derived = build(script)
            cyc = self._lift(call, script, derived)
        except GraphError as exc:
            call.node.event(
                "candidate", name=name, winner=False, error=f"{type(exc).__name__}: {exc}", script=script.describe()
            )
            return None
        return cyc if self._accept(call, name, cyc, script=script.describe()) else None

    def _first(self, call: _Call, label: str, candidates: Iterable[tuple[str, Build]]) -> Cycle:
        call.node.label = label
        found = None
        for name, build in candidates:
            if found is not None:
                self._scout(call, name, build)
                continue
            cyc = self._attempt(call, name, build)
            if cyc is not None:
                if not self.exhaustive:
                    return cyc
                found = cyc
        if found is not None:
            return found
        raise InternalBoundMiss(f"no candidate met the bound under {label}", call.node)

    def _scout(self, call: _Call, name: str, build: Build) -> None:
        # a candidate evaluated only for the record; its subtree is not kept
        node = call.node
        kids = len(node.children)
        script = DerivationScript(call.G, track=(call.e, call.f))
        try:
            cyc = self._lift(call, script, build(script))
            cyc.validate(call.G)
            if call.e not in cyc.edges or call.f not in cyc.edges:
                raise AssertionError("scouted cycle misses a prescribed edge")
            got = cyc.weight(call.w) + call.w0
            node.event("candidate", name=name, weight=got, bound=call.bound, winner=False, scouted=True, met=got + TOL >= call.bound)
        except (GraphError, InternalBoundMiss, ClaimViolated) as exc:
            node.event("candidate", name=name, winner=False, scouted=True, error=f"{type(exc).__name__}: {exc}")
        del node.children[kids:]

    # -- lifting ---------------------------------------------------------

    def _lift(self, call: _Call, script: DerivationScript, derived: Cycle) -> Cycle:
        def complete(idx: int, step: Step, v: int, entry: int, exit_: int):
            A = step.prov.vertex_sets[v]
            P = step.parent
            x_in = next(x for x in P.ends(entry) if x in A)
            x_out = next(x for x in P.ends(exit_) if x in A)
            if len(A) == 1:
                return (x_in,), ()
            if step.roles.get(v) == "core":
                return self._core_path(call, script, step, A, x_in, x_out)
            return self._piece_path(call, P, A, entry, exit_)

        return lift_cycle(script, derived, complete).cycle

    def _piece_path(self, call: _Call, P: MultiGraph, A: frozenset[int], entry: int, exit_: int):
        Q, prov = _cached(P, ("piece", tuple(sorted(A))), lambda: contract(P, [P.vertices - A], require_connected=False))
        (o,) = prov.vertex_sets
        if Q.order >= call.G.order:
            raise AssertionError("piece graph is not smaller")
        cyc = self._child(call, Q, entry, exit_)
        k = len(cyc.edges)
        i = cyc.vertices.index(o)
        vs = [cyc.vertices[(i + 1 + t) % k] for t in range(k - 1)]
        es = [cyc.edges[(i + 1 + t) % k] for t in range(k - 2)]
        if cyc.edges[i] != entry:
            vs.reverse()
            es.reverse()
        return vs, es

    def _core_path(self, call: _Call, script: DerivationScript, step: Step, A, x_in: int, x_out: int):
        P = step.parent
        need = []
        for b in (call.e, call.f):
            g = step.images.get(b)
            if g is not None and _internal(P, g, A):
                need.append(g)

        def value(v: int) -> int:
            return total_weight(call.w, script.ever.get(v, (v,)))

        best, top = None, -1
        for pv, pe in simple_paths(P, x_in, x_out, required=need, within=A):
            val = sum(value(v) for v in pv)
            if val > top:
                best, top = (pv, pe), val
        if best is None:
            raise GraphError("no path through the contracted core")
        return best

    # -- adjacent edges --------------------------------------------------

    def _adj_struct(self, G: MultiGraph, e: int, f: int) -> _Struct:
        return self._struct(("adj", G, e, f), lambda: self._build_adj(G, e, f))

    def _side_ok(self, G: MultiGraph, X: frozenset[int], g: int) -> bool:
        H, prov = contract(G, [X])
        H2, _ = suppress_edge(H, g)
        return self.three_connected(H2)

    def _build_adj(self, G: MultiGraph, e: int, f: int) -> _Struct:
        (u2,) = set(G.ends(e)) & set(G.ends(f))
        u1, u3 = G.other(e, u2), G.other(f, u2)
        hit = _terminal_piece(G, e, f)
        if hit is not None:
            return _Struct("terminal_3cut", {"piece": hit[0], "cut": hit[1]})
        e1, e2 = sorted(g for g in G.incident(u1) if g != e)
        e3, e4 = sorted(g for g in G.incident(u3) if g != f)
        (e5,) = [g for g in G.incident(u2) if g not in (e, f)]
        common = sorted({e1, e2} & {e3, e4})
        if common:
            g = common[0]
            a = e2 if e1 == g else e1
            c = e4 if e3 == g else e3
            return _Struct("triangle", {"core": frozenset((u1, u2, u3)), "edges": (a, c), "shared": g})
        U = {u1, u2, u3}
        es = {1: e1, 2: e2, 3: e3, 4: e4, 5: e5}
        X = {i: maximal_3cut_side(G, es[i], U).side for i in es}
        st = _Struct("sides")
        for i in es:
            if not self._side_ok(G, X[i], es[i]):
                raise ClaimViolated(f"contracting side {i} and suppressing its edge is not 3-connected")
        st.checks.append("adjacent.sides_unique")
        if X[1] & X[2] or X[3] & X[4] or any(X[5] & X[i] for i in (1, 2, 3, 4)):
            raise ClaimViolated("sides around the path overlap")
        st.checks.append("adjacent.sides_disjoint")
        for a, b in ((1, 2), (3, 4)):
            if any((x in X[a] and y in X[b]) or (x in X[b] and y in X[a]) for x, y in G.edges.values()):
                raise ClaimViolated(f"sides {a} and {b} are joined by an edge")
        st.checks.append("adjacent.sides_apart")
        lab = {"u1": u1, "u2": u2, "u3": u3, "e": e, "f": f}
        lab |= {f"e{i}": es[i] for i in es} | {f"X{i}": X[i] for i in X}
        if not ((X[1] | X[2]) & (X[3] | X[4])):
            st.kind = "disjoint_pairs"
            covered = U.union(*X.values())
            st.data = {"lab": lab, "z_empty": covered == G.vertices}
            return st
        st.kind = "shared_side"
        for _, L in _adj_labelings(lab, mirror=False):
            if L["X2"] & L["X4"]:
                lab = L
                break
        if lab["X2"] != lab["X4"]:
            raise ClaimViolated("overlapping sides differ")
        data = {"lab": lab}
        if lab["X1"] & lab["X3"]:
            if lab["X1"] != lab["X3"]:
                raise ClaimViolated("overlapping sides differ")
            data["exit"] = "double"
        else:
            Y1 = lab["X2"]
            (e6,) = sorted(boundary(G, Y1) - {lab["e2"], lab["e4"]})
            Y2 = maximal_3cut_side(G, e6, Y1 | U).side
            if Y2 & (lab["X1"] | lab["X3"]):
                raise ClaimViolated("second shared side meets a side at the ends")
            data |= {"Y1": Y1, "Y2": Y2, "e6": e6}
            data["exit"] = "via_x5" if Y2 & lab["X5"] else None
        st.data = data
        return st

    def _adjacent(self, call: _Call) -> Cycle:
        G, node = call.G, call.node
        st = self._adj_struct(G, call.e, call.f)
        e, f = call.e, call.f
        if st.kind == "terminal_3cut":
            piece, cut = st.data["piece"], st.data["cut"]
            node.event("reduction", "adjacent.terminal_3cut", cut=sorted(cut), side=sorted(piece))

            def build(s):
                s.contract(piece)
                return self._recurse(call, s, s.edge_of(e), s.edge_of(f))

            return self._first(call, "adjacent.terminal_3cut", [("terminal_3cut", build)])
        if st.kind == "triangle":
            a, c = st.data["edges"]
            node.event("reduction", "adjacent.triangle", shared=st.data["shared"])

            def build(s):
                s.contract(st.data["core"], role="core")
                return self._recurse(call, s, s.edge_of(a), s.edge_of(c))

            return self._first(call, "adjacent.triangle", [("triangle", build)])
        for label in st.checks:
            node.event("check", label)
        if st.kind == "disjoint_pairs":
            return self._adj_disjoint(call, st)
        return self._adj_shared(call, st)

    def _adj_disjoint(self, call: _Call, st: _Struct) -> Cycle:
        G, node = call.G, call.node
        x = lambda L, i: call.x(L[f"X{i}"])
        for bits, L in _adj_labelings(st.data["lab"]):
            xs = [x(L, i) for i in (1, 2, 3, 4)]
            if xs[0] == min(xs) and xs[2] <= xs[3]:
                break
        node.event("relabel", perm=bits)
        node.event("case", "adjacent.disjoint_pairs")
        X = {i: L[f"X{i}"] for i in range(1, 6)}
        E = {i: L[f"e{i}"] for i in range(1, 6)}
        e, f = L["e"], L["f"]

        def side_edge(i: int) -> int:
            return min(boundary(G, X[i]) - {E[i]})

        def reduced(first: int, second: int | None, partner: Callable[[DerivationScript], int | None]):
            def build(s):
                s.contract(X[first])
                s.suppress(E[first])
                if second is not None:
                    s.contract(X[second])
                return self._recurse(call, s, s.edge_of(e), partner(s))

            return build

        label = "adjacent.disjoint_pairs"
        if st.data["z_empty"]:
            # the contracted sides form a 5-cycle, which closes into a Hamilton cycle
            node.event("case", "adjacent.disjoint_pairs.hamilton")
            return self._first(call, label, [("hamilton", lambda s: self._hamilton(call, s, L))])
        cands = [
            ("C12", reduced(1, 2, lambda s: s.edge_of(f))),
            ("C52", reduced(5, 2, lambda s: s.edge_of(E[2]))),
            ("C54", reduced(5, 4, lambda s: s.edge_of(E[4]))),
            ("C5", reduced(5, None, lambda s: s.edge_of(side_edge(5)))),
            ("Cz", lambda s: self._adj_cz(call, s, L, side_edge)),
        ]
        return self._first(call, label, cands)

    def _hamilton(self, call: _Call, s: DerivationScript, L: dict) -> Cycle:
        X = {i: L[f"X{i}"] for i in range(1, 6)}
        s.contract(*(X[i] for i in range(1, 6)))
        D = s.graph
        p = {i: s.vertex_of(min(X[i])) for i in X}
        ps = set(p.values())
        for a, b in ((1, 3), (1, 4), (2, 3), (2, 4)):
            gs = D.edges_between(p[a], p[b])
            if gs:
                g = min(gs)
                break
        else:
            raise GraphError("no edge between the two end pairs of sides")
        verts, edges = [p[a]], []
        prev, cur = g, p[a]
        while cur != p[b]:
            nxt = [h for h in D.incident(cur) if h != prev and D.other(h, cur) in ps]
            if len(nxt) != 1:
                raise GraphError("contracted sides do not form a 5-cycle")
            prev = nxt[0]
            cur = D.other(prev, cur)
            edges.append(prev)
            verts.append(cur)
        if len(verts) != 5:
            raise GraphError("contracted sides do not form a 5-cycle")
        verts += [L["u3"], L["u2"], L["u1"]]
        edges += [L[f"e{b}"], L["f"], L["e"], L[f"e{a}"]]
        call.node.event("note", pair=[a, b])
        return Cycle(tuple(verts), tuple(edges))

    def _adj_cz(self, call: _Call, s: DerivationScript, L: dict, side_edge) -> Cycle:
        X = {i: L[f"X{i}"] for i in range(1, 6)}
        E = {i: L[f"e{i}"] for i in range(1, 6)}
        s.contract(*(X[i] for i in range(1, 6)))
        D0 = s.graph
        tried = []
        for k, l in ((1, 3), (1, 4), (2, 3), (2, 4)):
            drop = (3 - k, 7 - l, 5)
            ces = tuple(sorted(s.edge_of(E[i]) for i in drop))
            try:
                H, _ = _cached(D0, ("smooth", ces), lambda: smooth(D0, ces))
            except GraphError as exc:
                tried.append({"k": k, "l": l, "error": str(exc)})
                continue
            if self.three_connected(H):
                break
            tried.append({"k": k, "l": l, "two_cuts": [sorted(c) for c in two_edge_cuts(H)]})
        else:
            call.node.event("note", insertion_failed=tried)
            raise GraphError("no choice of end sides gives a 3-connected graph")
        s.smooth_current(ces)
        xs = {i: call.x(X[i]) for i in drop}
        i = max(drop, key=lambda t: (xs[t], -drop.index(t)))
        call.node.event("note", k=k, l=l, i=i)
        return self._recurse(call, s, s.edge_of(L["e"]), s.edge_of(side_edge(i)))

    def _adj_shared(self, call: _Call, st: _Struct) -> Cycle:
        node = call.node
        node.event("case", "adjacent.shared_side")
        data = st.data
        U = frozenset((data["lab"]["u1"], data["lab"]["u2"], data["lab"]["u3"]))
        G = call.G
        if data["exit"] == "double":
            L = data["lab"]
            X1, X2 = L["X1"], L["X2"]
            (f1,) = boundary(G, X1) - {L["e1"], L["e3"]}
            (f2,) = boundary(G, X2) - {L["e2"], L["e4"]}

            def build(s):
                s.contract(X1, X2)
                s.contract(X1 | X2 | U, role="core")
                return self._recurse(call, s, s.edge_of(f1), s.edge_of(f2))

            return self._first(call, "adjacent.shared_side", [("double_shared", build)])
        Y1, Y2, e6 = data["Y1"], data["Y2"], data["e6"]
        if data["exit"] == "via_x5":
            L = data["lab"]
            (f1,) = boundary(G, Y2) - {L["e5"], e6}

            def build(s):
                s.contract(Y1, Y2)
                s.contract(Y1 | Y2 | U, role="core")
                return self._recurse(call, s, s.edge_of(L["e1"]), s.edge_of(f1))

            return self._first(call, "adjacent.shared_side", [("shared_through_middle", build)])
        for bits, L in _adj_labelings(data["lab"]):
            if bits & 6:
                continue
            if call.x(L["X1"]) <= call.x(L["X3"]):
                break
        node.event("relabel", perm=bits)
        X1, X3, X5 = L["X1"], L["X3"], L["X5"]
        e1, e3, e5 = L["e1"], L["e3"], L["e5"]
        u1, u2, u3 = L["u1"], L["u2"], L["u3"]
        e51 = min(boundary(G, X5) - {e5})

        def c1(s):
            s.contract(X1)
            s.suppress(e1)
            s.contract(Y1, Y2, X3)
            s.contract(Y1 | {u2, u3}, role="core")
            return self._recurse(call, s, s.edge_of(e3), s.edge_of(e6))

        def c2(s):
            s.contract(X5)
            s.suppress(e5)
            s.contract(Y1, Y2, X3)
            s.contract(Y1 | {u1, u3}, role="core")
            return self._recurse(call, s, s.edge_of(e3), s.edge_of(e6))

        def cy(s):
            s.contract(Y1, Y2)
            s.suppress(e6)
            s.contract(X1, X3)
            s.contract({u1, u2, u3}, role="core")
            return self._recurse(call, s, s.edge_of(e1), s.edge_of(e3))

        def cz(s):
            s.contract(X5)
            s.suppress(e5)
            s.contract(Y1, X1, X3, Y2)
            s.contract(Y1 | {u1, u3}, role="core")
            D = s.graph
            u = s.vertex_of(u1)
            vs = [s.vertex_of(min(X1)), s.vertex_of(min(X3)), s.vertex_of(min(Y2))]
            k, H, _, cyc = neighbor_suppression_cycle(D, u, s.edge_of(e51), *vs)
            uv = next(g for g in D.incident(u) if D.other(g, u) == vs[k - 1])
            s.suppress_current(uv)
            if s.graph != H:
                raise GraphError("suppression replay disagrees")
            node.event("note", k=k, u=u, neighbours=vs)
            return cyc

        return self._first(call, "adjacent.shared_side", [("C1", c1), ("C2", c2), ("Cy", cy), ("Cz", cz)])

    # -- nonadjacent edges -----------------------------------------------

    def _nonadj_struct(self, G: MultiGraph, e: int, f: int) -> _Struct:
        return self._struct(("nonadj", G, e, f), lambda: self._build_nonadj(G, e, f))

    def _build_nonadj(self, G: MultiGraph, e: int, f: int) -> _Struct:
        cs = find_2_edge_cut_separating(G, e, f)
        if cs is not None:
            return _Struct("2cut", {"side": cs.side, "cut": cs.cut_edges})
        hit = _terminal_piece(G, e, f)
        if hit is not None:
            return _Struct("terminal_3cut", {"piece": hit[0], "cut": hit[1]})
        cs = find_3_edge_cut_separating(G, e, f)
        if cs is not None:
            return _Struct("separating_3cut", {"side": cs.side, "cut": cs.cut_edges})
        ve, vf = set(G.ends(e)), set(G.ends(f))
        links = sorted(g for g, (a, b) in G.edges.items() if (a in ve and b in vf) or (a in vf and b in ve))
        if links:
            return _Struct("bridge_edge", {"edge": links[0]})
        u = {1: G.ends(e)[0], 2: G.ends(e)[1], 3: G.ends(f)[0], 4: G.ends(f)[1]}
        U = set(u.values())
        lab = {"e": e, "f": f} | {f"u{i}": u[i] for i in u}
        for i in u:
            own = e if i <= 2 else f
            for j, g in enumerate(sorted(h for h in G.incident(u[i]) if h != own), start=1):
                lab["e" + _pos(i, j)] = g
                lab["X" + _pos(i, j)] = maximal_3cut_side(G, g, U).side
        st = _Struct("sides")
        for p in _POSITIONS:
            if not self._side_ok(G, lab["X" + p], lab["e" + p]):
                raise ClaimViolated(f"side {p} fails the 3-connectivity property")
        st.checks.append("nonadjacent.sides_unique")
        for group in (_POSITIONS[:4], _POSITIONS[4:]):
            for a in range(4):
                for b in range(a + 1, 4):
                    if lab["X" + group[a]] & lab["X" + group[b]]:
                        raise ClaimViolated("sides at the same edge overlap")
        st.checks.append("nonadjacent.sides_disjoint")
        meets = []
        for a in _POSITIONS[:4]:
            for b in _POSITIONS[4:]:
                if lab["X" + a] & lab["X" + b]:
                    if lab["X" + a] != lab["X" + b]:
                        raise ClaimViolated("overlapping sides differ")
                    meets.append((a, b))
        if meets:
            st.checks.append("nonadjacent.overlap_equal")
        pairs = {i: {lab["X" + _pos(i, 1)], lab["X" + _pos(i, 2)]} for i in u}
        for i in (1, 2):
            for j in (3, 4):
                if pairs[i] == pairs[j]:
                    st.kind = "paired_sides"
                    st.data = {"lab": lab}
                    return st
        st.checks.append("nonadjacent.paired_sides_absent")
        for i in u:
            others = [p for p in _POSITIONS if (int(p[0]) <= 2) != (i <= 2)]
            for a in others:
                for b in others:
                    if a[0] != b[0] and pairs[i] == {lab["X" + a], lab["X" + b]}:
                        st.kind = "cross_paired_sides"
                        st.data = {"lab": lab}
                        return st
        st.checks.append("nonadjacent.cross_paired_absent")
        st.kind = f"overlap{len(meets)}"
        if len(meets) > 2:
            raise ClaimViolated(f"{len(meets)} overlapping pairs")
        st.data = {"lab": lab}
        return st

    def _nonadjacent(self, call: _Call) -> Cycle:
        G, node, e, f = call.G, call.node, call.e, call.f
        st = self._nonadj_struct(G, e, f)
        if st.kind == "2cut":
            node.event("reduction", "nonadjacent.2cut", cut=sorted(st.data["cut"]))
            return self._split_2cut(call, st.data["side"], st.data["cut"])
        if st.kind == "terminal_3cut":
            piece, cut = st.data["piece"], st.data["cut"]
            node.event("reduction", "nonadjacent.terminal_3cut", cut=sorted(cut), side=sorted(piece))

            def build(s):
                s.contract(piece)
                return self._recurse(call, s, s.edge_of(e), s.edge_of(f))

            return self._first(call, "nonadjacent.terminal_3cut", [("terminal_3cut", build)])
        if st.kind == "separating_3cut":
            node.event("reduction", "nonadjacent.separating_3cut", cut=sorted(st.data["cut"]))
            return self._split_3cut(call, st.data["side"], st.data["cut"])
        if st.kind == "bridge_edge":
            g = st.data["edge"]
            node.event("reduction", "nonadjacent.bridge_edge", edge=g)

            def build(s):
                s.suppress(g)
                return self._recurse(call, s, s.edge_of(e), s.edge_of(f))

            return self._first(call, "nonadjacent.bridge_edge", [("bridge_edge", build)])
        for label in st.checks:
            node.event("check", label)
        lab = st.data["lab"]
        xs = {lab["X" + p]: call.x(lab["X" + p]) for p in _POSITIONS}
        x = lambda L, p: xs[L["X" + p]]

        def pick(pred) -> dict:
            for bits, L in _nonadj_labelings(lab):
                if pred(L):
                    node.event("relabel", perm=bits)
                    return L
            raise ClaimViolated("no relabelling puts the sides in normal form")

        def script(L, *ops):
            def build(s):
                for op, *args in ops:
                    if op == "c":
                        s.contract(*(L["X" + a] for a in args))
                    else:
                        s.suppress(L["e" + args[0]])
                return self._recurse(call, s, s.edge_of(L["e"]), s.edge_of(L["f"]))

            return build

        if st.kind == "paired_sides":
            node.event("reduction", "nonadjacent.paired_sides")
            L = pick(lambda L: L["X11"] == L["X31"] and L["X12"] == L["X32"])
            return self._first(call, "nonadjacent.paired_sides", [("paired", script(L, ("c", "12", "31"), ("s", "12"), ("s", "31")))])
        if st.kind == "cross_paired_sides":
            node.event("reduction", "nonadjacent.cross_paired_sides")
            pred = lambda L: L["X21"] == L["X31"] and L["X22"] == L["X41"] and x(L, "21") <= x(L, "22")

            def cands():
                # the first normal form is the generic one; when the sides pair up
                # in more than one way the other normal forms are tried after it
                seen = []
                for bits, L in _nonadj_labelings(lab):
                    if not pred(L) or L in seen:
                        continue
                    seen.append(L)
                    node.event("relabel", perm=bits)
                    yield "Cy", script(L, ("c", "21", "22"), ("s", "21"), ("s", "41"), ("c", "42"))
                    yield "Cx", script(L, ("c", "21", "22"), ("s", "21"), ("s", "41"), ("c", "42"), ("c", "32"), ("s", "32"))
                    yield "Cx'", script(L, ("c", "22", "21"), ("s", "22"), ("s", "31"), ("c", "32"), ("c", "42"), ("s", "42"))
                if not seen:
                    raise ClaimViolated("no relabelling puts the sides in normal form")

            return self._first(call, "nonadjacent.cross_paired_sides", cands())
        label = "nonadjacent." + st.kind
        node.event("case", label)
        if st.kind == "overlap0":
            L = pick(lambda L: x(L, "11") == min(x(L, p) for p in _POSITIONS))
            return self._first(call, label, [("Cx", script(L, ("c", "11"), ("s", "11"), ("c", "12")))])
        if st.kind == "overlap1":
            L = pick(lambda L: L["X22"] == L["X32"] and x(L, "11") == min(x(L, p) for p in ("11", "12", "41", "42")))
            cands = [("Cx", script(L, ("c", "11"), ("s", "11"), ("c", "12")))]
            xp = ("Cx'", script(L, ("c", "21", "32"), ("s", "21"), ("s", "32"), ("c", "31")))
            xpp = ("Cx''", script(L, ("c", "31", "22"), ("s", "31"), ("s", "22"), ("c", "21")))
            cands += [xp, xpp] if x(L, "21") <= x(L, "31") else [xpp, xp]
            cands.append(("Cy", script(L, ("c", "22"), ("s", "22"), ("c", "21"))))
            return self._first(call, label, cands)
        L = pick(
            lambda L: L["X12"] == L["X32"]
            and L["X22"] == L["X42"]
            and x(L, "11") == min(x(L, p) for p in ("11", "21", "31", "41"))
        )
        cands = [
            ("Cx", script(L, ("c", "11", "12"), ("s", "11"), ("s", "32"), ("c", "31"))),
            ("Cy", script(L, ("c", "12"), ("s", "12"), ("c", "11"))),
        ]
        return self._first(call, label, cands)

    def _split_2cut(self, call: _Call, side_f: frozenset[int], cut: frozenset[int]) -> Cycle:
        G = call.G
        B = frozenset(side_f)
        A = G.vertices - B
        F = sorted(cut)
        a_end = [next(x for x in G.ends(g) if x in A) for g in F]
        b_end = [next(x for x in G.ends(g) if x in B) for g in F]
        call.node.label = "nonadjacent.2cut"
        try:
            if a_end[0] == a_end[1] or b_end[0] == b_end[1]:
                raise GraphError("cut edges share an endpoint")
            G1, fp = induced_with_edge(G, A, *a_end)
            G2, ep = induced_with_edge(G, B, *b_end)
            C1 = self._child(call, G1, call.e, fp)
            C2 = self._child(call, G2, ep, call.f)
            cyc = Cycle.from_edges(G, [g for g in C1.edges if g != fp] + [g for g in C2.edges if g != ep] + F)
        except GraphError as exc:
            call.node.event("candidate", name="split", winner=False, error=str(exc))
            raise InternalBoundMiss("2-cut split failed", call.node) from exc
        if self._accept(call, "split", cyc):
            return cyc
        raise InternalBoundMiss("2-cut split missed the bound", call.node)

    def _split_3cut(self, call: _Call, side_f: frozenset[int], cut: frozenset[int]) -> Cycle:
        G = call.G
        B = frozenset(side_f)
        A = G.vertices - B
        S = sorted(cut)
        GB, _ = _cached(G, ("contract", (tuple(sorted(B)),)), lambda: contract(G, [B]))
        GA, _ = _cached(G, ("contract", (tuple(sorted(A)),)), lambda: contract(G, [A]))
        call.node.label = "nonadjacent.separating_3cut"
        left: dict[frozenset, Cycle] = {}
        right: dict[frozenset, Cycle] = {}
        found = None
        for g in S:
            C = self._child(call, GB, call.e, g)
            key = frozenset(C.edges) & frozenset(S)
            left.setdefault(key, C)
            if key in right:
                found = (C, right[key])
                break
            D = self._child(call, GA, g, call.f)
            key = frozenset(D.edges) & frozenset(S)
            right.setdefault(key, D)
            if key in left:
                found = (left[key], D)
                break
        if found is None:
            raise InternalBoundMiss("no matching pair across the separating cut", call.node)
        cyc = Cycle.from_edges(G, set(found[0].edges) | set(found[1].edges))
        if self._accept(call, "joined", cyc):
            return cyc
        raise InternalBoundMiss("joined cycle missed the bound", call.node)


# -- public entry points ---------------------------------------------------

_DEFAULT = Engine()


def default_engine() -> Engine:
    return _DEFAULT


def check_instance(G: MultiGraph, w: Mapping[int, int], e: int, f: int) -> None:
    """Raise PreconditionViolated unless (G, w, e, f) is a valid input."""
    if e == f:
        raise PreconditionViolated("e and f must differ")
    if not (G.has_edge(e) and G.has_edge(f)):
        raise PreconditionViolated("e and f must be edges of G")
    if not G.is_cubic():
        raise PreconditionViolated("graph is not cubic")
    for v, x in w.items():
        if v not in G.vertices:
            raise PreconditionViolated(f"weight given for unknown vertex {v}")
        if not isinstance(x, int) or isinstance(x, bool) or x < 0 or x > WEIGHT_CAP:
            raise PreconditionViolated(f"weight of {v} must be an integer in [0, 2^31]")
    if not edge_connectivity_at_least(G, 2):
        raise PreconditionViolated("graph is not 2-edge-connected")
    for cut in two_edge_cuts(G):
        if not separates(G, cut, e, f):
            raise PreconditionViolated(f"2-edge cut {sorted(cut)} does not separate e from f")


def long_cycle(
    G: MultiGraph, w: Mapping[int, int], e: int, f: int, *, check: bool = True, engine: Engine | None = None
) -> CycleResult:
    """Cycle through e and f of weight at least w(G)^0.8 (adjacent) or c*w(G)^0.8."""
    if check:
        check_instance(G, w, e, f)
    eng = engine or _DEFAULT
    cyc, node = eng.solve(G, {v: x for v, x in w.items() if x}, e, f)
    weight = cyc.weight(w)
    return CycleResult(cyc, weight, node.bound, node.adjacent, node)


def merge_contracted(
    G: MultiGraph,
    w: Mapping[int, int],
    pieces: Iterable[Iterable[int]],
    C: Cycle,
    script: DerivationScript | None = None,
    engine: Engine | None = None,
) -> Cycle:
    """Carry a cycle of G/(pieces) back to G, routing it through every piece it visits."""
    if script is None:
        script = DerivationScript(G)
        sets = [frozenset(p) for p in pieces]
        if sets:
            script.contract(*sets)
    eng = engine or _DEFAULT
    node = TraceNode(G.order, -1, -1, True, total_weight(w, G.vertices), 0.0)
    call = _Call(G, dict(w), -1, -1, True, node.total, 0.0, 0, node)
    return eng._lift(call, script, C)
