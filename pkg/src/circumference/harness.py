"""Graph generators, the named corpus, piece-structured instances, the
exhaustive oracle and the end-to-end verification run."""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np

from .bounds import bound
from .cuts import is_3_connected
from .derive import clear_cache
from .graph import Cycle, GraphError, MultiGraph, contract, insert_edge
from .longest import Engine, InternalBoundMiss, long_cycle


class OddOrder(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


# -- construction helpers ----------------------------------------------------


def from_edge_list(pairs: Iterable[tuple[int, int]]) -> MultiGraph:
    pairs = list(pairs)
    vs = {v for p in pairs for v in p}
    return MultiGraph(vs, dict(enumerate(pairs)))


def compact(G: MultiGraph) -> MultiGraph:
    """Renumber vertices and edges as 0..n-1 and 0..m-1, keeping their order."""
    vmap = {v: i for i, v in enumerate(sorted(G.vertices))}
    edges = {i: (vmap[a], vmap[b]) for i, (_, (a, b)) in enumerate(sorted(G.edges.items()))}
    return MultiGraph(range(len(vmap)), edges)


def theta() -> MultiGraph:
    return MultiGraph({0, 1}, {0: (0, 1), 1: (0, 1), 2: (0, 1)})


def k4() -> MultiGraph:
    return from_edge_list(itertools.combinations(range(4), 2))


def prism() -> MultiGraph:
    return from_edge_list([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


def k33() -> MultiGraph:
    return from_edge_list((a, b) for a in range(3) for b in range(3, 6))


def cube() -> MultiGraph:
    return from_edge_list((a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1)


def petersen() -> MultiGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(outer + spokes + inner)


def generalized_petersen(n: int, k: int) -> MultiGraph:
    outer = [(i, (i + 1) % n) for i in range(n)]
    spokes = [(i, i + n) for i in range(n)]
    inner = [(n + i, n + (i + k) % n) for i in range(n)]
    return from_edge_list(outer + spokes + inner)


def mobius_kantor() -> MultiGraph:
    return generalized_petersen(8, 3)


def corpus() -> dict[str, MultiGraph]:
    return {
        "theta": theta(),
        "K4": k4(),
        "prism": prism(),
        "K33": k33(),
        "cube": cube(),
        "petersen": petersen(),
        "mobius_kantor": mobius_kantor(),
    }


def random_cubic_3connected(n: int, seed: int) -> MultiGraph:
    """K4 grown by random edge insertions, each kept only if still 3-connected."""
    if n % 2:
        raise OddOrder("cubic graphs have even order")
    if n < 4:
        raise ValueError("n must be at least 4")
    rng = random.Random(seed)
    G = k4()
    while G.order < n:
        es = sorted(G.edges)
        a, b = rng.sample(es, 2)
        H, _ = insert_edge(G, a, b)
        if is_3_connected(H):
            G = H
    return compact(G)


def random_3edge_connected(n: int, seed: int, contractions: int | None = None) -> MultiGraph:
    """A random cubic 3-connected graph on n vertices with 1-3 random
    connected vertex sets contracted; contraction keeps 3-edge-connectivity."""
    rng = random.Random(seed)
    G = random_cubic_3connected(n, rng.randrange(2**31))
    k = rng.randint(1, 3) if contractions is None else contractions
    for _ in range(k):
        if G.order <= 2:
            break
        size = rng.randint(2, min(4, G.order - 1))
        grow = {rng.choice(sorted(G.vertices))}
        while len(grow) < size:
            frontier = sorted({x for v in grow for x in G.neighbors(v)} - grow)
            grow.add(rng.choice(frontier))
        G, _ = contract(G, [grow])
    return compact(G)


def doubled_bowtie() -> MultiGraph:
    """Two blocks joined only at vertex 0 (degree 6); each block is K4 minus
    an edge, tied to 0 by a doubled edge and a single edge."""
    edges = []
    for a in (1, 5):
        b, c, d = a + 1, a + 2, a + 3
        edges += [(a, b), (a, c), (b, c), (b, d), (c, d), (0, a), (0, a), (0, d)]
    return from_edge_list(edges)


def _piece(order: int, seed: int) -> tuple[MultiGraph, list[int]]:
    """A connected cubic piece with three half-edges, as (graph, ports)."""
    if order == 1:
        return MultiGraph({0}, {}), [0, 0, 0]
    if order % 2 == 0:
        raise OddOrder("a 3-boundary piece of a cubic graph has odd order")
    G = random_cubic_3connected(order + 1, seed)
    cut = max(G.vertices)
    ports = sorted(G.other(g, cut) for g in G.incident(cut))
    edges = {g: ab for g, ab in G.edges.items() if cut not in ab}
    return MultiGraph(G.vertices - {cut}, edges), ports


class _Builder:
    def __init__(self):
        self.edges: list[tuple[int, int]] = []
        self.nv = 0

    def vertex(self) -> int:
        self.nv += 1
        return self.nv - 1

    def edge(self, a: int, b: int) -> int:
        self.edges.append((a, b))
        return len(self.edges) - 1

    def piece(self, order: int, seed: int) -> tuple[set[int], list[int]]:
        P, ports = _piece(order, seed)
        vmap = {v: self.vertex() for v in sorted(P.vertices)}
        for a, b in P.edges.values():
            self.edge(vmap[a], vmap[b])
        return set(vmap.values()), [vmap[p] for p in ports]

    def ring(self, attach: list[int], triangles: int) -> set[int]:
        """A cycle with one vertex per attachment; the first ``triangles`` of
        them are blown up into triangles."""
        spots: list[tuple[int, int, int]] = []
        made: set[int] = set()
        for i, a in enumerate(attach):
            if i < triangles:
                x, y, z = self.vertex(), self.vertex(), self.vertex()
                self.edge(x, y)
                self.edge(y, z)
                self.edge(z, x)
                made |= {x, y, z}
                spots.append((x, y, z))
            else:
                v = self.vertex()
                made.add(v)
                spots.append((v, v, v))
            self.edge(a, spots[-1][1])
        for i in range(len(spots)):
            self.edge(spots[i][2], spots[(i + 1) % len(spots)][0])
        return made

    def graph(self) -> MultiGraph:
        return from_edge_list(self.edges)


@dataclass
class Instance:
    name: str
    graph: MultiGraph
    weights: dict[int, int]
    e: int
    f: int
    pieces: dict[str, set[int]] = field(default_factory=dict)


def _place(w: dict[int, int], vs: Iterable[int], amount: int) -> None:
    vs = sorted(vs)
    for i in range(amount):
        v = vs[i % len(vs)]
        w[v] = w.get(v, 0) + 1


def fig2_instance(
    x: tuple[int, int, int, int, int],
    z: int,
    sizes: tuple[int, int, int, int, int] = (1, 1, 1, 1, 1),
    z_triangles: int = 0,
    seed: int = 0,
) -> Instance:
    """Five 3-boundary pieces hung off the path u1-u2-u3 (two at each end, one
    in the middle); their other half-edges meet in a ring Z, or, when z is
    None-like (``z < 0``), directly in a 5-cycle of pieces."""
    B = _Builder()
    u1, u2, u3 = B.vertex(), B.vertex(), B.vertex()
    e = B.edge(u1, u2)
    f = B.edge(u2, u3)
    X, ports = {}, {}
    for i in range(1, 6):
        X[i], ports[i] = B.piece(sizes[i - 1], seed * 10 + i)
    for i, u in ((1, u1), (2, u1), (3, u3), (4, u3), (5, u2)):
        B.edge(u, ports[i][0])
    w: dict[int, int] = {}
    if z < 0:
        order = (1, 3, 2, 5, 4)
        for a, b in zip(order, order[1:] + order[:1]):
            B.edge(ports[a][2], ports[b][1])
        Z: set[int] = set()
    else:
        attach = [ports[i][j] for j in (1, 2) for i in (1, 3, 5, 2, 4)]
        Z = B.ring(attach, z_triangles)
        _place(w, Z, z)
    for i in range(1, 6):
        _place(w, X[i], x[i - 1])
    G = B.graph()
    pieces = {f"X{i}": X[i] for i in X} | {"Z": Z}
    return Instance(f"fig2{tuple(x)}z{z}", G, w, e, f, pieces)


def fig3_instance(
    x1: int,
    x3: int,
    x5: int,
    y1: int,
    y2: int,
    z: int,
    sizes: tuple[int, int, int, int, int] = (1, 1, 1, 1, 1),
    z_triangles: int = 0,
    seed: int = 0,
    y2_is_x5: bool = False,
) -> Instance:
    """One shared piece Y1 taking an edge from both ends of the path, a
    second piece Y2 behind it, and pieces X1, X3, X5 at u1, u3, u2.

    ``sizes`` gives the orders of (X1, X3, X5, Y1, Y2); Y1 must have order
    at least 3 so that it can carry two edges from the path plus one to Y2.
    With ``y2_is_x5`` the edge out of Y1 runs into X5 instead and Y2 is left out.
    """
    B = _Builder()
    u1, u2, u3 = B.vertex(), B.vertex(), B.vertex()
    e = B.edge(u1, u2)
    f = B.edge(u2, u3)
    names = ("X1", "X3", "X5", "Y1", "Y2")
    P, ports = {}, {}
    if y2_is_x5:
        names = names[:4]
    for k, name in enumerate(names):
        P[name], ports[name] = B.piece(sizes[k], seed * 10 + k)
    B.edge(u1, ports["X1"][0])
    B.edge(u3, ports["X3"][0])
    B.edge(u2, ports["X5"][0])
    B.edge(u1, ports["Y1"][0])
    B.edge(u3, ports["Y1"][1])
    w: dict[int, int] = {}
    Z: set[int] = set()
    if y2_is_x5:
        B.edge(ports["Y1"][2], ports["X5"][1])
        attach = [ports[n][j] for n, j in (("X1", 1), ("X3", 1), ("X5", 2), ("X1", 2), ("X3", 2))]
        Z = B.ring(attach, z_triangles)
        _place(w, Z, max(z, 0))
    elif z < 0:
        B.edge(ports["Y1"][2], ports["Y2"][0])
        order = ("X1", "X5", "X3", "Y2")
        for a, b in zip(order, order[1:] + order[:1]):
            B.edge(ports[a][2], ports[b][1])
    else:
        B.edge(ports["Y1"][2], ports["Y2"][0])
        attach = [ports[n][j] for j in (1, 2) for n in ("X1", "Y2", "X3", "X5")]
        Z = B.ring(attach, z_triangles)
        _place(w, Z, z)
    for name, amount in zip(names, (x1, x3, x5, y1, y2)):
        _place(w, P[name], amount)
    G = B.graph()
    return Instance(f"fig3({x1},{x3},{x5},{y1},{y2})z{z}", G, w, e, f, P | {"Z": Z})


# -- oracle ----------------------------------------------------------------


def all_cycles(G: MultiGraph) -> list[Cycle]:
    """Every cycle of G exactly once (as an edge set), by rooted DFS."""
    out: list[Cycle] = []
    for s in sorted(G.vertices):
        verts = [s]
        edges: list[int] = []
        on = {s}

        def rec(v: int):
            for g in G.incident(v):
                if edges and g == edges[-1]:
                    continue
                x = G.other(g, v)
                if x == s:
                    if edges and edges[0] < g:
                        out.append(Cycle(tuple(verts), tuple(edges + [g])))
                    continue
                if x < s or x in on:
                    continue
                on.add(x)
                verts.append(x)
                edges.append(g)
                rec(x)
                edges.pop()
                verts.pop()
                on.discard(x)

        rec(s)
    return out


class CycleTable:
    """All cycles of one graph as incidence matrices, for batched maxima."""

    def __init__(self, G: MultiGraph):
        self.G = G
        self.cycles = all_cycles(G)
        self.vindex = {v: i for i, v in enumerate(sorted(G.vertices))}
        self.eindex = {g: i for i, g in enumerate(sorted(G.edges))}
        k = len(self.cycles)
        self.V = np.zeros((len(self.vindex), k), dtype=np.int64)
        self.E = np.zeros((len(self.eindex), k), dtype=bool)
        for c, cyc in enumerate(self.cycles):
            for v in cyc.vertices:
                self.V[self.vindex[v], c] = 1
            for g in cyc.edges:
                self.E[self.eindex[g], c] = True

    def weights(self, ws: list[Mapping[int, int]]) -> np.ndarray:
        W = np.zeros((len(ws), len(self.vindex)), dtype=np.int64)
        for r, w in enumerate(ws):
            for v, x in w.items():
                W[r, self.vindex[v]] = x
        return W @ self.V

    def best(self, cycle_weights: np.ndarray, e: int | None = None, f: int | None = None) -> np.ndarray:
        """Row-wise maximum over cycles through e and f (-1 when none)."""
        mask = np.ones(len(self.cycles), dtype=bool)
        for g in (e, f):
            if g is not None:
                mask &= self.E[self.eindex[g]]
        if not mask.any():
            return np.full(cycle_weights.shape[0], -1, dtype=np.int64)
        return cycle_weights[:, mask].max(axis=1)


def oracle_max_cycle(
    G: MultiGraph,
    w: Mapping[int, int],
    e: int | None = None,
    f: int | None = None,
    time_budget: float | None = None,
) -> tuple[int, Cycle | None]:
    """Exact maximum-weight cycle (through e and f when given), by DFS with a
    remaining-weight bound. ``time_budget`` is in seconds."""
    deadline = None if time_budget is None else time.monotonic() + time_budget
    need = [g for g in (e, f) if g is not None]
    best: list = [-1, None]
    if e is None and f is not None:
        e, f = f, None
    starts = [e] if e is not None else sorted(G.edges)
    wt = lambda v: w.get(v, 0)
    ticks = [0]
    for first in starts:
        a, b = G.ends(first)
        verts, edges = [a, b], [first]
        on = {a, b}
        base = wt(a) + wt(b)
        # with no edge given, only count cycles whose smallest edge is ``first``
        floor = first if e is None else None

        def rec(v: int, acc: int, rest: int):
            ticks[0] += 1
            if deadline is not None and ticks[0] % 4096 == 0 and time.monotonic() > deadline:
                raise BudgetExceeded("oracle ran out of time")
            if acc + rest <= best[0]:
                return
            for g in G.incident(v):
                if g == edges[-1] or (floor is not None and g < floor):
                    continue
                x = G.other(g, v)
                if x == a and len(edges) >= 1 and g != first:
                    used = set(edges) | {g}
                    if all(h in used for h in need) and acc > best[0]:
                        best[0], best[1] = acc, Cycle(tuple(verts), tuple(edges + [g]))
                    continue
                if x in on:
                    continue
                on.add(x)
                verts.append(x)
                edges.append(g)
                rec(x, acc + wt(x), rest - wt(x))
                edges.pop()
                verts.pop()
                on.discard(x)

        total = sum(wt(v) for v in G.vertices) - base
        rec(b, base, total)
    return best[0], best[1]


# -- verification ----------------------------------------------------------


def edge_pairs(G: MultiGraph) -> list[tuple[int, int]]:
    return list(itertools.combinations(sorted(G.edges), 2))


def random_weights(G: MultiGraph, rng: random.Random, top: int = 10) -> dict[int, int]:
    return {v: rng.randint(0, top) for v in sorted(G.vertices)}


def _stratified_pairs(G: MultiGraph, rng: random.Random) -> list[tuple[int, int]]:
    """One adjacent pair, one pair at distance two and one far pair, when they exist."""
    groups: dict[str, list] = {"adjacent": [], "distance2": [], "far": []}
    for e, f in edge_pairs(G):
        ve, vf = set(G.ends(e)), set(G.ends(f))
        if ve & vf:
            groups["adjacent"].append((e, f))
        elif any(set(ab) & ve and set(ab) & vf for ab in G.edges.values()):
            groups["distance2"].append((e, f))
        else:
            groups["far"].append((e, f))
    return [rng.choice(v) for k, v in groups.items() if v]


def piece_corpus() -> list[Instance]:
    """Piece-structured instances that reach the rarer branches."""
    out = []
    for x in itertools.product((0, 1, 3), repeat=2):
        out.append(fig2_instance((1, x[0], 1, x[1], 1), -1))
    grid = [
        (1, 1, 1, 1, 1, 1),
        (1, 1, 1, 1, 5, 0),
        (1, 5, 1, 1, 1, 0),
        (0, 4, 1, 4, 1, 1),
        (1, 2, 1, 3, 1, 9),
        (2, 2, 2, 2, 2, 30),
        (1, 1, 1, 9, 9, 2),
        (0, 0, 0, 0, 1, 5),
        (1, 1, 9, 1, 1, 2),
        (3, 3, 3, 3, 3, 3),
    ]
    for row in grid:
        out.append(fig2_instance(row[:5], row[5]))
        out.append(fig2_instance(row[:5], row[5], sizes=(1, 3, 1, 3, 1), z_triangles=2, seed=1))
    for row in [
        (1, 1, 1, 1, 1, 1),
        (1, 1, 5, 1, 1, 0),
        (1, 2, 1, 9, 1, 0),
        (2, 2, 0, 0, 0, 9),
        (0, 0, 3, 3, 3, 3),
        (1, 1, 1, 1, 1, 20),
        (3, 1, 2, 1, 5, 1),
        (2, 2, 2, 0, 9, 0),
    ]:
        out.append(fig3_instance(*row, sizes=(1, 1, 1, 3, 1)))
        out.append(fig3_instance(*row, sizes=(1, 1, 1, 3, 3), z_triangles=1, seed=2))
    out.append(fig3_instance(1, 1, 1, 1, 1, -1, sizes=(1, 1, 1, 3, 1)))
    return out


# every reduction, claim check and case branch of the recursion
REQUIRED_LABELS = (
    "base",
    "adjacent.terminal_3cut",
    "adjacent.triangle",
    "adjacent.sides_unique",
    "adjacent.sides_disjoint",
    "adjacent.sides_apart",
    "adjacent.disjoint_pairs",
    "adjacent.disjoint_pairs.hamilton",
    "adjacent.shared_side",
    "nonadjacent.2cut",
    "nonadjacent.terminal_3cut",
    "nonadjacent.separating_3cut",
    "nonadjacent.bridge_edge",
    "nonadjacent.sides_unique",
    "nonadjacent.sides_disjoint",
    "nonadjacent.overlap_equal",
    "nonadjacent.paired_sides",
    "nonadjacent.paired_sides_absent",
    "nonadjacent.cross_paired_sides",
    "nonadjacent.cross_paired_absent",
    "nonadjacent.overlap0",
    "nonadjacent.overlap1",
    "nonadjacent.overlap2",
)


@dataclass
class Report:
    trials: int = 0
    calls: int = 0
    failures: list[dict] = field(default_factory=list)
    oracle_checked: int = 0
    histogram: dict[str, int] = field(default_factory=dict)
    winners: dict[str, int] = field(default_factory=dict)
    max_call_seconds: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "trials": self.trials,
            "calls": self.calls,
            "failures": sorted(self.failures, key=lambda d: sorted(d.items())),
            "oracle_checked": self.oracle_checked,
            "histogram": dict(sorted(self.histogram.items())),
            "winners": dict(sorted(self.winners.items())),
        }
        if timing:
            out["max_call_seconds"] = self.max_call_seconds
        return out

    def missing_labels(self) -> list[str]:
        return [k for k in REQUIRED_LABELS if not self.histogram.get(k)]


def _tally(report: Report, res) -> None:
    for node in res.trace.walk():
        for ev in node.events:
            if ev["kind"] in ("reduction", "check", "case"):
                report.histogram[ev["label"]] = report.histogram.get(ev["label"], 0) + 1
            elif ev["kind"] == "candidate" and ev.get("winner"):
                key = f"{node.label}:{ev['name']}"
                report.winners[key] = report.winners.get(key, 0) + 1


def run_instance(
    report: Report,
    name: str,
    G: MultiGraph,
    w: Mapping[int, int],
    e: int,
    f: int,
    oracle: int | None,
    engine: Engine,
) -> None:
    report.calls += 1
    start = time.perf_counter()
    try:
        res = long_cycle(G, w, e, f, check=False, engine=engine)
    except (InternalBoundMiss, GraphError, RuntimeError, AssertionError) as exc:
        report.failures.append({"instance": name, "e": e, "f": f, "error": f"{type(exc).__name__}: {exc}"})
        return
    report.max_call_seconds = max(report.max_call_seconds, time.perf_counter() - start)
    problems = []
    if not res.cycle.is_valid(G) or e not in res.cycle.edges or f not in res.cycle.edges:
        problems.append("invalid cycle")
    W = sum(w.get(v, 0) for v in G.vertices)
    b = bound(G.adjacent_edges(e, f), W)
    if res.weight + 1e-9 < b:
        problems.append(f"weight {res.weight} below bound {b}")
    if oracle is not None:
        report.oracle_checked += 1
        if res.weight > oracle:
            problems.append(f"weight {res.weight} above oracle {oracle}")
    if problems:
        report.failures.append({"instance": name, "e": e, "f": f, "error": "; ".join(problems)})
    _tally(report, res)


def verify(trials: int = 100, nmax: int = 12, seed: int = 7, engine: Engine | None = None, oracle_limit: int = 22) -> Report:
    """Random 3-connected cubic graphs plus the piece corpus, every result
    checked against the bound and, for small graphs, the oracle."""
    rng = random.Random(seed)
    eng = engine or Engine()
    report = Report()
    orders = [n for n in range(4, nmax + 1, 2)]
    jobs: list[tuple[str, MultiGraph, list[dict[int, int]], list[tuple[int, int]]]] = []
    for t in range(trials):
        n = rng.choice(orders)
        G = random_cubic_3connected(n, rng.randrange(2**31))
        ws = [random_weights(G, rng), {v: 0 for v in G.vertices}]
        heavy = dict.fromkeys(G.vertices, 0)
        heavy[rng.choice(sorted(G.vertices))] = rng.randint(1, 50)
        ws.append(heavy)
        jobs.append((f"random{t}(n={n})", G, ws, _stratified_pairs(G, rng)))
    for name, G in corpus().items():
        jobs.append((name, G, [random_weights(G, rng)], _stratified_pairs(G, rng)))
    for inst in piece_corpus():
        jobs.append((inst.name, inst.graph, [inst.weights], [(inst.e, inst.f)]))
    for name, G, ws, pairs in jobs:
        report.trials += 1
        table = CycleTable(G) if G.order <= oracle_limit else None
        cw = table.weights(ws) if table else None
        for e, f in pairs:
            best = table.best(cw, e, f) if table else None
            for r, w in enumerate(ws):
                run_instance(report, name, G, w, e, f, None if best is None else int(best[r]), eng)
    return report


def acceptance_graphs(count: int = 200, nmin: int = 4, nmax: int = 14, seed: int = 2024) -> list[tuple[str, MultiGraph]]:
    """The named corpus followed by ``count`` seeded random graphs."""
    rng = random.Random(seed)
    out = [(name, G) for name, G in corpus().items()]
    orders = list(range(nmin + nmin % 2, nmax + 1, 2))
    for t in range(count):
        n = orders[t % len(orders)]
        out.append((f"random{t}(n={n})", random_cubic_3connected(n, rng.randrange(2**31))))
    return out


def sweep(
    graphs: Iterable[tuple[str, MultiGraph]],
    weightings: int = 25,
    seed: int = 0,
    top: int = 10,
    oracle_limit: int = 14,
    progress: Callable[[str, Report], None] | None = None,
) -> Report:
    """Every edge pair of every graph under ``weightings`` random weightings,
    each result checked against the bound and (up to ``oracle_limit``
    vertices) against the exact optimum."""
    rng = random.Random(seed)
    report = Report()
    for name, G in graphs:
        report.trials += 1
        eng = Engine()
        ws = [random_weights(G, rng, top) for _ in range(weightings)]
        table = CycleTable(G) if G.order <= oracle_limit else None
        cw = table.weights(ws) if table else None
        for e, f in edge_pairs(G):
            best = table.best(cw, e, f) if table else None
            for r, w in enumerate(ws):
                run_instance(report, name, G, w, e, f, None if best is None else int(best[r]), eng)
        clear_cache()
        if progress:
            progress(name, report)
    return report
