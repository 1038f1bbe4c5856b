"""End-to-end acceptance checks, one printed PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` or directly as a script.
"""
import json
import random
import subprocess
import sys
import time
from decimal import Decimal

import pytest

from circumference.bounds import grid_check, optimal_exponent, proof_constants_report
from circumference.cuts import is_3_connected
from circumference.eulerian import cubify, eulerian_subgraph, is_eulerian
from circumference.harness import (
    REQUIRED_LABELS,
    acceptance_graphs,
    edge_pairs,
    random_3edge_connected,
    random_weights,
    sweep,
    verify,
)
from circumference.longest import Engine

WEIGHTINGS = 25
ORACLE_LIMIT = 14


def report_line(capsys, n, title, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'} {title}: {detail}")


@pytest.fixture(scope="module")
def big_sweep():
    graphs = acceptance_graphs(count=200, nmin=4, nmax=14, seed=2024)
    start = time.perf_counter()
    report = sweep(graphs, weightings=WEIGHTINGS, seed=0, oracle_limit=ORACLE_LIMIT)
    elapsed = time.perf_counter() - start
    small = sum(len(edge_pairs(G)) * WEIGHTINGS for _, G in graphs if G.order <= ORACLE_LIMIT)
    return graphs, report, elapsed, small


def test_criterion_1_bound_satisfaction(big_sweep, capsys):
    graphs, report, elapsed, _ = big_sweep
    bound_misses = [f for f in report.failures if "above oracle" not in f["error"]]
    ok = not bound_misses and elapsed < 600
    report_line(
        capsys, 1, "bound satisfaction", ok,
        f"{len(graphs)} graphs, {report.calls} calls, {len(bound_misses)} misses, {elapsed:.0f}s (limit 600s)",
    )
    assert not bound_misses, bound_misses[:5]
    assert elapsed < 600


def test_criterion_2_oracle_sandwich(big_sweep, capsys):
    _, report, _, small = big_sweep
    above = [f for f in report.failures if "above oracle" in f["error"]]
    ok = not report.failures and report.oracle_checked == small
    report_line(
        capsys, 2, "oracle sandwich", ok,
        f"{report.oracle_checked} of {small} small instances checked, {len(above)} above the optimum",
    )
    assert report.oracle_checked == small
    assert not report.failures, report.failures[:5]


# the printed decimals, keyed by report entry
PRINTED = {
    "c": "0.922",
    "alpha": "1.983",
    "ineq_i_margin": "2.918e-5",
    "ineq_iii_margin": "0.0018",
    "ineq_iv_margin": "0.0275",
    "ineq_v_margin": "0.128",
    "adj_disjoint_heavy_rest": "0.00775",
    "adj_disjoint_x2_large": "0.134",
    "adj_disjoint_x2_double": "0.175",
    "adj_disjoint_x5_small": "0.04",
    "adj_disjoint_x5_large": "0.066",
    "adj_shared_min_balanced": "0.117",
    "adj_shared_z_small": "0.376",
    "nonadj_one_overlap_floor": "0.096",
    "nonadj_one_overlap_turning": "21.275",
    "nonadj_two_overlap_floor": "0.109",
}


def agrees(value: float, printed: str) -> bool:
    """Within 1% relative, or equal once rounded to the printed digits."""
    p = Decimal(printed)
    if abs(value - float(p)) <= 0.01 * abs(float(p)):
        return True
    return Decimal(repr(value)).quantize(p) == p


def test_criterion_3_printed_constants(capsys):
    rep = proof_constants_report()
    rows = {k: (rep[k]["value"], s) for k, s in PRINTED.items()}
    bad = [k for k, (v, s) in rows.items() if not agrees(v, s)]
    worst = max(abs(v - float(s)) / float(s) for v, s in rows.values())
    coarse = sorted(k for k, (v, s) in rows.items() if abs(v - float(s)) > 0.01 * float(s))
    report_line(
        capsys, 3, "printed constants", not bad,
        f"{len(rows) - len(bad)} of {len(rows)} agree, worst relative gap {worst:.2%}"
        + (f" (only to printed digits: {', '.join(coarse)})" if coarse else ""),
    )
    assert not bad, bad


def test_criterion_4_optimal_exponent(capsys):
    start = time.perf_counter()
    r = optimal_exponent(1e-12)
    elapsed = time.perf_counter() - start
    residual = abs(8.956**r + 1.036**r - 10.992**r)
    ok = r > 0.800008 and residual < 1e-12 and elapsed < 1
    report_line(capsys, 4, "optimal exponent", ok, f"r* = {r:.9f}, residual {residual:.1e}, {elapsed * 1000:.1f} ms")
    assert ok


def test_criterion_5_grid(capsys):
    parts = {p: grid_check(p, grid_max=50, samples=100_000) for p in ("i", "ii", "iii", "iv", "v", "vi")}
    ok = all(g.failures == 0 for g in parts.values())
    ok = ok and all(g.exhaustive for p, g in parts.items() if p in ("i", "ii", "iii", "vi"))
    ok = ok and all(g.evaluated >= 100_000 for p, g in parts.items() if p in ("iv", "v"))
    detail = ", ".join(f"{p}: {g.evaluated} {'grid' if g.exhaustive else 'sampled'}" for p, g in parts.items())
    report_line(capsys, 5, "inequality grid", ok, f"{sum(g.failures for g in parts.values())} failures ({detail})")
    assert ok


def test_criterion_6_eulerian(capsys):
    rng = random.Random(5)
    start = time.perf_counter()
    calls, bad = 0, []
    for i in range(50):
        G = random_3edge_connected((6, 8, 10, 12)[i % 4], 1000 + i)
        w = random_weights(G, rng)
        L, _, _ = cubify(G, w)
        if not (L.is_cubic() and (L.order == 2 or is_3_connected(L))):
            bad.append((i, "L"))
        eng = Engine()
        es = sorted(G.edges)
        for e, f in [(e, None) for e in es] + [(e, f) for e in es for f in es if e < f]:
            calls += 1
            res = eulerian_subgraph(G, w, e, f, engine=eng)
            if not (
                is_eulerian(G, res.edges)
                and e in res.edges
                and (f is None or f in res.edges)
                and res.weight + 1e-9 >= res.bound
            ):
                bad.append((i, e, f))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    report_line(capsys, 6, "Eulerian corollary", ok, f"50 graphs, {calls} calls, {len(bad)} bad, {elapsed:.0f}s (limit 300s)")
    assert not bad, bad[:5]
    assert elapsed < 300


def test_criterion_7_branch_coverage(capsys):
    report = verify()
    missing = report.missing_labels()
    ok = not missing and not report.failures
    report_line(
        capsys, 7, "branch coverage", ok,
        f"{len(REQUIRED_LABELS) - len(missing)} of {len(REQUIRED_LABELS)} branches fired"
        + (f", missing {missing}" if missing else ""),
    )
    assert not missing
    assert not report.failures


def test_criterion_8_determinism(capsys):
    cmd = [sys.executable, "-m", "circumference", "verify", "--seed", "11", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    ok = a == b and json.loads(a)["calls"] > 0
    report_line(capsys, 8, "determinism", ok, f"two runs of verify --seed 11, {len(a)} bytes each, identical: {a == b}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
