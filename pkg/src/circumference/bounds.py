"""Exponent, constants and the power-sum inequalities behind the cycle bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

R = 0.8
C = 1.0 / (8.0**R - 6.0**R)
D = C ** (1.0 / (1.0 - R))
ALPHA = D / (1.0 - D)
BETA = (1.0 + 1.0 / 10.174) ** R
SLACK = -1e-12


@dataclass(frozen=True)
class BoundConstants:
    r: float = R
    c: float = C
    alpha: float = ALPHA


def bound(adjacent: bool, W: float) -> float:
    """Guaranteed cycle weight for total weight ``W``."""
    return W**R if adjacent else C * W**R


class HypothesisFailed(ValueError):
    """The inequality's premise does not hold for these arguments."""


def _p(x: float) -> float:
    return x**R


def _i(x, y, z):
    if not (x >= 8.956 * z and y >= 1.036 * z):
        raise HypothesisFailed("(i) needs x >= 8.956 z and y >= 1.036 z")
    return _p(x) + _p(y) - _p(x + y + z)


def _ii(x, y):
    if not x <= 10.174 * y:
        raise HypothesisFailed("(ii) needs x <= 10.174 y")
    return C * _p(x) + _p(y) - _p(x + y)


def _iii(x, y):
    if not (0.5 * y <= x <= 8.884 * y):
        raise HypothesisFailed("(iii) needs 0.5 y <= x <= 8.884 y")
    return _p(x) + _p(y) - BETA * _p(x + y)


def _iv(t, w, x, y, z):
    if not (z < 1.98 * (t + w + x + y) and 0 < t <= 2.072 * min(w / 1.036, x, y, z / 5.884)):
        raise HypothesisFailed("(iv) premise fails")
    return _p(w) + _p(x) + _p(y) + C * _p(z) - _p(t + w + x + y + z)


def _v(w, x, y, z):
    if not w <= min(x, y, z):
        raise HypothesisFailed("(v) needs w <= min(x, y, z)")
    return C * _p(x) + _p(y) + _p(z) - C * _p(w + x + y + z)


def _vi(x, y, z):
    if not (x >= 6 * z and y >= z):
        raise HypothesisFailed("(vi) needs x >= 6 z and y >= z")
    return C * _p(x) + _p(y) - C * _p(x + y + z)


PARTS = {"i": (_i, 3), "ii": (_ii, 2), "iii": (_iii, 2), "iv": (_iv, 5), "v": (_v, 4), "vi": (_vi, 3)}


def margin(part: str, *params: float) -> float:
    """Left side minus right side of the chosen inequality (raises HypothesisFailed)."""
    fn, arity = PARTS[part]
    if len(params) != arity:
        raise ValueError(f"part {part} takes {arity} parameters")
    if any(p < 0 for p in params):
        raise ValueError("parameters must be non-negative")
    return fn(*params)


def check_inequality(part: str, *params: float) -> bool:
    """True when the conclusion holds up to a -1e-12 slack."""
    return margin(part, *params) >= SLACK


def proof_constants_report() -> dict[str, dict]:
    """Named numeric constants with their defining expressions and values."""
    r, c = R, C
    rows = {
        "c": ("1/(8^r-6^r)", c),
        "alpha": ("d/(1-d), d=c^(1/(1-r))", ALPHA),
        "d": ("c^(1/(1-r))", D),
        "beta": ("(1+1/10.174)^r", BETA),
        "ineq_i_margin": ("8.956^r+1.036^r-10.992^r", 8.956**r + 1.036**r - 10.992**r),
        "ineq_ii_endpoint": ("10.174^r c+1-11.174^r", 10.174**r * c + 1 - 11.174**r),
        "ineq_iii_margin": ("8.884^r+1-9.884^r beta", 8.884**r + 1 - 9.884**r * BETA),
        "ineq_iv_margin": ("1.036^r+2+5.884^r c-10.992^r", 1.036**r + 2 + 5.884**r * c - 10.992**r),
        "ineq_v_margin": ("c+2-4^r c", c + 2 - 4**r * c),
        "ineq_vi_margin": ("6^r c+1-8^r c", 6**r * c + 1 - 8**r * c),
        "beta_root": ("beta^(1/(1-r))", BETA ** (1 / (1 - r))),
        "adj_disjoint_heavy_rest": ("9.92^r+1-11.92^r", 9.92**r + 1 - 11.92**r),
        "adj_disjoint_light_x2": ("9.536^r+1-11.536^r", 9.536**r + 1 - 11.536**r),
        "adj_disjoint_x2_large": ("2^r+6^r-9^r", 2**r + 6**r - 9**r),
        "adj_disjoint_x2_double": ("7^r+2^r-10^r", 7**r + 2**r - 10**r),
        "adj_disjoint_x5_small": ("3^r+6^r-10.5^r", 3**r + 6**r - 10.5**r),
        "adj_disjoint_x5_large": ("13.76^r+1-15.76^r", 13.76**r + 1 - 15.76**r),
        "adj_shared_min_balanced": ("2+2^r-5^r", 2 + 2**r - 5**r),
        "adj_shared_z_small": ("4-5^r", 4 - 5**r),
        "nonadj_one_overlap_floor": ("3^r c+2^r+1-8^r c", 3**r * c + 2**r + 1 - 8**r * c),
        "nonadj_one_overlap_turning": ("(2c)^(1/(1-r))", (2 * c) ** (1 / (1 - r))),
        "nonadj_two_overlap_floor": ("c 2^r+1+0.5^r-c 4.5^r", c * 2**r + 1 + 0.5**r - c * 4.5**r),
    }
    return {k: {"expr": e, "value": float(v)} for k, (e, v) in rows.items()}


def optimal_exponent(tol: float = 1e-12) -> float:
    """Root in [0.8, 0.9] of 8.956^s + 1.036^s - 10.992^s, by bisection."""
    if not 0 < tol < 1e-6:
        raise ValueError("tol must lie in (0, 1e-6)")

    def g(s: float) -> float:
        return 8.956**s + 1.036**s - 10.992**s

    lo, hi = 0.8, 0.9
    if not (g(lo) > 0 > g(hi)):
        raise ArithmeticError("bracket does not straddle a root")
    while True:
        mid = 0.5 * (lo + hi)
        val = g(mid)
        if abs(val) < tol or hi - lo < 1e-17:
            break
        if val > 0:
            lo = mid
        else:
            hi = mid
    assert mid > 0.800008
    return mid


# -- grid sweeps -------------------------------------------------------------


def _vector_margin(part: str, cols: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """(hypothesis mask, margin) evaluated on whole columns at once."""
    p = lambda a: np.power(a, R)
    if part == "i":
        x, y, z = cols
        return (x >= 8.956 * z) & (y >= 1.036 * z), p(x) + p(y) - p(x + y + z)
    if part == "ii":
        x, y = cols
        return x <= 10.174 * y, C * p(x) + p(y) - p(x + y)
    if part == "iii":
        x, y = cols
        return (0.5 * y <= x) & (x <= 8.884 * y), p(x) + p(y) - BETA * p(x + y)
    if part == "iv":
        t, w, x, y, z = cols
        m = np.minimum(np.minimum(w / 1.036, x), np.minimum(y, z / 5.884))
        return (z < 1.98 * (t + w + x + y)) & (t > 0) & (t <= 2.072 * m), p(w) + p(x) + p(y) + C * p(z) - p(t + w + x + y + z)
    if part == "v":
        w, x, y, z = cols
        return w <= np.minimum(np.minimum(x, y), z), C * p(x) + p(y) + p(z) - C * p(w + x + y + z)
    x, y, z = cols
    return (x >= 6 * z) & (y >= z), C * p(x) + p(y) - C * p(x + y + z)


@dataclass
class GridSummary:
    part: str
    evaluated: int
    vacuous: int
    failures: int
    min_margin: float
    exhaustive: bool


def grid_check(part: str, grid_max: int = 50, samples: int = 100_000, seed: int = 0) -> GridSummary:
    """Check one inequality on integer points in [0, grid_max]: every point for
    up to three parameters, ``samples`` uniform draws otherwise."""
    arity = PARTS[part][1]
    if arity <= 3:
        axes = np.meshgrid(*[np.arange(grid_max + 1, dtype=float)] * arity, indexing="ij")
        mask, m = _vector_margin(part, [a.ravel() for a in axes])
        held, vacuous, exhaustive = m[mask], int((~mask).sum()), True
    else:
        # draw until ``samples`` points satisfy the premise
        rng = np.random.default_rng(seed)
        kept: list[np.ndarray] = []
        count = vacuous = 0
        for _ in range(1000):
            draws = rng.integers(0, grid_max + 1, size=(samples, arity)).astype(float)
            mask, m = _vector_margin(part, [draws[:, i] for i in range(arity)])
            kept.append(m[mask])
            count += int(mask.sum())
            vacuous += int((~mask).sum())
            if count >= samples:
                break
        held, exhaustive = np.concatenate(kept)[:samples], False
    fails = int(np.count_nonzero(held < SLACK))
    return GridSummary(
        part,
        int(held.size),
        vacuous,
        fails,
        float(held.min()) if held.size else math.inf,
        exhaustive,
    )
