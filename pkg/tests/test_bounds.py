import math

import pytest
from hypothesis import assume, given, strategies as st

from circumference.bounds import (
    ALPHA,
    BETA,
    C,
    R,
    HypothesisFailed,
    bound,
    check_inequality,
    grid_check,
    margin,
    optimal_exponent,
    proof_constants_report,
)

reals = st.floats(0, 1e4, allow_nan=False)


def test_constants():
    assert R == 0.8
    assert abs(C - 0.922) < 1e-3
    assert abs(ALPHA - 1.983) < 1e-3
    assert abs(6**R * C + 1 - 8**R * C) < 1e-12
    assert abs(BETA ** (1 / (1 - R)) - 1.455) < 1e-3


def test_bound():
    assert bound(True, 32) == pytest.approx(16.0)
    assert bound(False, 32) == pytest.approx(16 * C)
    assert bound(True, 0) == 0


@pytest.mark.parametrize(
    "part, params, value, rel",
    [
        ("i", (8.956, 1.036, 1), 2.918e-5, 1e-2),
        ("iii", (8.884, 1), 0.0018, 3e-2),
        ("iv", (2.072, 1.036, 1, 1, 5.884), 0.0275, 1e-2),
        ("v", (1, 1, 1, 1), 0.128, 1e-2),
    ],
)
def test_printed_margins(part, params, value, rel):
    assert margin(part, *params) == pytest.approx(value, rel=rel)


def test_vi_is_tight_at_the_corner():
    assert abs(margin("vi", 6, 1, 1)) < 1e-12
    assert check_inequality("vi", 6, 1, 1)


def test_hypothesis_failure_is_distinct():
    with pytest.raises(HypothesisFailed):
        check_inequality("i", 1, 1, 1)
    with pytest.raises(ValueError):
        margin("ii", 1, 2, 3)
    with pytest.raises(ValueError):
        margin("ii", -1, 2)


@given(reals, reals, reals)
def test_part_i(x, y, z):
    assume(x >= 8.956 * z and y >= 1.036 * z)
    assert check_inequality("i", x, y, z)


@given(reals, reals)
def test_part_ii(x, y):
    assume(x <= 10.174 * y)
    assert check_inequality("ii", x, y)


@given(reals, reals)
def test_part_iii(x, y):
    assume(0.5 * y <= x <= 8.884 * y)
    assert check_inequality("iii", x, y)


@given(st.floats(1e-3, 1e3), st.floats(1, 3), st.floats(1, 3), st.floats(1, 3), st.floats(1, 3))
def test_part_iv(t, a, b, c, d):
    # scale the other four so that the premise on t holds, with headroom for rounding
    s = t / 2.072 * (1 + 1e-9)
    w, x, y, z = 1.036 * s * a, s * b, s * c, 5.884 * s * d
    assume(z < 1.98 * (t + w + x + y))
    assert check_inequality("iv", t, w, x, y, z)


@given(reals, reals, reals, reals)
def test_part_v(w, x, y, z):
    assume(w <= min(x, y, z))
    assert check_inequality("v", w, x, y, z)


@given(reals, reals, reals)
def test_part_vi(x, y, z):
    assume(x >= 6 * z and y >= z)
    assert check_inequality("vi", x, y, z)


def test_grid_small():
    for part in ("i", "ii", "iii", "vi"):
        g = grid_check(part, grid_max=12)
        assert g.exhaustive and g.failures == 0 and g.evaluated > 0
    g = grid_check("v", grid_max=12, samples=5000)
    assert not g.exhaustive and g.evaluated == 5000 and g.failures == 0


def test_optimal_exponent():
    r = optimal_exponent(1e-12)
    assert 0.800008 < r < 0.81
    assert abs(8.956**r + 1.036**r - 10.992**r) < 1e-12
    assert 8.956**0.9 + 1.036**0.9 - 10.992**0.9 < 0
    with pytest.raises(ValueError):
        optimal_exponent(0.1)


def test_report_has_expressions():
    rep = proof_constants_report()
    for name, row in rep.items():
        assert row["expr"] and math.isfinite(row["value"]), name
    assert rep["c"]["value"] == C
