import math
import os
import subprocess
import sys

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symnash.hedge import (
    CarrierError,
    HedgeParams,
    hedge_step,
    log_step,
    probe_better_response,
    probe_convexity,
    probe_derivative,
    probe_instability,
    probe_stability,
    re_alpha_derivative,
    relative_entropy,
    relative_entropy_after_step,
    trajectory,
    trajectory_csv,
)
from symnash.hedge import _kernels
from symnash.hedge.probes import finite_difference_re

RPS = np.array([[0, -1, 1], [1, 0, -1], [-1, 1, 0]], dtype=float)
COORD = np.eye(2)
CENTER = np.full(3, 1 / 3)


def test_alpha_zero_is_identity():
    x = np.array([0.2, 0.5, 0.3])
    assert np.allclose(hedge_step(RPS, x, 0.0), x, rtol=0, atol=1e-15)


def test_rps_center_is_fixed():
    assert np.abs(hedge_step(RPS, CENTER, 7.0) - CENTER).max() <= 1e-15


def test_coordination_step_matches_high_precision():
    with mpmath.workdps(50):
        e8, e2 = mpmath.exp(mpmath.mpf("0.8")), mpmath.exp(mpmath.mpf("0.2"))
        expected = float(mpmath.mpf("0.8") * e8 / (mpmath.mpf("0.8") * e8 + mpmath.mpf("0.2") * e2))
    t = hedge_step(COORD, [0.8, 0.2], 1.0)
    assert t[0] == pytest.approx(expected, rel=1e-14)
    # the commonly quoted rounding 0.879348 is off in the sixth decimal
    assert abs(t[0] - 0.879348) < 5e-6


def test_zero_coordinates_stay_zero():
    t = hedge_step(RPS, [0.5, 0.5, 0.0], 3.0)
    assert t[2] == 0 and np.all(t[:2] > 0)


def test_large_alpha_does_not_overflow():
    C = np.array([[1000.0, 0.0], [0.0, 0.0]])
    t = hedge_step(C, [0.5, 0.5], 0.5)  # exp(500) overflows without the max shift
    assert np.isfinite(t).all() and t[1] > 0 and t[0] == 1.0
    with pytest.raises(FloatingPointError):
        hedge_step(C, [0.5, 0.5], 1e6)  # the second coordinate underflows
    lt = log_step(C, [0.5, 0.5], 1e6)
    assert np.isfinite(lt).all()


def test_invalid_inputs():
    with pytest.raises(ValueError):
        hedge_step(RPS, [0.5, 0.5, 0.5], 1.0)
    with pytest.raises(ValueError):
        hedge_step(RPS, [0.5, 0.5], 1.0)
    with pytest.raises(ValueError):
        hedge_step(RPS, CENTER, -1.0)
    with pytest.raises(ValueError):
        hedge_step(RPS, CENTER, float("nan"))
    with pytest.raises(ValueError):
        HedgeParams(0.0, 10)


def test_callable_alpha():
    x = np.array([0.5, 0.3, 0.2])
    assert np.array_equal(hedge_step(RPS, x, lambda v: 2.0), hedge_step(RPS, x, 2.0))


def test_relative_entropy_examples():
    p = np.array([0.2, 0.3, 0.5])
    assert relative_entropy(p, p) == 0
    assert relative_entropy([1, 0], [0.5, 0.5]) == pytest.approx(math.log(2), rel=1e-15)
    with pytest.raises(CarrierError):
        relative_entropy([1, 0], [0, 1])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0.01, 1), min_size=2, max_size=6), st.data())
def test_relative_entropy_dominates_squared_distance(w, data):
    p = np.array(w) / sum(w)
    v = data.draw(st.lists(st.floats(0.01, 1), min_size=len(w), max_size=len(w)))
    q = np.array(v) / sum(v)
    assert relative_entropy(p, q) >= np.sum((p - q) ** 2) - 1e-15


def test_derivative_at_zero_is_payoff_gap():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(2, 6))
        C = rng.integers(-5, 6, size=(n, n)).astype(float)
        x, y = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
        u = C @ x
        assert re_alpha_derivative(C, x, y, 0.0) == pytest.approx((x - y) @ u, abs=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 3.0, 8.0])
def test_derivative_vanishes_at_fixed_point(alpha):
    y = np.array([0.6, 0.1, 0.3])
    assert abs(re_alpha_derivative(RPS, CENTER, y, alpha)) <= 1e-15
    assert abs(finite_difference_re(RPS, CENTER, y, alpha)) <= 1e-15


def test_derivative_requires_interior():
    with pytest.raises(ValueError):
        re_alpha_derivative(RPS, [0.5, 0.5, 0], CENTER, 1.0)


@pytest.mark.parametrize("alpha", [0.1, 1.0, 10.0])
def test_fixed_point_invariance(alpha):
    # equalizers of random games with an interior equalizer
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.integers(2, 5))
        x = rng.dirichlet(np.ones(n))
        C = rng.normal(size=(n, n))
        C -= np.outer(C @ x, np.ones(n)) / 1.0  # rows shifted so that C x = 0
        C += rng.normal()
        t = hedge_step(C, x, alpha)
        assert np.abs(t - x).max() <= 1e-12


def test_coordination_best_response_example():
    x, y = np.array([0.8, 0.2]), np.array([1.0, 0.0])
    before = relative_entropy(y, x)
    for a in (0.1, 1.0, 10.0):
        assert relative_entropy_after_step(COORD, x, y, a) < before
    rep = probe_stability(COORD, pairs=[(x, y)], small_alphas=())
    assert rep.ok and rep.counts["consistent"] == 1


def test_rps_trajectory_example():
    rows = trajectory(RPS, [0.5, 0.3, 0.2], 1.0, 100, CENTER)
    re = np.array([r[2] for r in rows])
    assert np.all(np.diff(re) > 0)
    for _, p, _ in rows:
        assert abs(p.sum() - 1) <= 1e-12 and np.all(p > 0)


def test_probes_on_fixed_point_are_not_applicable():
    pairs = [(CENTER, np.array([1.0, 0.0, 0.0]))]
    assert probe_better_response(RPS, pairs=pairs).counts["not_applicable"] == 1
    assert probe_stability(RPS, pairs=pairs).counts["not_applicable"] == 1
    assert probe_instability(RPS, pairs=pairs).counts["not_applicable"] == 1
    rep = probe_convexity(RPS, pairs=pairs)
    assert rep.counts["not_applicable"] == 1 and rep.ok


@pytest.mark.parametrize("probe", [probe_convexity, probe_better_response, probe_stability,
                                   probe_instability, probe_derivative])
def test_probes_are_deterministic_and_pass(probe):
    a, b = probe(trials=40, seed=3), probe(trials=40, seed=3)
    assert a.to_json() == b.to_json()
    assert a.ok


def test_trajectory_csv_columns():
    rows = trajectory(RPS, [0.5, 0.3, 0.2], 1.0, 3, CENTER)
    lines = trajectory_csv(rows).splitlines()
    assert lines[0] == "step,x1,x2,x3,re_to_reference,sum_error"
    assert len(lines) == 5


def test_trajectory_reference_carrier():
    with pytest.raises(CarrierError):
        trajectory(RPS, [0.5, 0.5, 0.0], 1.0, 5, CENTER)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6), st.floats(0.0, 20.0))
def test_simplex_invariance(n, seed, alpha):
    rng = np.random.default_rng(seed)
    C = rng.integers(-5, 6, size=(n, n)).astype(float)
    x = rng.dirichlet(np.ones(n))
    lt = log_step(C, x, alpha)
    t = np.exp(lt)
    t /= t.sum()
    assert abs(t.sum() - 1) <= 1e-12
    assert np.all(np.isfinite(lt))


needs_numba = pytest.mark.skipif(_kernels.numba_kernels is None, reason="numba not importable")


@needs_numba
def test_backends_agree():
    rng = np.random.default_rng(17)
    npk, nbk = _kernels.numpy_kernels, _kernels.numba_kernels
    for _ in range(30):
        n = int(rng.integers(2, 7))
        C = rng.integers(-5, 6, size=(n, n)).astype(float)
        x = rng.dirichlet(np.ones(n))
        x[rng.integers(n)] = 0.0
        x /= x.sum()
        lx = np.log(np.where(x > 0, x, 1.0))
        lx[x == 0] = -np.inf
        a = float(rng.uniform(0, 10))
        s1, s2 = npk.log_step(C, lx, a), nbk.log_step(C, lx, a)
        assert np.array_equal(np.isinf(s1), np.isinf(s2))
        fin = np.isfinite(s1)
        assert np.allclose(s1[fin], s2[fin], rtol=0, atol=1e-12)
        y = np.where(x > 0, rng.dirichlet(np.ones(n)), 0.0)
        y /= y.sum()
        grid = np.linspace(0, 8, 17)
        assert np.allclose(npk.re_curve(C, lx, y, grid), nbk.re_curve(C, lx, y, grid),
                           rtol=1e-12, atol=1e-12)
        l1, r1 = npk.trajectory(C, lx, a / 10, 50, y)
        l2, r2 = nbk.trajectory(C, lx, a / 10, 50, y)
        assert np.allclose(r1, r2, rtol=1e-10, atol=1e-10)


def test_disable_flag_selects_numpy():
    code = "from symnash.hedge import _kernels as k; print(k.kernels.name, k.JIT_DISABLED)"
    env = {**os.environ, "SYMNASH_DISABLE_JIT": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True).stdout.split()
    assert out == ["numpy", "True"]
    env["SYMNASH_DISABLE_JIT"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True).stdout.split()
    assert out[1] == "False"
    if _kernels.HAVE_NUMBA:
        assert out[0] == "numba"
