"""Float kernels for the Hedge map.

Two interchangeable implementations: explicit loops compiled with numba
``@njit`` and a vectorized numpy fallback. The numba path is used when
numba imports and ``SYMNASH_DISABLE_JIT`` is unset (or "0").

All kernels work in the log domain: a strategy is carried as log-weights
with ``-inf`` on zero coordinates, so positive coordinates never underflow
to zero along a trajectory.
"""

import os

import numpy as np

JIT_DISABLED = os.environ.get("SYMNASH_DISABLE_JIT", "0").strip().lower() not in ("", "0", "false", "no")

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

HAVE_NUMBA = njit is not None


# numpy path ----------------------------------------------------------------


def np_log_step(C, logx, alpha):
    x = np.exp(logx)
    a = logx + alpha * (C @ x)
    pos = np.isfinite(logx)
    m = a[pos].max()
    lse = m + np.log(np.exp(a[pos] - m).sum())
    out = np.full_like(logx, -np.inf)
    out[pos] = a[pos] - lse
    return out


def np_relative_entropy_log(y, logq):
    pos = y > 0
    return float(np.sum(y[pos] * (np.log(y[pos]) - logq[pos])))


def np_trajectory(C, logx0, alpha, steps, ref):
    n = logx0.shape[0]
    logs = np.empty((steps + 1, n))
    re = np.empty(steps + 1)
    logs[0] = logx0
    re[0] = np_relative_entropy_log(ref, logx0)
    for k in range(steps):
        logs[k + 1] = np_log_step(C, logs[k], alpha)
        re[k + 1] = np_relative_entropy_log(ref, logs[k + 1])
    return logs, re


def np_re_curve(C, logx, y, alphas):
    return np.array([np_relative_entropy_log(y, np_log_step(C, logx, a)) for a in alphas])


# loop path (compiled by numba when available) ------------------------------


def _loop_log_step(C, logx, alpha):
    n = logx.shape[0]
    x = np.exp(logx)
    out = np.empty(n)
    m = -np.inf
    for i in range(n):
        if np.isfinite(logx[i]):
            u = 0.0
            for j in range(n):
                u += C[i, j] * x[j]
            out[i] = logx[i] + alpha * u
            if out[i] > m:
                m = out[i]
        else:
            out[i] = -np.inf
    s = 0.0
    for i in range(n):
        if np.isfinite(logx[i]):
            s += np.exp(out[i] - m)
    lse = m + np.log(s)
    for i in range(n):
        if np.isfinite(logx[i]):
            out[i] -= lse
    return out


def _loop_relative_entropy_log(y, logq):
    s = 0.0
    for i in range(y.shape[0]):
        if y[i] > 0:
            s += y[i] * (np.log(y[i]) - logq[i])
    return s


def _make_loop_trajectory(step, rel):
    def trajectory(C, logx0, alpha, steps, ref):
        n = logx0.shape[0]
        logs = np.empty((steps + 1, n))
        re = np.empty(steps + 1)
        logs[0, :] = logx0
        re[0] = rel(ref, logx0)
        for k in range(steps):
            logs[k + 1, :] = step(C, logs[k], alpha)
            re[k + 1] = rel(ref, logs[k + 1])
        return logs, re

    return trajectory


def _make_loop_re_curve(step, rel):
    def re_curve(C, logx, y, alphas):
        out = np.empty(alphas.shape[0])
        for k in range(alphas.shape[0]):
            out[k] = rel(y, step(C, logx, alphas[k]))
        return out

    return re_curve


class _Kernels:
    def __init__(self, name, log_step, relative_entropy_log, trajectory, re_curve):
        self.name = name
        self.log_step = log_step
        self.relative_entropy_log = relative_entropy_log
        self.trajectory = trajectory
        self.re_curve = re_curve

    def __repr__(self):
        return f"<hedge kernels: {self.name}>"


numpy_kernels = _Kernels("numpy", np_log_step, np_relative_entropy_log, np_trajectory, np_re_curve)

if HAVE_NUMBA:
    _jit = njit(cache=True)
    _jstep = _jit(_loop_log_step)
    _jrel = _jit(_loop_relative_entropy_log)
    numba_kernels = _Kernels(
        "numba", _jstep, _jrel,
        _jit(_make_loop_trajectory(_jstep, _jrel)),
        _jit(_make_loop_re_curve(_jstep, _jrel)),
    )
else:  # pragma: no cover
    numba_kernels = None

kernels = numba_kernels if (HAVE_NUMBA and not JIT_DISABLED) else numpy_kernels
