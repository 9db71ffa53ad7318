"""The Hedge map T and relative-entropy instruments, in guarded floating point."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import _kernels

SUM_TOL = 1e-12

Alpha = Union[float, Callable[[np.ndarray], float]]


class CarrierError(ValueError):
    """carrier(P) is not contained in carrier(Q)."""


@dataclass(frozen=True)
class HedgeParams:
    alpha: float
    steps: int

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("learning rate must be positive for dynamics")
        if self.steps < 0:
            raise ValueError("step count must be non-negative")


def as_matrix(C) -> np.ndarray:
    if hasattr(C, "to_float"):
        return C.to_float()
    return np.ascontiguousarray(C, dtype=np.float64)


def as_strategy(X, n=None) -> np.ndarray:
    """Validate and return a float strategy (entries >= 0, sum within 1e-12 of 1)."""
    x = X.to_float() if hasattr(X, "to_float") else np.array(X, dtype=np.float64)
    if x.ndim != 1 or (n is not None and x.shape[0] != n):
        raise ValueError(f"strategy of shape {x.shape} does not fit a game with {n} strategies")
    if not np.all(np.isfinite(x)) or np.any(x < 0):
        raise ValueError("strategy entries must be finite and non-negative")
    if abs(x.sum() - 1.0) > SUM_TOL:
        raise ValueError(f"strategy sums to {x.sum()!r}, not 1")
    return x


def _log(x):
    with np.errstate(divide="ignore"):
        return np.log(x)


def _resolve_alpha(alpha: Alpha, x) -> float:
    a = float(alpha(x)) if callable(alpha) else float(alpha)
    if not a >= 0 or not np.isfinite(a):
        raise ValueError(f"learning rate must be finite and >= 0, got {a!r}")
    return a


def log_step(C, X, alpha: Alpha) -> np.ndarray:
    """log T(X), ``-inf`` on zero coordinates; never underflows."""
    C = as_matrix(C)
    x = as_strategy(X, C.shape[0])
    out = _kernels.kernels.log_step(C, _log(x), _resolve_alpha(alpha, x))
    if np.any(np.isnan(out)) or np.any(out == np.inf):
        raise FloatingPointError("Hedge step produced NaN/overflow")
    return out


def hedge_step(C, X, alpha: Alpha) -> np.ndarray:
    """One application of T_i(X) = X_i exp(a (CX)_i) / sum_j X_j exp(a (CX)_j).

    Exponents are shifted by the largest one, which leaves T unchanged.
    ``alpha`` may be a constant or a callable of X.
    """
    x = as_strategy(X)
    logt = log_step(C, x, alpha)
    t = np.exp(logt)
    t /= t.sum()
    if np.any((x > 0) & (t == 0)):
        raise FloatingPointError("a positive coordinate underflowed to zero; use log_step")
    if abs(t.sum() - 1.0) > SUM_TOL:
        raise FloatingPointError(f"Hedge step left the simplex (sum {t.sum()!r})")
    return t


def relative_entropy(P, Q) -> float:
    """sum over carrier(P) of P_i ln(P_i / Q_i)."""
    p = np.asarray(P, dtype=np.float64)
    q = np.asarray(Q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError("strategies have different lengths")
    if np.any((p > 0) & (q <= 0)):
        raise CarrierError("carrier of P is not contained in carrier of Q")
    return float(_kernels.kernels.relative_entropy_log(p, _log(q)))


def relative_entropy_after_step(C, X, Y, alpha: Alpha) -> float:
    """RE(Y, T(X)) computed from log-weights, finite even when T(X) is extreme."""
    y = as_strategy(Y)
    x = as_strategy(X)
    if np.any((y > 0) & (x <= 0)):
        raise CarrierError("carrier of Y is not contained in carrier of X")
    return float(_kernels.kernels.relative_entropy_log(y, log_step(C, x, alpha)))


def re_alpha_derivative(C, X, Y, alpha: float) -> float:
    """Closed form of d/da RE(Y, T(X)): the X-tilted mean of CX minus Y.CX.

    Evaluated as sum_i Y_i (m - (CX)_i) with each m - (CX)_i formed from
    payoff differences, so saturated maps (derivatives near 1e-12) keep
    their relative accuracy.
    """
    C = as_matrix(C)
    x = as_strategy(X, C.shape[0])
    y = as_strategy(Y, C.shape[0])
    if np.any(x <= 0):
        raise ValueError("derivative requires an interior X")
    u = C @ x
    w = x * np.exp(alpha * (u - u.max()))
    W = w.sum()
    gaps = np.array([w @ (u - ui) / W for ui in u])  # tilted mean minus (CX)_i
    return float(y @ gaps)


def trajectory(C, X0, alpha: float, steps: int, reference):
    """Iterate the map from X0; yield ``(step, strategy, RE(reference, strategy))``.

    The state is carried as log-weights, so the reported relative entropy
    stays finite even when coordinates of the strategy round to zero.
    """
    C = as_matrix(C)
    x0 = as_strategy(X0, C.shape[0])
    ref = as_strategy(reference, C.shape[0])
    if np.any((ref > 0) & (x0 <= 0)):
        raise CarrierError("reference strategy must be supported inside carrier(X0)")
    HedgeParams(alpha, steps)
    logs, re = _kernels.kernels.trajectory(C, _log(x0), float(alpha), int(steps), ref)
    if np.any(np.isnan(logs)) or np.any(np.isnan(re)):
        raise FloatingPointError("trajectory produced NaN")
    rows = []
    for k in range(steps + 1):
        p = np.exp(logs[k])
        p /= p.sum()
        rows.append((k, p, float(re[k])))
    return rows


def trajectory_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    n = len(rows[0][1])
    w.writerow(["step", *[f"x{i + 1}" for i in range(n)], "re_to_reference", "sum_error"])
    for k, p, re in rows:
        w.writerow([k, *[repr(float(v)) for v in p], repr(re), repr(abs(float(p.sum()) - 1.0))])
    return buf.getvalue()
