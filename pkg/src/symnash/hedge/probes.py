"""Numerical probes that try to falsify the Hedge lemmas on sampled games.

Each sample draws its own generator from ``(seed, sample index)``, so any
single verdict can be reproduced in isolation. A probe never proves
anything; it reports per-sample measurements and the tolerance it used.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from . import _kernels
from .dynamics import _log, as_matrix, re_alpha_derivative

CONVEXITY_GRID = tuple(0.25 * k for k in range(33))  # 0, 0.25, ..., 8
PROBE_ALPHAS = (0.1, 1.0, 10.0)
SMALL_ALPHAS = (1e-1, 1e-2, 1e-3, 1e-4)
FIXED_POINT_SPREAD = 1e-12
ORACLE_RESOLUTION = 1e-30  # absolute noise floor of the 60-digit difference quotient

CONSISTENT = "consistent"
VIOLATED = "violated"
NOT_APPLICABLE = "not_applicable"


@dataclass
class ProbeSample:
    index: int
    game: list
    X: list
    Y: list
    alphas: list
    measured: dict
    verdict: str


@dataclass
class ProbeReport:
    lemma: str
    seed: int
    tol: float
    samples: list = field(default_factory=list)

    @property
    def counts(self) -> dict:
        out = {CONSISTENT: 0, VIOLATED: 0, NOT_APPLICABLE: 0}
        for s in self.samples:
            out[s.verdict] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts[VIOLATED] == 0

    def to_json(self, include_samples=True) -> dict:
        d = {"lemma": self.lemma, "seed": self.seed, "tol": self.tol,
             "trials": len(self.samples), "counts": self.counts, "ok": self.ok,
             "kernels": _kernels.kernels.name}
        if include_samples:
            d["samples"] = [asdict(s) for s in self.samples]
        return d


def sample_rng(seed: int, k: int) -> np.random.Generator:
    return np.random.default_rng([seed, k])


def random_game(rng, n_min=2, n_max=5, bound=5) -> np.ndarray:
    n = int(rng.integers(n_min, n_max + 1))
    return rng.integers(-bound, bound + 1, size=(n, n)).astype(np.float64)


def random_strategy(rng, n, support=None) -> np.ndarray:
    x = np.zeros(n)
    idx = np.arange(n) if support is None else np.asarray(support)
    x[idx] = rng.dirichlet(np.ones(len(idx)))
    return x


def random_support(rng, within) -> np.ndarray:
    within = np.asarray(within)
    k = int(rng.integers(1, len(within) + 1))
    return np.sort(rng.choice(within, size=k, replace=False))


def carrier_spread(u, x) -> float:
    c = u[x > 0]
    return float(c.max() - c.min())


def _draws(C, trials, seed, pairs):
    """Yield (k, rng, C, explicit (X, Y) or None)."""
    if pairs is not None:
        C = as_matrix(C)
        for k, (X, Y) in enumerate(pairs):
            yield k, sample_rng(seed, k), C, (np.asarray(X, float), np.asarray(Y, float))
        return
    for k in range(trials):
        rng = sample_rng(seed, k)
        Ck = random_game(rng) if C is None else as_matrix(C)
        yield k, rng, Ck, None


def probe_convexity(C=None, trials=1000, seed=11, alphas=CONVEXITY_GRID, tol=1e-9, pairs=None):
    """Second differences of a -> RE(Y, T_a(X)) on an evenly spaced grid must be >= -tol."""
    K = _kernels.kernels
    grid = np.asarray(alphas, dtype=np.float64)
    rep = ProbeReport("convexity", seed, tol)
    for k, rng, Ck, given in _draws(C, trials, seed, pairs):
        n = Ck.shape[0]
        if given is None:
            x = random_strategy(rng, n)
            y = random_strategy(rng, n, random_support(rng, np.arange(n)))
        else:
            x, y = given
        vals = K.re_curve(Ck, _log(x), y, grid)
        d2 = vals[:-2] - 2 * vals[1:-1] + vals[2:]
        fixed = carrier_spread(Ck @ x, x) <= FIXED_POINT_SPREAD
        verdict = VIOLATED if d2.min() < -tol else (NOT_APPLICABLE if fixed else CONSISTENT)
        rep.samples.append(ProbeSample(
            k, Ck.tolist(), x.tolist(), y.tolist(), grid.tolist(),
            {"min_second_difference": float(d2.min()),
             "strictly_positive": bool(d2.min() > 0), "fixed_point": fixed},
            verdict))
    return rep


def probe_better_response(C=None, trials=1000, seed=11, alphas=PROBE_ALPHAS, tol=1e-12, pairs=None):
    """(T(X) - X).CX > tol for interior X that is not a fixed point."""
    K = _kernels.kernels
    rep = ProbeReport("better-response", seed, tol)
    for k, rng, Ck, given in _draws(C, trials, seed, pairs):
        n = Ck.shape[0]
        x = random_strategy(rng, n) if given is None else given[0]
        u = Ck @ x
        if np.any(x <= 0) or carrier_spread(u, x) <= FIXED_POINT_SPREAD:
            rep.samples.append(ProbeSample(k, Ck.tolist(), x.tolist(), [], list(alphas),
                                           {}, NOT_APPLICABLE))
            continue
        base = x @ u
        gaps = []
        for a in alphas:
            t = np.exp(K.log_step(Ck, _log(x), a))
            t /= t.sum()
            gaps.append(float(t @ (u - base)))
        rep.samples.append(ProbeSample(
            k, Ck.tolist(), x.tolist(), [], list(alphas), {"gaps": gaps},
            CONSISTENT if min(gaps) > tol else VIOLATED))
    return rep


def probe_stability(C=None, trials=1000, seed=11, alphas=PROBE_ALPHAS, tol=0.0,
                    small_alphas=SMALL_ALPHAS, pairs=None):
    """RE(Y, T(X)) < RE(Y, X) for a best response Y to an interior non-equilibrium X.

    Also checks the weaker variant: for a merely better Y, (Y - X).CX > 0,
    the decrease holds at the smallest sampled learning rate.
    """
    K = _kernels.kernels
    rep = ProbeReport("stability", seed, tol)
    for k, rng, Ck, given in _draws(C, trials, seed, pairs):
        n = Ck.shape[0]
        x = random_strategy(rng, n) if given is None else given[0]
        lx = _log(x)
        u = Ck @ x
        if np.any(x <= 0) or carrier_spread(u, x) <= FIXED_POINT_SPREAD:
            rep.samples.append(ProbeSample(k, Ck.tolist(), x.tolist(), [], list(alphas),
                                           {}, NOT_APPLICABLE))
            continue
        if given is None:
            y = np.zeros(n)
            y[int(np.argmax(u))] = 1.0
        else:
            y = given[1]
        before = K.relative_entropy_log(y, lx)
        deltas = [float(K.relative_entropy_log(y, K.log_step(Ck, lx, a)) - before) for a in alphas]
        ok = max(deltas) < -tol
        measured = {"best_response_deltas": deltas}

        # better-but-not-best response, small learning rates only
        y2 = None
        for _ in range(100):
            cand = random_strategy(rng, n, random_support(rng, np.arange(n)))
            if (cand - x) @ u > 1e-9:
                y2 = cand
                break
        if y2 is not None and len(small_alphas):
            before2 = K.relative_entropy_log(y2, lx)
            small = [float(K.relative_entropy_log(y2, K.log_step(Ck, lx, a)) - before2)
                     for a in small_alphas]
            measured.update(better_response=y2.tolist(), small_alphas=list(small_alphas),
                            small_alpha_deltas=small)
            ok = ok and small[-1] < -tol
        rep.samples.append(ProbeSample(k, Ck.tolist(), x.tolist(), y.tolist(), list(alphas),
                                       measured, CONSISTENT if ok else VIOLATED))
    return rep


def probe_instability(C=None, trials=1000, seed=11, alphas=PROBE_ALPHAS, tol=0.0, pairs=None):
    """RE(Y, T(X)) > RE(Y, X) when carrier(Y) in carrier(X), Y != X,
    payoffs on carrier(X) are not all equal, and X.CX >= Y.CX."""
    K = _kernels.kernels
    rep = ProbeReport("instability", seed, tol)
    for k, rng, Ck, given in _draws(C, trials, seed, pairs):
        n = Ck.shape[0]
        if given is None:
            cx = random_support(rng, np.arange(n))
            if len(cx) < 2:
                cx = np.arange(n)
            x = random_strategy(rng, n, cx)
            u = Ck @ x
            y = None
            for _ in range(100):
                cand = random_strategy(rng, n, random_support(rng, cx))
                if x @ u >= cand @ u:
                    y = cand
                    break
        else:
            x, y = given
            u = Ck @ x
        applicable = (
            y is not None
            and not np.any((y > 0) & (x <= 0))
            and not np.array_equal(x, y)
            and carrier_spread(u, x) > FIXED_POINT_SPREAD
            and x @ u >= y @ u
        )
        if not applicable:
            rep.samples.append(ProbeSample(k, Ck.tolist(), x.tolist(),
                                           [] if y is None else y.tolist(), list(alphas),
                                           {}, NOT_APPLICABLE))
            continue
        lx = _log(x)
        before = K.relative_entropy_log(y, lx)
        deltas = [float(K.relative_entropy_log(y, K.log_step(Ck, lx, a)) - before) for a in alphas]
        rep.samples.append(ProbeSample(
            k, Ck.tolist(), x.tolist(), y.tolist(), list(alphas),
            {"deltas": deltas, "payoff_margin": float(x @ u - y @ u)},
            CONSISTENT if min(deltas) > tol else VIOLATED))
    return rep


def finite_difference_re(C, x, y, alpha, h="1e-8", dps=60) -> float:
    """Five-point centered difference of a -> RE(y, T_a(x)) in high precision.

    Evaluates the Hedge formula directly with mpmath, independently of the
    float kernels, so saturated cases with derivatives near 1e-12 are still
    resolved.
    """
    with mpmath.workdps(dps):
        C = [[mpmath.mpf(float(v)) for v in row] for row in np.asarray(C)]
        xs = [mpmath.mpf(float(v)) for v in x]
        ys = [mpmath.mpf(float(v)) for v in y]
        n = len(xs)
        u = [mpmath.fsum(C[i][j] * xs[j] for j in range(n)) for i in range(n)]

        def re(a):
            z = mpmath.fsum(xs[j] * mpmath.exp(a * u[j]) for j in range(n))
            # RE(y, T(x)) = sum_i y_i ln(y_i z / (x_i exp(a u_i)))
            return mpmath.fsum(ys[i] * (mpmath.log(ys[i] * z / xs[i]) - a * u[i])
                               for i in range(n) if ys[i] > 0)

        a = mpmath.mpf(float(alpha))
        h = mpmath.mpf(h)
        d = (re(a - 2 * h) - 8 * re(a - h) + 8 * re(a + h) - re(a + 2 * h)) / (12 * h)
        return float(d)


def probe_derivative(C=None, trials=1000, seed=11, tol=1e-6, alpha_max=8.0, pairs=None):
    """Closed-form d/da RE(Y, T_a(X)) against finite differences, relative error <= tol."""
    rep = ProbeReport("derivative", seed, tol)
    for k, rng, Ck, given in _draws(C, trials, seed, pairs):
        n = Ck.shape[0]
        if given is None:
            x = random_strategy(rng, n)
            y = random_strategy(rng, n, random_support(rng, np.arange(n)))
        else:
            x, y = given
        a = float(rng.uniform(0, alpha_max))
        d = re_alpha_derivative(Ck, x, y, a)
        fd = finite_difference_re(Ck, x, y, a)
        rel = abs(d - fd) / max(abs(fd), ORACLE_RESOLUTION)
        rep.samples.append(ProbeSample(
            k, Ck.tolist(), x.tolist(), y.tolist(), [a],
            {"closed_form": d, "finite_difference": fd, "relative_error": rel},
            CONSISTENT if rel <= tol else VIOLATED))
    return rep


PROBES = {
    "convexity": probe_convexity,
    "better-response": probe_better_response,
    "stability": probe_stability,
    "instability": probe_instability,
    "derivative": probe_derivative,
}
