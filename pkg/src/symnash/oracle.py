"""Ground truth at desk scale: exact best-response checks and support enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .core import DimensionError, MixedStrategy, SymmetricGame, _vec, carrier, dot, payoff_vector
from .ratlp import LpProblem, LpStatus, lp_solve

DEFAULT_MAX_N = 12


class OracleRefused(ValueError):
    """The game is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class NashCheckReport:
    is_nash: bool
    max_payoff: Fraction
    violating_index: Optional[int]  # 0-based; a pure strategy beating X's payoff
    support_ok: bool
    payoff: Fraction  # X . (payoff vector)

    def to_json(self) -> dict:
        return {
            "is_nash": self.is_nash,
            "max_payoff": str(self.max_payoff),
            "payoff": str(self.payoff),
            "violating_index": None if self.violating_index is None else self.violating_index + 1,
            "support_ok": self.support_ok,
        }


def best_response_report(u: Sequence[Fraction], X) -> NashCheckReport:
    """Is X a best response to whatever produced the payoff vector ``u``?

    Best response condition: every carrier coordinate of X attains max(u).
    """
    X = _vec(X)
    if len(u) != len(X):
        raise DimensionError(f"payoff vector of length {len(u)} vs strategy of length {len(X)}")
    top = max(u)
    ok = all(u[i] == top for i in carrier(X))
    violating = None if ok else min(i for i, v in enumerate(u) if v == top)
    return NashCheckReport(ok, top, violating, ok, dot(X, u))


def is_symmetric_nash(game: SymmetricGame, X) -> NashCheckReport:
    return best_response_report(payoff_vector(game, X), X)


def is_fixed_point_support(game: SymmetricGame, X) -> bool:
    """Exact fixed-point test for the Hedge map: payoffs constant on the carrier."""
    u = payoff_vector(game, X)
    vals = {u[i] for i in carrier(X)}
    return len(vals) == 1


def _support_lp(C, S):
    """maximize t  s.t.  (CX)_i = v on S, (CX)_j <= v off S, X_i >= t on S, X_j = 0 off S."""
    n = len(C)
    nv = n + 2  # X, v, t
    inside = set(S)
    eq, ineq = [], []
    for i in range(n):
        row = list(C[i]) + [-1, 0]
        if i in inside:
            eq.append((row, 0))
        else:
            ineq.append((row, 0))
            eq.append(([1 if k == i else 0 for k in range(nv)], 0))
    eq.append(([1] * n + [0, 0], 1))
    for i in S:
        ineq.append(([-1 if k == i else 0 for k in range(n)] + [0, 1], 0))
    obj = [0] * (n + 1) + [1]
    nonneg = [True] * n + [False, False]
    return LpProblem(obj, eq, ineq, nonneg)


def enumerate_symmetric_nash(game: SymmetricGame, max_n: int = DEFAULT_MAX_N) -> list:
    """One symmetric equilibrium strategy per support that admits one.

    For every nonempty support S the exact feasibility system is solved
    with strict positivity on S (maximize the smallest support weight), so
    each returned strategy has carrier exactly S. Order is lexicographic in
    the (0-based) support tuple.
    """
    n = game.n
    if n > max_n:
        raise OracleRefused(f"support enumeration refuses n={n} > cap {max_n} (2^n supports)")
    supports = sorted(S for k in range(1, n + 1) for S in combinations(range(n), k))
    found = []
    for S in supports:
        out = lp_solve(_support_lp(game.C, S))
        if out.status is not LpStatus.OPTIMAL or out.objective_value <= 0:
            continue
        X = MixedStrategy(out.point[:n])
        if not is_symmetric_nash(game, X).is_nash or carrier(X) != S:
            raise AssertionError(f"support LP for {S} produced a non-equilibrium")
        found.append(X)
    if not found:
        raise AssertionError("no symmetric equilibrium found; support enumeration is broken")
    return found


# Exact Gaussian elimination, independent of the simplex ---------------------


def solve_linear_system(M, r):
    """Solve M z = r exactly.

    Returns ``("unique", z)``, ``("inconsistent", None)`` or
    ``("underdetermined", None)``.
    """
    rows = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(M, r)]
    ncols = len(M[0]) if M else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        p = next((k for k in range(rank, len(rows)) if rows[k][col] != 0), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        pr = rows[rank]
        inv = 1 / pr[col]
        rows[rank] = pr = [v * inv for v in pr]
        for k in range(len(rows)):
            if k != rank and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], pr)]
        pivots.append(col)
        rank += 1
    if any(row[-1] != 0 for row in rows[rank:]):
        return "inconsistent", None
    if rank < ncols:
        return "underdetermined", None
    z = [Fraction(0)] * ncols
    for k, col in enumerate(pivots):
        z[col] = rows[k][-1]
    return "unique", z


def equalizer_vertices(game: SymmetricGame, max_n: int = DEFAULT_MAX_N) -> list:
    """All vertices (X, c) of the equalizer polytope, by support enumeration.

    The polytope is bounded, so it is nonempty iff this list is nonempty.
    """
    n = game.n
    if n > max_n:
        raise OracleRefused(f"vertex enumeration refuses n={n} > cap {max_n}")
    C = game.C
    out = []
    for k in range(1, n + 1):
        for S in combinations(range(n), k):
            M = [[C[i][j] for j in S] + [-1] for i in range(n)]
            M.append([1] * k + [0])
            r = [0] * n + [1]
            kind, z = solve_linear_system(M, r)
            if kind != "unique" or any(v < 0 for v in z[:k]):
                continue
            if any(v == 0 for v in z[:k]):
                continue  # same vertex appears on a smaller support
            x = [Fraction(0)] * n
            for j, v in zip(S, z):
                x[j] = v
            out.append((MixedStrategy(x), z[-1]))
    return out


def interior_equalizer_margin(game: SymmetricGame) -> Optional[Fraction]:
    """max min_i X_i over equalizers X; None if there is no equalizer.

    A positive value means an interior equalizer (equivalently an interior
    symmetric equilibrium, equivalently an interior Hedge fixed point) exists.
    """
    n = game.n
    eq = [(list(game.C[i]) + [-1, 0], 0) for i in range(n)]
    eq.append(([1] * n + [0, 0], 1))
    ineq = [([-1 if k == i else 0 for k in range(n)] + [0, 1], 0) for i in range(n)]
    out = lp_solve(LpProblem([0] * (n + 1) + [1], eq, ineq, [True] * n + [False, False]))
    if out.status is LpStatus.INFEASIBLE:
        return None
    return out.objective_value


def interior_best_response_margin(game: SymmetricGame, i: int) -> Optional[Fraction]:
    """max min_k Y_k over opponent strategies Y against which E_i is a best response.

    Positive iff E_i is a best response to some interior strategy, which is
    the undominated characterization of pure strategies.
    """
    n = game.n
    C = game.C
    ineq = [([C[j][k] - C[i][k] for k in range(n)] + [0], 0) for j in range(n) if j != i]
    ineq += [([-1 if k == j else 0 for k in range(n)] + [1], 0) for j in range(n)]
    eq = [([1] * n + [0], 1)]
    out = lp_solve(LpProblem([0] * n + [1], eq, ineq, [True] * n + [False]))
    if out.status is LpStatus.INFEASIBLE:
        return None
    return out.objective_value
