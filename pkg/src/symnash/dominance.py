"""Weak and strict dominance of pure strategies by mixed strategies, via exact LPs.

By bilinearity the quantifier over all opponent mixed strategies reduces to
the n pure columns, so each test is a single LP over the simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import MixedStrategy, SymmetricGame
from .ratlp import LpProblem, lp_solve


@dataclass(frozen=True)
class DominanceWitness:
    i: int  # 0-based dominated strategy
    X: MixedStrategy
    strict: bool
    slack: tuple  # (C^T X)_j - C_ij for every column j

    def check(self, game: SymmetricGame) -> bool:
        return self.slack == column_slacks(game, self.i, self.X) and (
            all(s > 0 for s in self.slack) if self.strict
            else all(s >= 0 for s in self.slack) and any(s > 0 for s in self.slack))


def column_slacks(game: SymmetricGame, i: int, X) -> tuple:
    C = game.C
    n = game.n
    return tuple(sum((X[k] * C[k][j] for k in range(n)), Fraction(0)) - C[i][j]
                 for j in range(n))


def _check_index(game, i):
    if game.n < 2:
        raise ValueError("dominance needs at least two pure strategies")
    if not 0 <= i < game.n:
        raise IndexError(f"strategy index {i + 1} out of range 1..{game.n}")


def weakly_dominated(i: int, game: SymmetricGame) -> Optional[DominanceWitness]:
    """Witness that pure strategy ``i`` (0-based) is weakly dominated, or None.

    LP: maximize the summed column slack over the simplex with every slack
    >= 0. A positive optimum certifies at least one strict column.
    """
    _check_index(game, i)
    C, n = game.C, game.n
    # slack_j >= 0   <=>   -sum_k C_kj X_k <= -C_ij
    ineq = [([-C[k][j] for k in range(n)], -C[i][j]) for j in range(n)]
    eq = [([1] * n, 1)]
    obj = [sum(C[k]) for k in range(n)]
    out = lp_solve(LpProblem(obj, eq, ineq))
    if not out.ok:
        # the simplex is nonempty and E_i itself is feasible, so this is unreachable
        raise RuntimeError(f"dominance LP for strategy {i + 1} returned {out.status}")
    X = MixedStrategy(out.point)
    slack = column_slacks(game, i, X)
    if sum(slack) <= 0:
        return None
    w = DominanceWitness(i, X, False, slack)
    assert w.check(game)
    return w


def strictly_dominated(i: int, game: SymmetricGame) -> Optional[DominanceWitness]:
    """Witness that pure strategy ``i`` is strictly dominated (maximin slack > 0)."""
    _check_index(game, i)
    C, n = game.C, game.n
    # variables X_1..X_n, t (free);  t - slack_j <= 0
    ineq = [([-C[k][j] for k in range(n)] + [1], -C[i][j]) for j in range(n)]
    eq = [([1] * n + [0], 1)]
    out = lp_solve(LpProblem([0] * n + [1], eq, ineq, [True] * n + [False]))
    if not out.ok:
        raise RuntimeError(f"strict dominance LP for strategy {i + 1} returned {out.status}")
    *x, t = out.point
    if t <= 0:
        return None
    X = MixedStrategy(x)
    w = DominanceWitness(i, X, True, column_slacks(game, i, X))
    assert w.check(game)
    return w


def first_weakly_dominated(game: SymmetricGame):
    """Smallest index with a weak-dominance witness, as ``(i, witness)``, or None."""
    for i in range(game.n):
        w = weakly_dominated(i, game)
        if w is not None:
            return i, w
    return None


def weakly_dominated_by_columns(i: int, game: SymmetricGame) -> bool:
    """Independent re-check of weak dominance: one LP per column.

    For each column j, maximize slack_j subject to all slacks >= 0 on the
    simplex; dominated iff some column admits a positive slack.
    """
    _check_index(game, i)
    C, n = game.C, game.n
    ineq = [([-C[k][j] for k in range(n)], -C[i][j]) for j in range(n)]
    eq = [([1] * n, 1)]
    for j in range(n):
        out = lp_solve(LpProblem([C[k][j] for k in range(n)], eq, ineq))
        if out.ok and out.objective_value - C[i][j] > 0:
            return True
    return False
