"""Reduce a bimatrix game (A, B) to a symmetric game and map equilibria back.

Block construction S = [[0, A'], [B'^T, 0]] with A' = A + k, B' = B + k
shifted to strictly positive entries. A symmetric equilibrium Z = (x, y)
of S with both blocks nonzero normalizes to an equilibrium of (A, B);
every pair handed back is re-checked exactly before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import BimatrixGame, MixedStrategy, SymmetricGame, mat_vec
from .oracle import (
    DEFAULT_MAX_N,
    NashCheckReport,
    best_response_report,
    enumerate_symmetric_nash,
    is_symmetric_nash,
)
from .solver import SolveCertificate, solve


@dataclass(frozen=True)
class SymmetrizationResult:
    S: SymmetricGame
    shift: Fraction
    block_split: int  # m, the row player's strategy count
    game: BimatrixGame


@dataclass(frozen=True)
class Degenerate:
    reason: str
    Z: MixedStrategy


@dataclass(frozen=True)
class BimatrixSolution:
    P: MixedStrategy
    Q: MixedStrategy
    row_check: NashCheckReport
    col_check: NashCheckReport


def positivity_shift(game: BimatrixGame) -> Fraction:
    """0 if every payoff is already positive, else 1 - (smallest payoff)."""
    low = min(min(min(r) for r in game.A), min(min(r) for r in game.B))
    return Fraction(0) if low > 0 else 1 - low


def symmetrize(game: BimatrixGame) -> SymmetrizationResult:
    m, n = game.shape
    k = positivity_shift(game)
    size = m + n
    S = [[Fraction(0)] * size for _ in range(size)]
    for i in range(m):
        for j in range(n):
            S[i][m + j] = game.A[i][j] + k
            S[m + j][i] = game.B[i][j] + k
    return SymmetrizationResult(SymmetricGame(S), k, m, game)


def is_bimatrix_nash(game: BimatrixGame, P, Q):
    """Best response condition for both players: (row report, column report)."""
    BT = list(zip(*game.B))
    return best_response_report(mat_vec(game.A, Q), P), best_response_report(mat_vec(BT, P), Q)


def desymmetrize(res: SymmetrizationResult, Z) -> Union[BimatrixSolution, Degenerate]:
    if not isinstance(Z, MixedStrategy):
        Z = MixedStrategy(Z)
    if len(Z) != res.S.n:
        raise ValueError(f"strategy of length {len(Z)} for a symmetrized game of size {res.S.n}")
    if not is_symmetric_nash(res.S, Z).is_nash:
        raise ValueError("Z is not a symmetric equilibrium of the symmetrized game")
    m = res.block_split
    x, y = Z.p[:m], Z.p[m:]
    sx, sy = sum(x), sum(y)
    if sx == 0 or sy == 0:
        return Degenerate(f"{'row' if sx == 0 else 'column'} block carries no mass", Z)
    P = MixedStrategy([v / sx for v in x])
    Q = MixedStrategy([v / sy for v in y])
    row, col = is_bimatrix_nash(res.game, P, Q)
    if not (row.is_nash and col.is_nash):
        return Degenerate("back-mapped pair fails the bimatrix best response check", Z)
    return BimatrixSolution(P, Q, row, col)


def bimatrix_solve(game: BimatrixGame, max_n: int = DEFAULT_MAX_N):
    """Symmetrize, run the symmetric solver, map back; fall back to enumeration on S.

    Returns ``(solution or None, symmetrization, trail)``; ``trail`` lists
    what each route produced, so failures are reported rather than hidden.
    """
    res = symmetrize(game)
    trail = []
    out = solve(res.S)
    if isinstance(out, SolveCertificate):
        back = desymmetrize(res, out.X)
        trail.append({"route": "solve", "result": _describe(back), "certificate": out})
        if isinstance(back, BimatrixSolution):
            return back, res, trail
    else:
        trail.append({"route": "solve", "result": "violation", "violation": out})
    if res.S.n <= max_n:
        for Z in enumerate_symmetric_nash(res.S, max_n):
            back = desymmetrize(res, Z)
            trail.append({"route": "oracle", "result": _describe(back), "Z": Z})
            if isinstance(back, BimatrixSolution):
                return back, res, trail
    else:
        trail.append({"route": "oracle", "result": "refused", "reason": f"m+n={res.S.n} > {max_n}"})
    return None, res, trail


def _describe(back):
    return "verified" if isinstance(back, BimatrixSolution) else f"degenerate: {back.reason}"
