"""Equalizers: mixed strategies X with CX constant across every coordinate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import MixedStrategy, SymmetricGame, payoff_vector
from .ratlp import LpProblem, LpStatus, lp_solve


@dataclass(frozen=True)
class EqualizerCertificate:
    X: MixedStrategy
    c: Fraction

    def check(self, game: SymmetricGame) -> bool:
        return all(v == self.c for v in payoff_vector(game, self.X))


def _equalizer_lp(C, value_nonneg: bool) -> LpProblem:
    n = len(C)
    eq = [(list(C[i]) + [-1], 0) for i in range(n)]
    eq.append(([1] * n + [0], 1))
    return LpProblem([0] * (n + 1), eq, (), [True] * n + [value_nonneg])


def find_equalizer(game: SymmetricGame) -> Optional[EqualizerCertificate]:
    """Solve CX = c1, 1.X = 1, X >= 0 with the common value c left free.

    Returns the basic solution the simplex lands on, or None when the
    system is infeasible.
    """
    out = lp_solve(_equalizer_lp(game.C, value_nonneg=False))
    if out.status is LpStatus.INFEASIBLE:
        return None
    *x, c = out.point
    cert = EqualizerCertificate(MixedStrategy(x), c)
    assert cert.check(game)
    return cert


def find_equalizer_shifted(game: SymmetricGame) -> Optional[EqualizerCertificate]:
    """Same question in the positive standard form (C > 0, c >= 0).

    The game is shifted to strictly positive entries first; the returned
    value is mapped back to the unshifted game.
    """
    low = min(min(row) for row in game.C)
    k = 1 - low if low <= 0 else Fraction(0)
    shifted = game.shifted(k)
    out = lp_solve(_equalizer_lp(shifted.C, value_nonneg=True))
    if out.status is LpStatus.INFEASIBLE:
        return None
    *x, c = out.point
    cert = EqualizerCertificate(MixedStrategy(x), c - k)
    assert cert.check(game)
    return cert


def is_equalizer(game: SymmetricGame, X) -> bool:
    v = payoff_vector(game, X)
    return all(a == v[0] for a in v)
