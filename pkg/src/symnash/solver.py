"""Symmetric equilibrium by equalizer-or-eliminate recursion.

At each stage: a 1x1 game returns its only strategy; otherwise an equalizer
is returned if one exists; otherwise the lowest-indexed weakly dominated
pure strategy is removed and the surviving subgame is solved, its answer
zero-padded back. The final strategy is always checked exactly. When a
stage has neither an equalizer nor a dominated strategy, or the check
fails, a TheoremViolation is returned instead.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .core import MixedStrategy, SymmetricGame, format_rational, game_to_json, strategy_to_json
from .dominance import DominanceWitness, first_weakly_dominated
from .equalizer import EqualizerCertificate, find_equalizer
from .oracle import NashCheckReport, is_symmetric_nash


@dataclass(frozen=True)
class BaseStep:
    index: int  # original 0-based index of the surviving strategy

    def to_json(self):
        return {"step": "base", "index": self.index + 1}


@dataclass(frozen=True)
class EqualizerStep:
    indices: tuple  # original indices of the subgame, in order
    certificate: EqualizerCertificate

    def to_json(self):
        return {"step": "equalizer", "subgame": [i + 1 for i in self.indices],
                "X": strategy_to_json(self.certificate.X)["X"],
                "c": format_rational(self.certificate.c)}


@dataclass(frozen=True)
class EliminationStep:
    eliminated: int  # original index
    indices: tuple  # original indices of the subgame the witness lives in
    witness: DominanceWitness

    def to_json(self):
        return {"step": "eliminate", "eliminated": self.eliminated + 1,
                "subgame": [i + 1 for i in self.indices],
                "dominator": strategy_to_json(self.witness.X)["X"],
                "slack": [format_rational(s) for s in self.witness.slack]}


Step = Union[BaseStep, EqualizerStep, EliminationStep]


@dataclass(frozen=True)
class SolveCertificate:
    steps: tuple
    X: MixedStrategy
    verified: bool
    check: NashCheckReport = field(compare=False)

    @property
    def eliminated(self) -> list:
        return [s.eliminated for s in self.steps if isinstance(s, EliminationStep)]

    def to_json(self):
        return {"result": "certificate", "verified": self.verified,
                "elimination_order": "ascending",
                "steps": [s.to_json() for s in self.steps],
                **strategy_to_json(self.X), "check": self.check.to_json()}


class ViolationKind(str, enum.Enum):
    NO_EQUALIZER_NO_DOMINATED = "NoEqualizerNoDominated"
    UNVERIFIED_OUTPUT = "UnverifiedOutput"


@dataclass(frozen=True)
class TheoremViolation:
    kind: ViolationKind
    game: SymmetricGame  # the stuck subgame, or the original game for unverified output
    indices: tuple  # original indices of ``game``'s strategies
    steps: tuple
    detail: str

    def to_json(self):
        return {"result": "violation", "kind": self.kind.value, "detail": self.detail,
                "subgame": [i + 1 for i in self.indices], "game": game_to_json(self.game),
                "steps": [s.to_json() for s in self.steps]}


def eliminate(game: SymmetricGame, i: int):
    """Drop row and column ``i``; return the subgame and its new->old index map."""
    if game.n < 2:
        raise ValueError("cannot eliminate from a 1x1 game")
    if not 0 <= i < game.n:
        raise IndexError(f"strategy index {i + 1} out of range 1..{game.n}")
    keep = tuple(k for k in range(game.n) if k != i)
    return game.principal_submatrix(keep), keep


def zero_pad(Y, index_map: Sequence[int], n: int) -> MixedStrategy:
    Y = tuple(Y)
    if len(Y) != len(index_map) or len(set(index_map)) != len(index_map):
        raise ValueError("index map does not match the subgame strategy")
    if any(not 0 <= k < n for k in index_map):
        raise ValueError(f"index map points outside 0..{n - 1}")
    x = [0] * n
    for y, k in zip(Y, index_map):
        x[k] = y
    return MixedStrategy(x)


def solve(game: SymmetricGame) -> Union[SolveCertificate, TheoremViolation]:
    n = game.n
    sub = game
    indices = tuple(range(n))
    steps: list = []
    while True:
        if sub.n == 1:
            steps.append(BaseStep(indices[0]))
            Y = MixedStrategy([1])
            break
        cert = find_equalizer(sub)
        if cert is not None:
            steps.append(EqualizerStep(indices, cert))
            Y = cert.X
            break
        found = first_weakly_dominated(sub)
        if found is None:
            return TheoremViolation(
                ViolationKind.NO_EQUALIZER_NO_DOMINATED, sub, indices, tuple(steps),
                f"subgame on strategies {[i + 1 for i in indices]} has no equalizer "
                "and no weakly dominated pure strategy")
        i, witness = found
        steps.append(EliminationStep(indices[i], indices, witness))
        sub, keep = eliminate(sub, i)
        indices = tuple(indices[k] for k in keep)
    X = zero_pad(Y, indices, n)
    report = is_symmetric_nash(game, X)
    if not report.is_nash:
        return TheoremViolation(
            ViolationKind.UNVERIFIED_OUTPUT, game, tuple(range(n)), tuple(steps),
            f"output fails the best response check: strategy {report.violating_index + 1} "
            f"earns {report.max_payoff} > {report.payoff}")
    return SolveCertificate(tuple(steps), X, True, report)


def replay_certificate(game: SymmetricGame, cert: SolveCertificate) -> Optional[MixedStrategy]:
    """Re-execute a certificate's steps on ``game``; return the rebuilt X or None.

    Every witness and equalizer is re-checked exactly against the subgame it
    claims to live in.
    """
    n = game.n
    indices = tuple(range(n))
    for step in cert.steps:
        sub = game.principal_submatrix(indices)
        if isinstance(step, EliminationStep):
            if step.indices != indices or not step.witness.check(sub):
                return None
            local = indices.index(step.eliminated)
            if local != step.witness.i:
                return None
            indices = tuple(k for k in indices if k != step.eliminated)
        elif isinstance(step, EqualizerStep):
            if step.indices != indices or not step.certificate.check(sub):
                return None
            return zero_pad(step.certificate.X, indices, n)
        elif isinstance(step, BaseStep):
            if indices != (step.index,):
                return None
            return zero_pad([1], indices, n)
    return None
