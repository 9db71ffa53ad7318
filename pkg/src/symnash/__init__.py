"""Exact symmetric-equilibrium workbench: equalizers, weak-dominance elimination,
support-enumeration oracles, Hedge-dynamics probes and a counterexample hunt."""

__version__ = "0.1.0"

from .core import (
    BimatrixGame,
    MixedStrategy,
    SymmetricGame,
    carrier,
    payoff,
    payoff_vector,
    read_game,
    write_game,
)
from .dominance import first_weakly_dominated, strictly_dominated, weakly_dominated
from .equalizer import find_equalizer, is_equalizer
from .oracle import enumerate_symmetric_nash, is_fixed_point_support, is_symmetric_nash
from .solver import SolveCertificate, TheoremViolation, solve

__all__ = [
    "BimatrixGame", "MixedStrategy", "SymmetricGame", "carrier", "payoff", "payoff_vector",
    "read_game", "write_game", "first_weakly_dominated", "strictly_dominated",
    "weakly_dominated", "find_equalizer", "is_equalizer", "enumerate_symmetric_nash",
    "is_fixed_point_support", "is_symmetric_nash", "SolveCertificate", "TheoremViolation",
    "solve",
]
