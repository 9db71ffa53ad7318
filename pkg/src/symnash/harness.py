"""Seeded random games and the hunt for stages with no equalizer and no dominated strategy.

Every trial is a pure function of ``(GenSpec, trial index)``; counterexamples
carry enough data to be regenerated and re-run from the report alone.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import SymmetricGame, game_to_json
from .dominance import first_weakly_dominated, weakly_dominated_by_columns
from .equalizer import find_equalizer, find_equalizer_shifted
from .oracle import DEFAULT_MAX_N, equalizer_vertices, interior_equalizer_margin
from .solver import EliminationStep, SolveCertificate, TheoremViolation, ViolationKind, solve

log = logging.getLogger(__name__)

EQUALIZER_FOUND = "equalizer_found"
DOMINATED_FOUND = "dominated_found"
THEOREM_VIOLATION = "theorem_violations"
UNVERIFIED_OUTPUT = "unverified_outputs"
BUCKETS = (EQUALIZER_FOUND, DOMINATED_FOUND, THEOREM_VIOLATION, UNVERIFIED_OUTPUT)

FAMILIES = ("uniform", "constant-column", "prisoners-dilemma")


@dataclass(frozen=True)
class GenSpec:
    n_min: int = 2
    n_max: int = 6
    bound: int = 5
    trials: int = 100
    seed: int = 0
    family: str = "uniform"

    def __post_init__(self):
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")
        if self.bound < 0 or self.trials < 0:
            raise ValueError("bound and trials must be non-negative")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")


def generate(spec: GenSpec, t: int) -> SymmetricGame:
    """Integer-entry game fully determined by ``(spec.seed, t)``."""
    rng = np.random.default_rng([spec.seed, t])
    K = spec.bound
    if spec.family == "prisoners-dilemma":
        # C21 > C11 and C22 > C12: the first strategy is strictly dominated
        lo = rng.integers(-K, K, size=2)
        hi = [int(rng.integers(v + 1, K + 1)) for v in lo]
        return SymmetricGame([[int(lo[0]), int(lo[1])], [hi[0], hi[1]]])
    n = int(rng.integers(spec.n_min, spec.n_max + 1))
    C = rng.integers(-K, K + 1, size=(n, n))
    if spec.family == "constant-column":
        j = int(rng.integers(n))
        C[:, j] = rng.integers(-K, K + 1)
    return SymmetricGame(C.tolist())


def is_stuck(game: SymmetricGame) -> bool:
    return game.n >= 2 and find_equalizer(game) is None and first_weakly_dominated(game) is None


def shrink(sub: SymmetricGame, indices: tuple):
    """Greedy minimization: drop one strategy at a time while solve still gets stuck.

    Returns ``(game, original indices)`` of the smallest stuck game reached.
    """
    changed = True
    while changed:
        changed = False
        for k in range(sub.n):
            keep = tuple(i for i in range(sub.n) if i != k)
            cand = sub.principal_submatrix(keep)
            out = solve(cand)
            if isinstance(out, TheoremViolation) and out.kind is ViolationKind.NO_EQUALIZER_NO_DOMINATED:
                sub = out.game
                indices = tuple(indices[keep[i]] for i in out.indices)
                changed = True
                break
    return sub, indices


def recheck_stuck(game: SymmetricGame) -> dict:
    """Independent confirmation that ``game`` has no equalizer and no weakly dominated strategy.

    Equalizers: exact vertex enumeration (no simplex) and the shifted
    positive standard-form LP. Dominance: one LP per column per strategy.
    """
    vertices = equalizer_vertices(game, max_n=DEFAULT_MAX_N) if game.n <= DEFAULT_MAX_N else None
    dominated = [weakly_dominated_by_columns(i, game) for i in range(game.n)]
    margin = interior_equalizer_margin(game)
    no_eq = find_equalizer_shifted(game) is None and (vertices is None or not vertices)
    return {
        "equalizer_vertices": None if vertices is None else len(vertices),
        "equalizer_shifted_lp": not no_eq,
        "weakly_dominated_by_columns": dominated,
        "no_equalizer": no_eq,
        "no_weakly_dominated": not any(dominated),
        "confirmed": no_eq and not any(dominated),
        "interior_fixed_point": margin is not None and margin > 0,
    }


def _classify(result) -> str:
    if isinstance(result, SolveCertificate):
        if any(isinstance(s, EliminationStep) for s in result.steps):
            return DOMINATED_FOUND
        return EQUALIZER_FOUND
    if result.kind is ViolationKind.UNVERIFIED_OUTPUT:
        return UNVERIFIED_OUTPUT
    return THEOREM_VIOLATION


def run_trial(spec: GenSpec, t: int) -> dict:
    game = generate(spec, t)
    result = solve(game)
    bucket = _classify(result)
    record = {"trial": t, "bucket": bucket}
    if bucket in (THEOREM_VIOLATION, UNVERIFIED_OUTPUT):
        record["counterexample"] = counterexample_report(spec, t, game, result)
    return record


def counterexample_report(spec: GenSpec, t: int, game: SymmetricGame, result: TheoremViolation) -> dict:
    rep = {
        "gen": asdict(spec),
        "trial": t,
        "game": game_to_json(game),
        "result": result.to_json(),
    }
    if result.kind is ViolationKind.NO_EQUALIZER_NO_DOMINATED:
        small, idx = shrink(result.game, result.indices)
        check = recheck_stuck(small)
        rep["minimized"] = {"subgame": [i + 1 for i in idx], "game": game_to_json(small),
                            "recheck": check}
        # an interior fixed point is itself an equalizer, so a stuck game without
        # one contradicts the dominance theorem rather than the equalizer step
        rep["indicts"] = "implication" if check["interior_fixed_point"] else "theorem"
    return rep


@dataclass
class HuntReport:
    spec: GenSpec
    counts: dict = field(default_factory=lambda: dict.fromkeys(BUCKETS, 0))
    counterexamples: list = field(default_factory=list)

    @property
    def trials(self) -> int:
        return sum(self.counts.values())

    @property
    def exit_code(self) -> int:
        return 3 if self.counts[THEOREM_VIOLATION] or self.counts[UNVERIFIED_OUTPUT] else 0

    def to_json(self) -> dict:
        return {"spec": asdict(self.spec), "trials": self.trials, "counts": dict(self.counts),
                "counterexamples": self.counterexamples}


def _run_chunk(args):
    spec, lo, hi = args
    return [run_trial(spec, t) for t in range(lo, hi)]


def hunt(spec: GenSpec, jobs: int = 1, chunk: int = 50) -> HuntReport:
    report = HuntReport(spec)
    chunks = [(spec, lo, min(lo + chunk, spec.trials)) for lo in range(0, spec.trials, chunk)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_run_chunk, chunks)
            records = [r for part in results for r in part]
    else:
        records = []
        for c in chunks:
            records.extend(_run_chunk(c))
            log.info("hunt: %d/%d trials", len(records), spec.trials)
    for rec in records:
        report.counts[rec["bucket"]] += 1
        if "counterexample" in rec:
            report.counterexamples.append(rec["counterexample"])
    return report


def replay(entry: dict) -> dict:
    """Regenerate and re-run a recorded counterexample; returns a fresh report entry.

    Raises ValueError if the regenerated game differs from the recorded one.
    """
    spec = GenSpec(**entry["gen"])
    t = entry["trial"]
    game = generate(spec, t)
    if game_to_json(game) != entry["game"]:
        raise ValueError("regenerated game does not match the recorded one")
    rec = run_trial(spec, t)
    return rec.get("counterexample", {"trial": t, "bucket": rec["bucket"]})


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
