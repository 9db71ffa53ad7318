"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s``; the summary lines are
printed even without ``-s``.
"""

import contextlib
import json
import time
from fractions import Fraction as F

import numpy as np
import pytest

from lp_instances import beale, beale_equality_form, degenerate_instances, kuhn, random_lp
from symnash.core import BimatrixGame, MixedStrategy, SymmetricGame, carrier
from symnash.dominance import first_weakly_dominated, strictly_dominated, weakly_dominated
from symnash.equalizer import find_equalizer, is_equalizer
from symnash.harness import BUCKETS, GenSpec, canonical, generate, hunt, is_stuck, recheck_stuck, replay
from symnash.core import read_game
from symnash.hedge import (
    probe_better_response,
    probe_convexity,
    probe_derivative,
    probe_instability,
    probe_stability,
    trajectory,
)
from symnash.oracle import enumerate_symmetric_nash, equalizer_vertices, is_symmetric_nash
from symnash.ratlp import LpStatus, lp_solve
from symnash.solver import BaseStep, EliminationStep, EqualizerStep, SolveCertificate, solve
from symnash.symmetrize import bimatrix_solve, is_bimatrix_nash

pytestmark = pytest.mark.slow


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number, title):
        info = {}
        t0 = time.perf_counter()
        ok = False
        try:
            yield info
            ok = True
        finally:
            secs = time.perf_counter() - t0
            detail = "; ".join(f"{k}={v}" for k, v in info.items())
            with capsys.disabled():
                print(f"\nCRITERION {number} {'PASS' if ok else 'FAIL'} [{secs:.1f}s] {title}"
                      + (f" ({detail})" if detail else ""))
    return run


RPS = SymmetricGame([[0, -1, 1], [1, 0, -1], [-1, 1, 0]])
PD = SymmetricGame([[3, 0], [5, 1]])
COORD = SymmetricGame([[1, 0], [0, 1]])
CONST = SymmetricGame([[1, 0], [1, 2]])
TIE = SymmetricGame([[1, 1], [1, 0]])
THIRD = (F(1, 3),) * 3


def test_exactness_suite(criterion):
    with criterion(1, "exact worked examples") as info:
        t0 = time.perf_counter()
        cert = find_equalizer(RPS)
        assert cert.X.p == THIRD and cert.c == 0
        assert is_equalizer(CONST, [1, 0]) and find_equalizer(CONST).check(CONST)
        assert find_equalizer(PD) is None
        cert = find_equalizer(SymmetricGame([[0, 3], [1, 0]]))
        assert cert.X.p == (F(3, 4), F(1, 4)) and cert.c == F(3, 4)
        assert not is_equalizer(RPS, [F(1, 2), F(1, 2), 0])

        w = weakly_dominated(1, TIE)
        assert w.X.p == (1, 0) and w.slack == (0, 1)
        assert weakly_dominated(0, COORD) is None and weakly_dominated(1, COORD) is None
        assert weakly_dominated(0, RPS) is None
        w = strictly_dominated(0, PD)
        assert w.X.p == (0, 1) and w.slack == (2, 1)
        assert strictly_dominated(1, TIE) is None
        i, w = first_weakly_dominated(PD)
        assert i == 0 and w.X.p == (0, 1)
        assert first_weakly_dominated(COORD) is None
        i, w = first_weakly_dominated(TIE)
        assert i == 1 and w.X.p == (1, 0)

        out = solve(RPS)
        assert out.verified and out.X.p == THIRD and isinstance(out.steps[0], EqualizerStep)
        out = solve(PD)
        assert out.verified and out.X.p == (0, 1)
        assert isinstance(out.steps[0], EliminationStep) and out.steps[0].eliminated == 0
        assert isinstance(out.steps[1], BaseStep)

        assert is_symmetric_nash(RPS, MixedStrategy.uniform(3)).is_nash
        assert is_symmetric_nash(PD, [0, 1]).is_nash
        rep = is_symmetric_nash(PD, [1, 0])
        assert not rep.is_nash and rep.violating_index == 1
        assert {X.p for X in enumerate_symmetric_nash(COORD)} == {(1, 0), (0, 1), (F(1, 2), F(1, 2))}
        assert [X.p for X in enumerate_symmetric_nash(PD)] == [(0, 1)]
        secs = time.perf_counter() - t0
        info["runtime_s"] = f"{secs:.3f}"
        assert secs < 1.0


def test_oracle_equivalence(criterion):
    with criterion(2, "oracle equivalence, GenSpec(n 2..4, K=2, seed 42), 10^4 games") as info:
        spec = GenSpec(n_min=2, n_max=4, bound=2, trials=10_000, seed=42)
        mismatches, unverified, verified, none_count = 0, 0, 0, 0
        for t in range(spec.trials):
            g = generate(spec, t)
            cert = find_equalizer(g)
            vertices = equalizer_vertices(g)
            if (cert is None) != (not vertices):
                mismatches += 1
            none_count += cert is None
            out = solve(g)
            if isinstance(out, SolveCertificate) and out.verified:
                verified += 1
                supports = {carrier(X) for X in enumerate_symmetric_nash(g)}
                if not is_symmetric_nash(g, out.X).is_nash or not supports:
                    unverified += 1
        info.update(games=spec.trials, no_equalizer=none_count, verified_solves=verified,
                    equalizer_mismatches=mismatches, outputs_outside_nash=unverified)
        assert mismatches == 0 and unverified == 0


@pytest.fixture(scope="module")
def theorem_hunt():
    return hunt(GenSpec(n_min=2, n_max=6, bound=5, trials=10_000, seed=7))


def test_theorem_hunt(criterion, theorem_hunt):
    with criterion(3, "theorem hunt, 10^4 trials, n 2..6, K=5, seed 7") as info:
        rep = theorem_hunt
        info.update(**{k: rep.counts[k] for k in BUCKETS})
        assert rep.trials == 10_000
        assert rep.counts["unverified_outputs"] == 0
        assert len(rep.counterexamples) == rep.counts["theorem_violations"]
        replayed = confirmed = theorem = 0
        for entry in rep.counterexamples:
            doc = json.loads(json.dumps(entry))
            assert canonical(replay(doc)) == canonical(entry)
            replayed += 1
            stage = read_game(json.dumps(entry["result"]["game"]))
            small = read_game(json.dumps(entry["minimized"]["game"]))
            for g in (stage, small):
                assert is_stuck(g)
                chk = recheck_stuck(g)
                assert chk["no_equalizer"] and chk["no_weakly_dominated"]
            confirmed += 1
            theorem += entry["indicts"] == "theorem"
        info.update(replayed=replayed, rechecked=confirmed, indicting_theorem=theorem)


def test_hedge_probes(criterion):
    with criterion(4, "Hedge lemma probes, 10^3 samples each, seed 11") as info:
        t0 = time.perf_counter()
        reports = {
            "convexity": probe_convexity(trials=1000, seed=11, tol=1e-9),
            "better_response": probe_better_response(trials=1000, seed=11, tol=1e-12),
            "stability": probe_stability(trials=1000, seed=11, alphas=(0.1, 1.0, 10.0)),
            "instability": probe_instability(trials=1000, seed=11),
            "derivative": probe_derivative(trials=1000, seed=11, tol=1e-6),
        }
        secs = time.perf_counter() - t0
        for name, rep in reports.items():
            c = rep.counts
            info[name] = f"{c['consistent']}/{c['violated']}/{c['not_applicable']}"
        worst = max(s.measured["relative_error"] for s in reports["derivative"].samples)
        info["derivative_max_rel_err"] = f"{worst:.1e}"
        assert all(len(r.samples) == 1000 for r in reports.values())
        assert all(r.ok for r in reports.values())
        # a probe that never applies tests nothing
        assert all(r.counts["consistent"] >= 900 for r in reports.values())
        assert secs < 60


def test_rps_divergence(criterion):
    with criterion(5, "RPS divergence from (0.5, 0.3, 0.2), alpha=1, 100 steps") as info:
        center = np.full(3, 1 / 3)
        rows = trajectory(RPS, [0.5, 0.3, 0.2], 1.0, 100, center)
        re = np.array([r[2] for r in rows])
        sum_err = max(abs(float(p.sum()) - 1.0) for _, p, _ in rows)
        info.update(re_start=f"{re[0]:.4f}", re_end=f"{re[-1]:.4f}",
                    max_sum_error=f"{sum_err:.1e}")
        assert len(rows) == 101
        assert np.all(np.diff(re) >= 0)
        assert re[-1] - re[0] >= 1e-6
        assert sum_err <= 1e-12


def random_bimatrix(t, seed=13, bound=5):
    rng = np.random.default_rng([seed, t])
    m, n = (int(v) for v in rng.integers(1, 4, size=2))
    A = rng.integers(-bound, bound + 1, size=(m, n)).tolist()
    B = rng.integers(-bound, bound + 1, size=(m, n)).tolist()
    return BimatrixGame(A, B)


def test_bimatrix_reduction(criterion):
    with criterion(6, "bimatrix reduction, 200 games, m,n <= 3, seed 13") as info:
        solved = via_solver = failed = unverified = 0
        for t in range(200):
            g = random_bimatrix(t)
            sol, res, trail = bimatrix_solve(g)
            if sol is None:
                failed += 1
                assert trail and all(e["result"] != "verified" for e in trail)
                continue
            row, col = is_bimatrix_nash(g, sol.P, sol.Q)
            if not (row.is_nash and col.is_nash):
                unverified += 1
            solved += 1
            via_solver += trail[-1]["route"] == "solve"
        info.update(verified=solved, via_solver=via_solver, via_oracle=solved - via_solver,
                    reported_failures=failed, unverified=unverified)
        assert unverified == 0 and solved + failed == 200


def test_lp_core(criterion):
    with criterion(7, "LP core, 10^3 random LPs plus cycling-prone instances") as info:
        statuses = {s.value: 0 for s in LpStatus}
        for k in range(1000):
            p = random_lp(k, seed=7)
            out = lp_solve(p)
            statuses[out.status.value] += 1
            if out.ok:
                assert p.is_feasible_point(out.point)
                assert out.objective_value == p.value(out.point)
        for p in (beale(), beale_equality_form(), kuhn(), *degenerate_instances()):
            out = lp_solve(p)
            assert out.ok and p.is_feasible_point(out.point)
        assert lp_solve(beale()).objective_value == F(5, 4)
        assert lp_solve(kuhn()).objective_value == 2
        info.update(**statuses)
