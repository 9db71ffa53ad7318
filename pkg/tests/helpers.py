"""Independent oracles used only by the tests."""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from symnash.oracle import solve_linear_system


def small_ints(bound=5):
    return st.integers(-bound, bound)


@st.composite
def square_matrices(draw, n_min=1, n_max=4, bound=5):
    n = draw(st.integers(n_min, n_max))
    return [[draw(small_ints(bound)) for _ in range(n)] for _ in range(n)]


@st.composite
def rational_strategies(draw, n):
    w = [draw(st.integers(0, 6)) for _ in range(n)]
    if sum(w) == 0:
        w[draw(st.integers(0, n - 1))] = 1
    s = sum(w)
    return [Fraction(v, s) for v in w]


def standard_form(p):
    """Rewrite an LpProblem as rows ``M z = r, z >= 0`` (free vars split, slacks added)."""
    cols = []
    for j in range(p.n_vars):
        cols.append((j, 1))
        if not p.nonneg[j]:
            cols.append((j, -1))
    n_s = len(p.ineq)
    rows, rhs = [], []
    for a, b in p.eq:
        rows.append([a[j] * s for j, s in cols] + [0] * n_s)
        rhs.append(b)
    for k, (a, b) in enumerate(p.ineq):
        rows.append([a[j] * s for j, s in cols] + [1 if t == k else 0 for t in range(n_s)])
        rhs.append(b)
    obj = [p.objective[j] * s for j, s in cols] + [0] * n_s
    return rows, rhs, obj, cols


def basic_feasible_solutions(rows, rhs, ncols):
    """Every basic feasible solution of {M z = r, z >= 0}, by brute force over column sets."""
    out = []
    if not rows:
        return [[Fraction(0)] * ncols]
    for k in range(0, min(len(rows), ncols) + 1):
        for B in combinations(range(ncols), k):
            if k == 0:
                if all(b == 0 for b in rhs):
                    out.append([Fraction(0)] * ncols)
                continue
            M = [[row[j] for j in B] for row in rows]
            kind, z = solve_linear_system(M, rhs)
            if kind == "unique" and all(v >= 0 for v in z):
                full = [Fraction(0)] * ncols
                for j, v in zip(B, z):
                    full[j] = v
                out.append(full)
    return out
