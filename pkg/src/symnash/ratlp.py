"""Exact rational linear programming.

Two-phase primal simplex on a dense exact-rational tableau (gmpy2 ``mpq``
when available, Fraction otherwise) with Bland's least-index rule, so it
terminates on degenerate input. Every point it returns has been
substituted back into the original constraints.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import DimensionError, to_rational

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover
    mpq = None

ZERO = Fraction(0)
ONE = Fraction(1)

# tableau scalar: gmpy2 rationals when available, Fraction otherwise
if mpq is not None:
    _Q = mpq
    _QZERO, _QONE = mpq(0), mpq(1)

    def _out(q):
        return Fraction(int(q.numerator), int(q.denominator))
else:  # pragma: no cover
    _Q = Fraction
    _QZERO, _QONE = ZERO, ONE

    def _out(q):
        return q


class LpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class LpVerificationError(RuntimeError):
    """The simplex produced a point that fails exact substitution (a bug)."""


def _row(v):
    return tuple(to_rational(a) for a in v)


@dataclass(frozen=True)
class LpProblem:
    """maximize objective.x  s.t.  eq rows ``a.x == b``, ineq rows ``a.x <= b``.

    ``nonneg[j]`` marks x_j >= 0; other variables are free.
    """

    objective: tuple
    eq: tuple = ()
    ineq: tuple = ()
    nonneg: Optional[tuple] = None

    def __post_init__(self):
        obj = _row(self.objective)
        eq = tuple((_row(a), to_rational(b)) for a, b in self.eq)
        ineq = tuple((_row(a), to_rational(b)) for a, b in self.ineq)
        nv = len(obj)
        nonneg = (True,) * nv if self.nonneg is None else tuple(bool(v) for v in self.nonneg)
        if len(nonneg) != nv:
            raise DimensionError(f"nonneg mask has length {len(nonneg)}, expected {nv}")
        for kind, rows in (("equality", eq), ("inequality", ineq)):
            for k, (a, _) in enumerate(rows):
                if len(a) != nv:
                    raise DimensionError(
                        f"{kind} row {k} has {len(a)} coefficients, expected {nv}")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "eq", eq)
        object.__setattr__(self, "ineq", ineq)
        object.__setattr__(self, "nonneg", nonneg)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def is_feasible_point(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.n_vars:
            return False
        if any(nn and v < 0 for nn, v in zip(self.nonneg, x)):
            return False
        for a, b in self.eq:
            if sum((ai * xi for ai, xi in zip(a, x)), ZERO) != b:
                return False
        for a, b in self.ineq:
            if sum((ai * xi for ai, xi in zip(a, x)), ZERO) > b:
                return False
        return True

    def value(self, x) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x)), ZERO)


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    point: Optional[tuple] = None
    objective_value: Optional[Fraction] = None
    pivots: int = field(default=0, compare=False)

    @property
    def ok(self) -> bool:
        return self.status in (LpStatus.OPTIMAL, LpStatus.FEASIBLE)


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows  # list of lists, each ends with the rhs entry
        for r, b in zip(self.rows, rhs):
            r.append(b)
        self.basis = basis
        self.cost = None  # reduced-cost row, last entry is -objective value
        self.pivots = 0

    def set_cost(self, c):
        ncol = len(c)
        cost = list(c) + [_QZERO]
        for i, bv in enumerate(self.basis):
            cb = c[bv]
            if cb:
                row = self.rows[i]
                for j in range(ncol + 1):
                    if row[j]:
                        cost[j] -= cb * row[j]
        self.cost = cost

    def pivot(self, r, col):
        prow = self.rows[r]
        piv = prow[col]
        if piv != 1:
            inv = 1 / piv
            prow = [v * inv if v else v for v in prow]
            self.rows[r] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for k, row in enumerate(self.rows):
            if k != r:
                f = row[col]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = self.cost[col]
        if f:
            for j in nz:
                self.cost[j] -= f * prow[j]
        self.basis[r] = col
        self.pivots += 1

    def run(self, allowed):
        """Maximize with Bland's rule over the columns in ``allowed``."""
        while True:
            col = next((j for j in allowed if self.cost[j] > 0), None)
            if col is None:
                return LpStatus.OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return LpStatus.UNBOUNDED
            self.pivot(best[1], col)

    def values(self, ncol):
        x = [_QZERO] * ncol
        for i, bv in enumerate(self.basis):
            if bv < ncol:
                x[bv] = self.rows[i][-1]
        return x


def lp_solve(p: LpProblem) -> LpOutcome:
    """Solve ``p`` exactly. Raises LpVerificationError rather than return a bad point."""
    nv = p.n_vars
    # standard-form columns: one per nonneg var, two per free var, one slack per ineq
    plus, minus = [], []
    ncol = 0
    for j in range(nv):
        plus.append(ncol)
        ncol += 1
        if p.nonneg[j]:
            minus.append(None)
        else:
            minus.append(ncol)
            ncol += 1
    n_struct = ncol
    ncol += len(p.ineq)

    rows, rhs, slack_of = [], [], []
    for k, (a, b) in enumerate([*p.eq, *p.ineq]):
        row = [_QZERO] * ncol
        for j, v in enumerate(a):
            if v:
                row[plus[j]] = _Q(v)
                if minus[j] is not None:
                    row[minus[j]] = -_Q(v)
        s = None
        if k >= len(p.eq):
            s = n_struct + k - len(p.eq)
            row[s] = _QONE
        if b < 0:
            row = [-v for v in row]
            b = -b
            s = None  # slack coefficient is now -1, not usable as a basis
        rows.append(row)
        rhs.append(_Q(b))
        slack_of.append(s)

    m = len(rows)
    basis = []
    n_art = 0
    for i in range(m):
        if slack_of[i] is not None:
            basis.append(slack_of[i])
        else:
            basis.append(ncol + n_art)
            n_art += 1
    total = ncol + n_art
    a_idx = ncol
    for i in range(m):
        rows[i].extend([_QZERO] * n_art)
        if basis[i] >= ncol:
            rows[i][basis[i]] = _QONE
    tab = _Tableau(rows, rhs, basis)

    if n_art:
        c1 = [_QZERO] * ncol + [-_QONE] * n_art
        tab.set_cost(c1)
        tab.run(range(total))
        if tab.cost[-1] != 0:  # -(phase-one optimum) != 0 means artificials stay positive
            return LpOutcome(LpStatus.INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= a_idx:
                col = next((j for j in range(ncol) if tab.rows[i][j]), None)
                if col is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, col)
            i += 1
        for k in range(len(tab.rows)):
            row = tab.rows[k]
            tab.rows[k] = row[:ncol] + [row[-1]]

    c2 = [_QZERO] * ncol
    for j, v in enumerate(p.objective):
        c2[plus[j]] = _Q(v)
        if minus[j] is not None:
            c2[minus[j]] = -_Q(v)
    tab.set_cost(c2)
    status = tab.run(range(ncol))
    if status is LpStatus.UNBOUNDED:
        return LpOutcome(LpStatus.UNBOUNDED, pivots=tab.pivots)

    std = [_out(q) for q in tab.values(ncol)]
    x = tuple(std[plus[j]] - (std[minus[j]] if minus[j] is not None else ZERO)
              for j in range(nv))
    if not p.is_feasible_point(x):
        raise LpVerificationError("simplex returned a point violating its constraints")
    if any(p.objective):
        return LpOutcome(LpStatus.OPTIMAL, x, p.value(x), pivots=tab.pivots)
    return LpOutcome(LpStatus.FEASIBLE, x, ZERO, pivots=tab.pivots)


def lp_feasible_point(eq=(), ineq=(), nonneg=None, n_vars=None) -> LpOutcome:
    """Find any point of ``{eq rows, ineq rows, nonneg}``; objective identically 0."""
    if n_vars is None:
        rows = [a for a, _ in [*eq, *ineq]]
        if rows:
            n_vars = len(rows[0])
        elif nonneg is not None:
            n_vars = len(nonneg)
        else:
            raise DimensionError("cannot infer the number of variables")
    return lp_solve(LpProblem([0] * n_vars, eq, ineq, nonneg))
