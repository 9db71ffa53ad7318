"""Exact game and strategy types, carriers, payoffs and the JSON game format.

All arithmetic here is over :class:`fractions.Fraction`; no floats.
Indices are 0-based internally and 1-based in anything a human reads.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class DimensionError(ValueError):
    """Operands do not have matching dimensions."""


class GameFormatError(ValueError):
    """A game or strategy file could not be parsed."""

    def __init__(self, msg, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(msg + where)


def to_rational(value) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a canonical Fraction.

    Floats are rejected: a float has already lost the exact value.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not payoffs")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValueError(f"malformed rational {value!r}")
        return Fraction(value.replace(" ", ""))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q) if q.denominator != 1 else str(q.numerator)


def _matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(to_rational(v) for v in row) for row in rows)


@dataclass(frozen=True)
class SymmetricGame:
    """The symmetric bimatrix game (C, C^T), stored by its row payoff matrix."""

    C: tuple[tuple[Fraction, ...], ...]

    def __init__(self, C):
        C = _matrix(C)
        n = len(C)
        if n == 0:
            raise ValueError("a game needs at least one pure strategy")
        if any(len(row) != n for row in C):
            raise DimensionError("payoff matrix of a symmetric game must be square")
        object.__setattr__(self, "C", C)

    @property
    def n(self) -> int:
        return len(self.C)

    def transpose(self) -> "SymmetricGame":
        return SymmetricGame(list(zip(*self.C)))

    def shifted(self, k) -> "SymmetricGame":
        k = to_rational(k)
        return SymmetricGame([[v + k for v in row] for row in self.C])

    def negated(self) -> "SymmetricGame":
        return SymmetricGame([[-v for v in row] for row in self.C])

    def principal_submatrix(self, keep: Sequence[int]) -> "SymmetricGame":
        return SymmetricGame([[self.C[i][j] for j in keep] for i in keep])

    def to_float(self):
        import numpy as np

        return np.array([[float(v) for v in row] for row in self.C], dtype=np.float64)


@dataclass(frozen=True)
class BimatrixGame:
    """General two-player game: row player gets A, column player gets B."""

    A: tuple[tuple[Fraction, ...], ...]
    B: tuple[tuple[Fraction, ...], ...]

    def __init__(self, A, B):
        A, B = _matrix(A), _matrix(B)
        if not A or not A[0]:
            raise ValueError("a game needs at least one pure strategy per player")
        n = len(A[0])
        if any(len(row) != n for row in A):
            raise DimensionError("ragged matrix A")
        if len(B) != len(A) or any(len(row) != n for row in B):
            raise DimensionError("A and B must have identical dimensions")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.A), len(self.A[0])


@dataclass(frozen=True)
class MixedStrategy:
    """An exact probability vector."""

    p: tuple[Fraction, ...]

    def __init__(self, p):
        p = tuple(to_rational(v) for v in p)
        if not p:
            raise ValueError("empty strategy")
        if any(v < 0 for v in p):
            raise ValueError(f"negative probability in {[format_rational(v) for v in p]}")
        if sum(p) != 1:
            raise ValueError(f"probabilities sum to {sum(p)}, not 1")
        object.__setattr__(self, "p", p)

    @classmethod
    def pure(cls, i: int, n: int) -> "MixedStrategy":
        return cls([1 if j == i else 0 for j in range(n)])

    @classmethod
    def uniform(cls, n: int) -> "MixedStrategy":
        return cls([Fraction(1, n)] * n)

    def __len__(self):
        return len(self.p)

    def __iter__(self):
        return iter(self.p)

    def __getitem__(self, i):
        return self.p[i]

    def carrier(self) -> tuple[int, ...]:
        return carrier(self)

    def is_interior(self) -> bool:
        return all(v > 0 for v in self.p)

    def is_pure(self) -> bool:
        return sum(1 for v in self.p if v > 0) == 1

    def to_float(self):
        import numpy as np

        return np.array([float(v) for v in self.p], dtype=np.float64)


Strategy = Union[MixedStrategy, Sequence[Fraction]]


def _vec(x) -> tuple[Fraction, ...]:
    return x.p if isinstance(x, MixedStrategy) else tuple(x)


def _mat(C):
    return C.C if isinstance(C, SymmetricGame) else C


def dot(u: Iterable[Fraction], v: Iterable[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(M, x) -> tuple[Fraction, ...]:
    x = _vec(x)
    if any(len(row) != len(x) for row in M):
        raise DimensionError(f"matrix has {len(M[0])} columns, vector has length {len(x)}")
    return tuple(dot(row, x) for row in M)


def payoff_vector(C, X) -> tuple[Fraction, ...]:
    """CX, the payoff of every pure strategy against X."""
    return mat_vec(_mat(C), X)


def payoff(X, C, Y) -> Fraction:
    """X . CY, the payoff of X against Y."""
    X = _vec(X)
    CY = payoff_vector(C, Y)
    if len(X) != len(CY):
        raise DimensionError(f"strategy of length {len(X)} against {len(CY)}x{len(CY)} game")
    return dot(X, CY)


def carrier(X) -> tuple[int, ...]:
    """0-based indices of the strictly positive coordinates."""
    return tuple(i for i, v in enumerate(_vec(X)) if v > 0)


# JSON game format ---------------------------------------------------------


def _parse_matrix(rows, name, text):
    if not isinstance(rows, list) or not rows:
        raise GameFormatError(f"{name!r} must be a non-empty list of rows", *_locate(text, name))
    out = []
    width = None
    for r, row in enumerate(rows):
        if not isinstance(row, list) or not row:
            raise GameFormatError(f"row {r + 1} of {name!r} is not a non-empty list",
                                  *_locate(text, name))
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise GameFormatError(
                f"ragged matrix {name!r}: row {r + 1} has {len(row)} entries, expected {width}",
                *_locate(text, name))
        parsed = []
        for c, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                raise GameFormatError(
                    f"entry ({r + 1},{c + 1}) of {name!r} must be a string or integer",
                    *_locate(text, name))
            try:
                parsed.append(to_rational(v))
            except (ValueError, ZeroDivisionError):
                raise GameFormatError(
                    f"malformed rational {v!r} at entry ({r + 1},{c + 1}) of {name!r}",
                    *_locate(text, str(v))) from None
        out.append(parsed)
    return out


def _locate(text, needle):
    idx = text.find(needle)
    if idx < 0:
        return None, None
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col


def read_game(text: str) -> SymmetricGame | BimatrixGame:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise GameFormatError("game file must hold a JSON object", 1, 1)
    kind = obj.get("type")
    if kind == "symmetric":
        C = _parse_matrix(obj.get("C"), "C", text)
        if len(C) != len(C[0]):
            raise GameFormatError("symmetric game matrix must be square", *_locate(text, "C"))
        return SymmetricGame(C)
    if kind == "bimatrix":
        A = _parse_matrix(obj.get("A"), "A", text)
        B = _parse_matrix(obj.get("B"), "B", text)
        if len(A) != len(B) or len(A[0]) != len(B[0]):
            raise GameFormatError("A and B must have identical dimensions", *_locate(text, "B"))
        return BimatrixGame(A, B)
    raise GameFormatError(f"unknown game type {kind!r}", *_locate(text, "type"))


def game_to_json(game) -> dict:
    def enc(M):
        return [[format_rational(v) for v in row] for row in M]

    if isinstance(game, SymmetricGame):
        return {"type": "symmetric", "C": enc(game.C)}
    return {"type": "bimatrix", "A": enc(game.A), "B": enc(game.B)}


def write_game(game) -> str:
    return json.dumps(game_to_json(game))


def load_game(path) -> SymmetricGame | BimatrixGame:
    with open(path, encoding="utf-8") as fh:
        return read_game(fh.read())


def strategy_to_json(X) -> dict:
    """Strategy output format: fractions as strings plus a 1-based support."""
    X = _vec(X)
    return {"X": [format_rational(v) for v in X], "support": [i + 1 for i in carrier(X)]}


def read_strategy(text: str) -> MixedStrategy:
    """Accepts either a bare JSON array or an object with an ``"X"`` array."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError(exc.msg, exc.lineno, exc.colno) from None
    if isinstance(obj, dict):
        obj = obj.get("X")
    if not isinstance(obj, list):
        raise GameFormatError("strategy must be a JSON array of rationals", 1, 1)
    try:
        return MixedStrategy([to_rational(v) for v in obj])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise GameFormatError(f"invalid strategy: {exc}", 1, 1) from None
