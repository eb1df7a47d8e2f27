"""Exact coefficient fields: the rationals and prime fields F_p.

Matrices over the rationals are numpy object arrays of `fractions.Fraction`;
matrices over F_p are numpy int64 arrays with entries reduced to 0..p-1.
Both field tags expose the same small API so the linear algebra in
:mod:`quivermod.linalg` is written once.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _parse_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise FieldError(f"cannot interpret {x!r} as a rational number")


@dataclass(frozen=True)
class Rationals:
    """Tag for exact rational arithmetic."""

    name = "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, x) -> Fraction:
        return _parse_rational(x)

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        out = np.empty((rows, cols), dtype=object)
        out[...] = Fraction(0)
        return out

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = Fraction(1)
        return out

    def array(self, rows) -> np.ndarray:
        data = [[self.coerce(x) for x in row] for row in rows]
        r = len(data)
        c = len(data[0]) if r else 0
        out = np.empty((r, c), dtype=object)
        for i in range(r):
            if len(data[i]) != c:
                raise FieldError("ragged matrix data")
            for j in range(c):
                out[i, j] = data[i][j]
        return out

    def normalize(self, a: np.ndarray) -> np.ndarray:
        return a

    def scalar_is_zero(self, x) -> bool:
        return x == 0

    def scalar_inv(self, x):
        x = _parse_rational(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def scalar_neg(self, x):
        return -_parse_rational(x)

    def format_scalar(self, x) -> str:
        return str(_parse_rational(x))

    def to_json(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    """Tag for arithmetic in F_p, p an odd-sized prime below 2^31."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p) or self.p >= 2**31:
            raise FieldError(f"{self.p} is not a prime below 2^31")

    @property
    def name(self) -> str:
        return f"F{self.p}"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def coerce(self, x) -> int:
        if isinstance(x, (int, np.integer)):
            return int(x) % self.p
        q = _parse_rational(x)
        if q.denominator % self.p == 0:
            raise FieldError(f"denominator of {q} not invertible mod {self.p}")
        return (q.numerator % self.p) * pow(q.denominator % self.p, self.p - 2, self.p) % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def array(self, rows) -> np.ndarray:
        data = [[self.coerce(x) for x in row] for row in rows]
        r = len(data)
        c = len(data[0]) if r else 0
        if any(len(row) != c for row in data):
            raise FieldError("ragged matrix data")
        return np.array(data, dtype=np.int64).reshape(r, c)

    def normalize(self, a: np.ndarray) -> np.ndarray:
        return a % self.p

    def scalar_is_zero(self, x) -> bool:
        return int(x) % self.p == 0

    def scalar_inv(self, x):
        v = int(x) % self.p
        if v == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(v, self.p - 2, self.p)

    def scalar_neg(self, x):
        return (-int(x)) % self.p

    def format_scalar(self, x) -> str:
        return str(int(x) % self.p)

    def to_json(self):
        return {"p": self.p}


Field = Rationals | PrimeField

QQ = Rationals()


def field_from_json(spec) -> Field:
    if spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"p"}:
        return PrimeField(int(spec["p"]))
    raise FieldError(f"unrecognized field spec {spec!r}")
