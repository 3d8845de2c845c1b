"""Exact scalar fields: odd prime fields F_p and the rationals.

Vectors over a field are numpy arrays. Prime fields use ``int64`` residues in
``[0, p)``; the rationals use ``object`` arrays holding ``Fraction`` entries.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

_FLOAT_EXACT = 2**52


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    characteristic: int
    dtype: type

    def asarray(self, values) -> np.ndarray:
        raise NotImplementedError

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def scalar(self, value):
        raise NotImplementedError

    def inv(self, value):
        raise NotImplementedError

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype) if self.dtype is not object else _fraction_zeros(shape)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.scalar(1)
        return out

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("field", self.characteristic))

    def __repr__(self):
        return f"{type(self).__name__}({self.characteristic})"


class PrimeField(Field):
    """Residues modulo an odd prime ``p``."""

    dtype = np.int64

    def __init__(self, p: int):
        if p == 2 or not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or an odd prime, got {p}")
        self.characteristic = p
        self.p = p

    @property
    def order(self) -> int:
        return self.p

    def elements(self):
        return range(self.p)

    def scalar(self, value) -> int:
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        return int(value) % self.p

    def asarray(self, values) -> np.ndarray:
        arr = np.asarray(values)
        if arr.dtype == object:
            arr = np.vectorize(self.scalar, otypes=[np.int64])(arr) if arr.size else arr.astype(np.int64)
        return np.mod(arr.astype(np.int64), self.p)

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return np.mod(arr, self.p)

    def inv(self, value) -> int:
        value = int(value) % self.p
        if value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(value, -1, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        inner = a.shape[-1]
        if inner * (self.p - 1) ** 2 < _FLOAT_EXACT:
            prod = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        else:
            prod = a.astype(object) @ b.astype(object)
            prod = np.asarray(prod % self.p, dtype=np.int64)
        return np.mod(prod, self.p)


def _fraction_zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


class RationalField(Field):
    """Exact rationals backed by ``fractions.Fraction``."""

    dtype = object
    characteristic = 0

    def scalar(self, value) -> Fraction:
        return Fraction(value)

    def asarray(self, values) -> np.ndarray:
        arr = np.asarray(values, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        flat_in, flat_out = arr.reshape(-1), out.reshape(-1)
        for i, v in enumerate(flat_in):
            flat_out[i] = Fraction(v)
        return out

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def inv(self, value) -> Fraction:
        if value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / Fraction(value)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[0] == 0 or b.shape[-1] == 0 or a.shape[-1] == 0:
            return _fraction_zeros((a.shape[0], b.shape[-1]))
        return np.asarray(a @ b, dtype=object)


@lru_cache(maxsize=None)
def get_field(characteristic: int) -> Field:
    """Return the field of the given characteristic (0 or an odd prime)."""
    if characteristic == 0:
        return RationalField()
    return PrimeField(characteristic)
