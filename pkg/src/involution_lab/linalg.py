"""Canonical subspaces of F^n in reduced row-echelon form."""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .fields import Field

CHUNK = 4096


def _nonzero(arr: np.ndarray) -> np.ndarray:
    return np.asarray(arr != 0, dtype=bool)


def rref(field: Field, rows: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``rows``; returns (nonzero rows, pivot columns)."""
    m = np.array(rows, dtype=field.dtype, copy=True)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(_nonzero(m[r:, c]))
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        piv = m[r, c]
        if piv != 1:
            m[r, c:] = field.normalize(m[r, c:] * field.inv(piv))
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(_nonzero(col))
        if hit.size:
            m[hit, c:] = field.normalize(m[hit, c:] - np.outer(col[hit], m[r, c:]))
        pivots.append(c)
        r += 1
    return m[:r], pivots


class Subspace:
    """A subspace of ``field^ambient_dim`` held as a canonical RREF basis.

    Two equal subspaces always carry identical ``basis`` arrays, so equality
    is representation equality.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, basis: np.ndarray, pivots: Iterable[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, field.zeros((0, ambient_dim)), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, field.eye(ambient_dim), range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def is_zero(self) -> bool:
        return self.dim == 0

    def _check(self, n: int):
        if n != self.ambient_dim:
            raise ValueError(f"dimension mismatch: {n} != {self.ambient_dim}")

    def residual(self, vectors: np.ndarray) -> np.ndarray:
        """Reduce rows of ``vectors`` against the basis (zero iff contained)."""
        vectors = np.atleast_2d(np.asarray(vectors, dtype=self.field.dtype))
        self._check(vectors.shape[1])
        if self.dim == 0:
            return vectors.copy()
        coeffs = vectors[:, list(self.pivots)]
        return self.field.normalize(vectors - self.field.matmul(coeffs, self.basis))

    def contains(self, v) -> bool:
        return not _nonzero(self.residual(v)).any()

    def contains_all(self, vectors) -> bool:
        vectors = np.atleast_2d(np.asarray(vectors, dtype=self.field.dtype))
        if vectors.shape[0] == 0:
            return True
        for start in range(0, vectors.shape[0], CHUNK):
            if _nonzero(self.residual(vectors[start:start + CHUNK])).any():
                return False
        return True

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        other._check(self.ambient_dim)
        return self.dim <= other.dim and other.contains_all(self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other.ambient_dim)
        b = SubspaceBuilder(self.field, self.ambient_dim, start=self)
        b.absorb(other.basis)
        return b.subspace()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots, tuple(map(tuple, self.basis.tolist()))))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, char={self.field.characteristic})"


class SubspaceBuilder:
    """Incrementally absorbs vectors into an RREF basis.

    ``absorb`` returns the rows that enlarged the span, which closure loops use
    as their next frontier; termination follows from the dimension bound.
    """

    def __init__(self, field: Field, ambient_dim: int, start: Subspace | None = None):
        self.field = field
        self.ambient_dim = ambient_dim
        if start is None:
            self.basis = field.zeros((0, ambient_dim))
            self.pivots: list[int] = []
        else:
            self.basis = start.basis.copy()
            self.pivots = list(start.pivots)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def full(self) -> bool:
        return self.dim == self.ambient_dim

    def absorb(self, vectors) -> np.ndarray:
        vectors = np.asarray(vectors, dtype=self.field.dtype)
        if vectors.ndim == 1:
            vectors = vectors[None, :]
        if vectors.shape[1] != self.ambient_dim:
            raise ValueError(f"dimension mismatch: {vectors.shape[1]} != {self.ambient_dim}")
        fresh = []
        for start in range(0, vectors.shape[0], CHUNK):
            if self.full():
                break
            new = self._absorb_chunk(vectors[start:start + CHUNK])
            if new.shape[0]:
                fresh.append(new)
        if not fresh:
            return self.field.zeros((0, self.ambient_dim))
        return np.concatenate(fresh, axis=0)

    def absorb_one(self, v) -> bool:
        """Absorb one vector; True iff it was not already in the span."""
        return self.absorb(v).shape[0] > 0

    def _absorb_chunk(self, chunk: np.ndarray) -> np.ndarray:
        f = self.field
        if self.pivots:
            chunk = f.normalize(chunk - f.matmul(chunk[:, self.pivots], self.basis))
        keep = _nonzero(chunk).any(axis=1)
        if not keep.any():
            return f.zeros((0, self.ambient_dim))
        new_rows, new_piv = rref(f, chunk[keep])
        if self.pivots:
            basis = f.normalize(self.basis - f.matmul(self.basis[:, new_piv], new_rows))
            rows = np.concatenate([basis, new_rows], axis=0)
            piv = self.pivots + new_piv
            order = np.argsort(piv, kind="stable")
            self.basis = rows[order]
            self.pivots = [piv[i] for i in order]
        else:
            self.basis, self.pivots = new_rows, list(new_piv)
        return new_rows

    def subspace(self) -> Subspace:
        return Subspace(self.field, self.ambient_dim, self.basis.copy(), self.pivots)


def span(field: Field, ambient_dim: int, vectors) -> Subspace:
    """Canonical subspace spanned by ``vectors``."""
    b = SubspaceBuilder(field, ambient_dim)
    if not isinstance(vectors, np.ndarray):
        vectors = list(vectors)
        if not vectors:
            return b.subspace()
        vectors = field.asarray(vectors)
    if vectors.size:
        b.absorb(vectors)
    return b.subspace()


def span_chunks(field: Field, ambient_dim: int, chunks: Iterable[np.ndarray]) -> Subspace:
    b = SubspaceBuilder(field, ambient_dim)
    for chunk in chunks:
        if b.full():
            break
        b.absorb(chunk)
    return b.subspace()


def intersection_dim(s: Subspace, t: Subspace) -> int:
    return s.dim + t.dim - (s + t).dim


def nullspace(field: Field, matrix: np.ndarray) -> Subspace:
    """Right kernel {v : matrix @ v = 0}."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=field.dtype))
    n = matrix.shape[1]
    red, pivots = rref(field, matrix)
    free = [c for c in range(n) if c not in set(pivots)]
    vecs = field.zeros((len(free), n))
    one = field.scalar(1)
    for i, fc in enumerate(free):
        vecs[i, fc] = one
        for r, pc in enumerate(pivots):
            vecs[i, pc] = field.normalize(np.asarray([-red[r, fc]], dtype=field.dtype))[0]
    return span(field, n, vecs) if len(free) else Subspace.zero(field, n)


def solve(field: Field, matrix: np.ndarray, rhs: np.ndarray):
    """Solve ``matrix @ x = rhs`` for square ``matrix``.

    Returns ``(x, None)`` when the system is nonsingular and ``(None, k)``
    with a nonzero kernel vector ``k`` otherwise.
    """
    matrix = np.asarray(matrix, dtype=field.dtype)
    n = matrix.shape[0]
    aug = np.concatenate([matrix, np.asarray(rhs, dtype=field.dtype).reshape(n, 1)], axis=1)
    red, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        kernel = nullspace(field, matrix)
        return None, kernel.basis[0]
    return red[:n, n].copy(), None


def solve_mod_p(matrix: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """Solve a square system over F_p by Gauss-Jordan on int64; None when singular."""
    n = matrix.shape[0]
    A = np.empty((n, n + 1), dtype=np.int64)
    A[:, :n] = matrix
    A[:, n] = rhs
    A %= p
    inv = [0] + [pow(x, -1, p) for x in range(1, p)] if p < 1 << 16 else None
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if nz.size == 0:
            return None
        k = c + nz[0]
        if k != c:
            A[[c, k]] = A[[k, c]]
        piv = int(A[c, c])
        if piv != 1:
            A[c] = A[c] * (inv[piv] if inv else pow(piv, -1, p)) % p
        col = A[:, c].copy()
        col[c] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[c])) % p
    return A[:, n].copy()
