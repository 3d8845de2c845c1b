"""The group algebra FG with an oriented classical involution.

Elements are coefficient vectors indexed by group elements. Bulk operations
work on 2-d arrays of such vectors; multiplying by a group element is a
coordinate permutation, which is what keeps the Lie computations cheap.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fields import Field, get_field
from .groups import (
    FiniteGroup,
    GroupError,
    Orientation,
    conjugacy_classes,
    make_orientation,
    quotient_group,
    subgroup_generated,
    trivial_orientation,
)
from .linalg import Subspace, SubspaceBuilder, _nonzero, nullspace, solve, solve_mod_p, span

CHAR0_ORDER_CAP = 64


class NotUnit(ArithmeticError):
    """Raised by ``invert``; ``certificate`` is a nonzero w with a*w = 0 (computed on demand)."""

    def __init__(self, field: Field, matrix: np.ndarray):
        super().__init__("element is not a unit")
        self._field = field
        self._matrix = matrix

    @property
    def certificate(self) -> np.ndarray:
        return nullspace(self._field, self._matrix).basis[0]


def generating_set(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    current = {0}
    for g in range(G.order):
        if g not in current:
            gens.append(g)
            current = set(subgroup_generated(G, gens))
    return gens


class AlgebraContext:
    """FG over an odd prime field or Q, with orientation sigma."""

    def __init__(self, group: FiniteGroup, field: Field | int, orientation: Orientation | None = None,
                 char0_cap: int = CHAR0_ORDER_CAP):
        self.group = group
        self.field = get_field(field) if isinstance(field, int) else field
        if self.field.characteristic == 2:
            raise ValueError("characteristic 2 is not supported")
        if self.field.characteristic == 0 and group.order > char0_cap:
            raise GroupError(f"characteristic 0 contexts are capped at order {char0_cap}")
        self.orientation = orientation if orientation is not None else trivial_orientation(group)
        if self.orientation.group is not group:
            raise ValueError("orientation belongs to another group")
        n = group.order
        self.n = n
        mul, inv = group.mul, group.inv
        # (a*g)_k = a_{k g^-1}  and  (g*a)_k = a_{g^-1 k}
        self.right_idx = mul[np.arange(n)[None, :], inv[:, None]]
        self.left_idx = mul[inv[:, None], np.arange(n)[None, :]]
        self.sign = self.orientation.sign
        self.generators = generating_set(group)
        self._sym = None

    def __repr__(self):
        return (f"AlgebraContext(order={self.n}, char={self.field.characteristic}, "
                f"|N|={len(self.orientation.kernel)})")

    # -- vectors -------------------------------------------------------------

    def zero(self) -> np.ndarray:
        return self.field.zeros(self.n)

    def unit_vector(self, g: int, coeff=1) -> np.ndarray:
        v = self.zero()
        v[g] = self.field.scalar(coeff)
        return v

    def one(self) -> np.ndarray:
        return self.unit_vector(0)

    def vec(self, terms) -> np.ndarray:
        """Vector from {label_or_index: coeff}."""
        v = self.zero()
        for key, c in dict(terms).items():
            g = self.group.index(key)
            v[g] = self.field.normalize(np.asarray([v[g] + self.field.scalar(c)], dtype=self.field.dtype))[0]
        return v

    def element(self, v) -> "AlgebraElement":
        return AlgebraElement(self, np.asarray(v, dtype=self.field.dtype))

    def norm(self, arr):
        return self.field.normalize(arr)

    def mul_group_right(self, a: np.ndarray, g: int) -> np.ndarray:
        return a[..., self.right_idx[g]]

    def mul_group_left(self, g: int, a: np.ndarray) -> np.ndarray:
        return a[..., self.left_idx[g]]

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.right_mul_many(np.atleast_2d(a), b)[0] if np.ndim(a) == 1 else self.right_mul_many(a, b)

    def right_mul_many(self, U: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Rows of U each multiplied on the right by b."""
        return self._act_many(U, b, self.right_idx)

    def left_mul_many(self, b: np.ndarray, U: np.ndarray) -> np.ndarray:
        """b multiplied on the left onto every row of U."""
        return self._act_many(U, b, self.left_idx)

    def _act_many(self, U: np.ndarray, b: np.ndarray, idx: np.ndarray) -> np.ndarray:
        supp = np.flatnonzero(_nonzero(b))
        if supp.size <= 24:
            out = self.field.zeros(U.shape)
            for g in supp:
                out = out + b[g] * U[:, idx[g]]
            return self.norm(out)
        coeff = b[supp][None, :]
        rows = max(1, 2_000_000 // (supp.size * self.n))
        parts = []
        for start in range(0, U.shape[0], rows):
            stacked = U[start:start + rows][:, idx[supp]]  # (r, |supp|, n)
            r = stacked.shape[0]
            flat = stacked.transpose(1, 0, 2).reshape(supp.size, r * self.n)
            parts.append(self.field.matmul(coeff, flat).reshape(r, self.n))
        return np.concatenate(parts, axis=0) if parts else self.field.zeros(U.shape)

    def bracket(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.norm(self.mul(a, b) - self.mul(b, a))

    def bracket_block(self, A: np.ndarray, b: np.ndarray) -> np.ndarray:
        """[a, b] for every row a of A."""
        return self.norm(self.right_mul_many(A, b) - self.left_mul_many(b, A))

    def iterated_bracket(self, xs) -> np.ndarray:
        """[x1, ..., xn] = [[x1, ..., x_{n-1}], xn]."""
        acc = np.asarray(xs[0], dtype=self.field.dtype)
        for x in xs[1:]:
            acc = self.bracket(acc, x)
        return acc

    def power(self, a: np.ndarray, k: int) -> np.ndarray:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    # -- involution ----------------------------------------------------------

    def involute(self, a: np.ndarray) -> np.ndarray:
        """(sum a_g g)* = sum a_g sigma(g) g^-1."""
        a = np.asarray(a, dtype=self.field.dtype)
        out = np.empty_like(a)
        out[..., self.group.inv] = self.norm(a * self.sign)
        return out

    def involution_matrix(self) -> np.ndarray:
        """J with involute(a) == J @ a."""
        J = self.field.zeros((self.n, self.n))
        for g in range(self.n):
            J[self.group.inv[g], g] = self.field.scalar(int(self.sign[g]))
        return J

    def symmetric_generators(self) -> "SymmetricGenerators":
        if self._sym is None:
            self._sym = symmetric_generators(self)
        return self._sym

    def symmetric_subspace(self) -> Subspace:
        return self.symmetric_generators().plus_span()

    # -- special elements and subspaces ----------------------------------------

    def hat(self, subset) -> np.ndarray:
        v = self.zero()
        for g in set(int(x) for x in subset):
            v[g] = self.field.scalar(1)
        return v

    def span(self, vectors) -> Subspace:
        return span(self.field, self.n, vectors)

    def left_multiples(self, W: Subspace, elems) -> np.ndarray:
        blocks = [W.basis[:, self.left_idx[g]] for g in elems]
        return np.concatenate(blocks, axis=0) if blocks else self.field.zeros((0, self.n))

    def augmentation_power(self, A, n: int) -> Subspace:
        """(FG * Delta(A))^n = FG * Delta(A)^n for a normal subgroup A."""
        A = tuple(sorted(set(int(a) for a in A)))
        if not self.group.is_subgroup(A):
            raise GroupError("A is not a subgroup")
        if n < 1:
            raise ValueError("n >= 1 required")
        return self.augmentation_powers(A, n)[n - 1]

    def augmentation_powers(self, A, upto: int) -> list[Subspace]:
        """[Delta(G,A)^1, ..., Delta(G,A)^upto]; stops early once zero (padded)."""
        A = tuple(sorted(set(int(a) for a in A)))
        if not self.group.is_normal(A):
            raise GroupError("A is not a normal subgroup")
        one = self.one()
        aug = [self.norm(self.unit_vector(a) - one) for a in A if a != 0]
        local = span(self.field, self.n, aug) if aug else Subspace.zero(self.field, self.n)
        transversal = []
        covered = set()
        for g in range(self.n):
            if g not in covered:
                transversal.append(g)
                covered.update(int(self.group.mul[g, a]) for a in A)
        out = []
        for k in range(1, upto + 1):
            if k > 1:
                if local.dim == 0:
                    out.append(local)
                    continue
                # Delta(A)^k = Delta(A)^{k-1} * span{a - 1}
                blocks = [self.norm(local.basis[:, self.right_idx[a]] - local.basis) for a in A if a != 0]
                local = span(self.field, self.n, np.concatenate(blocks)) if blocks else local
            if local.dim == 0:
                out.append(local)
            else:
                out.append(span(self.field, self.n, self.left_multiples(local, transversal)))
        return out

    def subspace_product(self, U: Subspace, V: Subspace) -> Subspace:
        """span{u v : u in U, v in V}."""
        b = SubspaceBuilder(self.field, self.n)
        for v in V.basis:
            if b.full():
                break
            if U.dim:
                b.absorb(self.right_mul_many(U.basis, v))
        return b.subspace()

    def ideal_generated(self, vectors, start: Subspace | None = None) -> Subspace:
        """Smallest two-sided ideal containing ``vectors`` (and ``start``)."""
        b = SubspaceBuilder(self.field, self.n, start=start)
        vectors = np.asarray(vectors, dtype=self.field.dtype).reshape(-1, self.n)
        frontier = b.absorb(vectors)
        if start is not None and start.dim:
            frontier = np.concatenate([start.basis, frontier]) if frontier.size else start.basis
        while frontier.shape[0] and not b.full():
            cand = [frontier[:, self.right_idx[s]] for s in self.generators]
            cand += [frontier[:, self.left_idx[s]] for s in self.generators]
            frontier = b.absorb(np.concatenate(cand))
        return b.subspace()

    def algebra_center(self) -> Subspace:
        return span(self.field, self.n, [self.hat(cls) for cls in conjugacy_classes(self.group)])

    # -- units ---------------------------------------------------------------

    def left_regular(self, a: np.ndarray) -> np.ndarray:
        """L_a with (a*v) = L_a @ v."""
        return np.asarray(a)[self.right_idx.T]

    def invert(self, a: np.ndarray) -> np.ndarray:
        L = self.left_regular(a)
        if self.field.characteristic:
            x = solve_mod_p(L, self.one(), self.field.characteristic)
        else:
            x, _ = solve(self.field, L, self.one())
        if x is None:
            raise NotUnit(self.field, L)
        if not np.array_equal(self.mul(a, x), self.one()):
            raise ArithmeticError("inverse check failed")
        return x

    def is_unit(self, a: np.ndarray) -> bool:
        try:
            self.invert(a)
        except NotUnit:
            return False
        return True

    # -- quotients -----------------------------------------------------------

    def quotient_context(self, A, induced: bool = True):
        """(context over F(G/A), coset map); the involution is induced when A is in N."""
        A = tuple(sorted(set(int(a) for a in A)))
        Q = quotient_group(self.group, A)
        if induced:
            if not set(A) <= set(self.orientation.kernel):
                raise GroupError("A is not contained in the kernel N; no induced involution")
            kernel = sorted({int(Q.coset_of[g]) for g in self.orientation.kernel})
            sigma = make_orientation(Q.group, kernel)
        else:
            sigma = trivial_orientation(Q.group)
        return AlgebraContext(Q.group, self.field, sigma), Q.coset_of

    def quotient_push(self, coset_of: np.ndarray, a: np.ndarray, qctx: "AlgebraContext") -> np.ndarray:
        out = qctx.field.zeros(qctx.n)
        for g in np.flatnonzero(_nonzero(a)):
            out[coset_of[g]] = out[coset_of[g]] + a[g]
        return qctx.norm(out)

    # -- sampling ------------------------------------------------------------

    def random_vector(self, rng: np.random.Generator, support=None, bound: int = 3) -> np.ndarray:
        support = range(self.n) if support is None else support
        v = self.zero()
        if self.field.characteristic:
            for g in support:
                v[g] = int(rng.integers(0, self.field.characteristic))
        else:
            for g in support:
                v[g] = Fraction(int(rng.integers(-bound, bound + 1)))
        return v

    def random_combination(self, rng: np.random.Generator, rows: np.ndarray, bound: int = 3) -> np.ndarray:
        if self.field.characteristic:
            coeffs = rng.integers(0, self.field.characteristic, size=rows.shape[0])
        else:
            coeffs = np.asarray([Fraction(int(c)) for c in rng.integers(-bound, bound + 1, size=rows.shape[0])],
                                dtype=object)
        if rows.shape[0] == 0:
            return self.zero()
        return self.field.matmul(np.asarray(coeffs, dtype=self.field.dtype)[None, :], rows)[0]

    def format(self, a: np.ndarray) -> str:
        terms = []
        for g in np.flatnonzero(_nonzero(a)):
            c = a[g]
            lab = self.group.labels[g]
            neg = self.field.characteristic == 0 and c < 0
            mag = -c if neg else c
            if lab == "1":
                body = str(mag)
            else:
                body = lab if mag == 1 else f"{mag}*{lab}"
            terms.append(("-" if neg else "+", body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return s


@dataclass
class SymmetricGenerators:
    """The generating sets of the symmetric (plus) and skew (minus) elements."""

    ctx: AlgebraContext
    plus_part: np.ndarray
    minus_part: np.ndarray
    plus_reps: list  # (g, +1 | -1): element g + s*g^-1
    minus_reps: list

    def plus_span(self) -> Subspace:
        return self.ctx.span(self.plus_part)

    def minus_span(self) -> Subspace:
        return self.ctx.span(self.minus_part)


def symmetric_generators(ctx: AlgebraContext) -> SymmetricGenerators:
    """S = {g + g^-1 : g in N} u {g - g^-1 : g not in N, g^2 != 1}; L likewise.

    One representative (the lower index) per orbit {g, g^-1}.
    """
    G = ctx.group
    N = set(ctx.orientation.kernel)
    plus, minus, plus_reps, minus_reps = [], [], [], []
    for g in range(G.order):
        gi = int(G.inv[g])
        if gi < g:
            continue
        involutive = G.mul[g, g] == 0
        if g in N:
            plus.append(ctx.norm(ctx.unit_vector(g) + ctx.unit_vector(gi)))
            plus_reps.append((g, 1))
            if not involutive:
                minus.append(ctx.norm(ctx.unit_vector(g) - ctx.unit_vector(gi)))
                minus_reps.append((g, -1))
        else:
            minus.append(ctx.norm(ctx.unit_vector(g) + ctx.unit_vector(gi)))
            minus_reps.append((g, 1))
            if not involutive:
                plus.append(ctx.norm(ctx.unit_vector(g) - ctx.unit_vector(gi)))
                plus_reps.append((g, -1))
    fz = ctx.field.zeros((0, ctx.n))
    return SymmetricGenerators(
        ctx,
        np.asarray(plus, dtype=ctx.field.dtype) if plus else fz,
        np.asarray(minus, dtype=ctx.field.dtype) if minus else fz,
        plus_reps,
        minus_reps,
    )


class AlgebraElement:
    """Thin value wrapper around a coefficient vector, for interactive use."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: AlgebraContext, coeffs: np.ndarray):
        if coeffs.shape != (ctx.n,):
            raise ValueError("coefficient vector has the wrong length")
        self.ctx = ctx
        self.coeffs = coeffs

    def _other(self, other) -> np.ndarray:
        if isinstance(other, AlgebraElement):
            if other.ctx is not self.ctx:
                raise ValueError("context mismatch")
            return other.coeffs
        return self.ctx.unit_vector(0, other)

    def __add__(self, other):
        return AlgebraElement(self.ctx, self.ctx.norm(self.coeffs + self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return AlgebraElement(self.ctx, self.ctx.norm(self.coeffs - self._other(other)))

    def __rsub__(self, other):
        return AlgebraElement(self.ctx, self.ctx.norm(self._other(other) - self.coeffs))

    def __neg__(self):
        return AlgebraElement(self.ctx, self.ctx.norm(-self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.ctx, self.ctx.mul(self.coeffs, self._other(other)))
        return AlgebraElement(self.ctx, self.ctx.norm(self.coeffs * self.ctx.field.scalar(other)))

    def __rmul__(self, other):
        return AlgebraElement(self.ctx, self.ctx.norm(self.coeffs * self.ctx.field.scalar(other)))

    def __pow__(self, k: int):
        return AlgebraElement(self.ctx, self.ctx.power(self.coeffs, k))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement(self.ctx, self._other(other))
        return self.ctx is other.ctx and bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash(tuple(self.coeffs.tolist()))

    def star(self) -> "AlgebraElement":
        return AlgebraElement(self.ctx, self.ctx.involute(self.coeffs))

    def bracket(self, other) -> "AlgebraElement":
        return AlgebraElement(self.ctx, self.ctx.bracket(self.coeffs, self._other(other)))

    def inverse(self) -> "AlgebraElement":
        return AlgebraElement(self.ctx, self.ctx.invert(self.coeffs))

    def is_zero(self) -> bool:
        return not _nonzero(self.coeffs).any()

    def __repr__(self):
        return self.ctx.format(self.coeffs)


def basis_elements(ctx: AlgebraContext) -> dict[str, AlgebraElement]:
    """Group elements as algebra elements, keyed by label."""
    return {lab: ctx.element(ctx.unit_vector(i)) for i, lab in enumerate(ctx.group.labels)}
