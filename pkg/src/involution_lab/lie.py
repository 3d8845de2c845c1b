"""Lie series, strong Lie chains, augmentation nilpotency, dimension
subgroups, the M_n / script-M_k spaces and the symmetric-group elements
x_{i,n}."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraContext
from .fields import Field, get_field
from .groups import (
    FiniteGroup,
    GroupError,
    Q8Decomposition,
    commutator_subgroup,
    derived_subgroup,
    power_subgroup,
    prime_factors,
    subgroup_generated,
)
from .linalg import Subspace, SubspaceBuilder, span

DEFAULT_SERIES_CAP = 64

VANISHED = "vanished"
STABILIZED = "stabilized_nonzero"
CAP_REACHED = "cap_reached"


@dataclass
class SeriesReport:
    """Dimensions of a series plus its termination verdict.

    ``index`` is the first position (1-based) at which the term is zero when
    the verdict is ``vanished``. For ``stabilized_nonzero``, ``witness`` holds
    (earlier, later) positions with term(later) containing term(earlier) != 0,
    which proves the series never reaches zero.
    """

    kind: str
    dims: list[int]
    verdict: str
    index: int | None = None
    witness: tuple[int, int] | None = None
    terms: list[Subspace] = field(default_factory=list, repr=False)

    @property
    def vanished(self) -> bool:
        return self.verdict == VANISHED

    def term(self, i: int) -> Subspace:
        """The i-th term (1-based); zero beyond the vanishing index."""
        if i <= len(self.terms):
            return self.terms[i - 1]
        if self.vanished:
            return Subspace.zero(self.terms[-1].field, self.terms[-1].ambient_dim)
        raise IndexError(f"term {i} was not computed")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "dims": list(self.dims),
            "verdict": self.verdict,
            "index": self.index,
            "witness": list(self.witness) if self.witness else None,
        }


def _as_rows(ctx: AlgebraContext, S) -> np.ndarray:
    if isinstance(S, Subspace):
        return S.basis
    rows = np.asarray(S, dtype=ctx.field.dtype)
    return rows.reshape(-1, ctx.n)


def bracket_span(ctx: AlgebraContext, A: np.ndarray, B: np.ndarray, builder: SubspaceBuilder | None = None) -> Subspace:
    """span{[a, b] : a in rows(A), b in rows(B)}."""
    builder = builder or SubspaceBuilder(ctx.field, ctx.n)
    if A.shape[0] == 0:
        return builder.subspace()
    pending, size = [], 0
    for b in B:
        if builder.full():
            break
        pending.append(ctx.bracket_block(A, b))
        size += A.shape[0]
        if size >= 4096:
            builder.absorb(np.concatenate(pending))
            pending, size = [], 0
    if pending and not builder.full():
        builder.absorb(np.concatenate(pending))
    return builder.subspace()


def lower_lie_series(ctx: AlgebraContext, S, cap: int = DEFAULT_SERIES_CAP) -> SeriesReport:
    """gamma^1 = S, gamma^{n+1} = [gamma^n, S].

    ``S`` is a Subspace or an array of generating vectors. Non-nilpotence is
    certified when some term contains an earlier nonzero term: bracketing
    with S is inclusion-monotone, so the containment then repeats forever.
    """
    gens = _as_rows(ctx, S)
    first = S if isinstance(S, Subspace) else ctx.span(gens)
    terms = [first]
    while True:
        cur = terms[-1]
        if cur.dim == 0:
            return _report("lower-lie", terms, VANISHED, index=len(terms))
        for i, earlier in enumerate(terms[:-1]):
            if earlier.dim and earlier.dim <= cur.dim and earlier.issubspace(cur):
                return _report("lower-lie", terms, STABILIZED, witness=(i + 1, len(terms)))
        if len(terms) >= cap:
            return _report("lower-lie", terms, CAP_REACHED)
        terms.append(bracket_span(ctx, cur.basis, gens))


def strong_lie_series(ctx: AlgebraContext, S, cap: int = DEFAULT_SERIES_CAP, first: str = "ring") -> SeriesReport:
    """S^(1) = FG, S^(i) = ideal generated by [S^(i-1), S].

    ``first="set"`` starts the chain at S^(1) = span(S) instead, so that
    S^(2) is the ideal generated by [S, S]. Units of S still satisfy
    gamma_n(U(S)) in 1 + S^(n) for n >= 2 under that convention.
    """
    if first not in ("ring", "set"):
        raise ValueError("first must be 'ring' or 'set'")
    gens = _as_rows(ctx, S)
    kind = "strong-lie" if first == "ring" else "strong-lie-set"
    if first == "ring":
        terms = [Subspace.full(ctx.field, ctx.n)]
    else:
        terms = [S if isinstance(S, Subspace) else ctx.span(gens)]
    while True:
        cur = terms[-1]
        if cur.dim == 0:
            return _report(kind, terms, VANISHED, index=len(terms))
        if len(terms) >= 2 and cur == terms[-2]:
            return _report(kind, terms, STABILIZED, witness=(len(terms) - 1, len(terms)))
        if len(terms) >= 3 and terms[-2].issubspace(cur):
            return _report(kind, terms, STABILIZED, witness=(len(terms) - 1, len(terms)))
        if len(terms) >= cap:
            return _report(kind, terms, CAP_REACHED)
        brackets = bracket_span(ctx, cur.basis, gens)
        terms.append(ctx.ideal_generated(brackets.basis))


def _report(kind, terms, verdict, index=None, witness=None) -> SeriesReport:
    return SeriesReport(kind, [t.dim for t in terms], verdict, index, witness, list(terms))


def lie_index(ctx: AlgebraContext, S=None, cap: int = DEFAULT_SERIES_CAP) -> SeriesReport:
    """t(S) for S defaulting to the symmetric elements."""
    S = ctx.symmetric_generators().plus_part if S is None else S
    return lower_lie_series(ctx, S, cap)


# --- augmentation ideals of p-groups ------------------------------------------


def _field(field_or_char) -> Field:
    return get_field(field_or_char) if isinstance(field_or_char, int) else field_or_char


def augmentation_series(P: FiniteGroup, field_or_char, cap: int = 1024) -> SeriesReport:
    """Delta(P)^n in FP until it vanishes; raises if it stabilizes nonzero."""
    ctx = AlgebraContext(P, _field(field_or_char))
    whole = tuple(range(P.order))
    terms = [ctx.augmentation_power(whole, 1)]
    while terms[-1].dim and len(terms) < cap:
        nxt = _next_aug_power(ctx, terms[-1])
        if nxt == terms[-1]:
            raise GroupError("augmentation ideal is not nilpotent (characteristic does not match P)")
        terms.append(nxt)
    if terms[-1].dim:
        return _report("aug-power", terms, CAP_REACHED)
    return _report("aug-power", terms, VANISHED, index=len(terms))


def _next_aug_power(ctx: AlgebraContext, cur: Subspace) -> Subspace:
    blocks = [ctx.norm(cur.basis[:, ctx.right_idx[a]] - cur.basis) for a in range(1, ctx.n)]
    return span(ctx.field, ctx.n, np.concatenate(blocks)) if blocks else Subspace.zero(ctx.field, ctx.n)


def t_nil(P: FiniteGroup, field_or_char) -> int:
    """Nilpotency index of the augmentation ideal of FP (the least n with Delta^n = 0)."""
    if P.order == 1:
        return 1
    return augmentation_series(P, field_or_char).index


@dataclass
class DimensionChain:
    subgroups: list[tuple]

    def __getitem__(self, n: int) -> tuple:
        """D_n (1-based); {1} past the end of the chain."""
        if n <= len(self.subgroups):
            return self.subgroups[n - 1]
        return (0,)

    def __len__(self):
        return len(self.subgroups)


def dimension_subgroups(P: FiniteGroup, field_or_char) -> DimensionChain:
    """D_n = {g : g - 1 in Delta^n}, cross-checked against the recursion
    D_n = <(D_{n-1}, P), D_{ceil(n/p)}^p>."""
    fld = _field(field_or_char)
    p = fld.characteristic
    if P.order == 1:
        return DimensionChain([(0,)])
    if prime_factors(P.order) != [p]:
        raise GroupError(f"P is not a {p}-group")
    ctx = AlgebraContext(P, fld)
    powers = augmentation_series(P, fld).terms
    one = ctx.one()
    diffs = np.stack([ctx.norm(ctx.unit_vector(g) - one) for g in range(P.order)])
    chain = []
    for D in powers:
        members = tuple(g for g in range(P.order) if D.contains(diffs[g]))
        chain.append(members)
    chain.append((0,))
    # drop repeats of {1} at the tail
    while len(chain) > 1 and chain[-2] == (0,):
        chain.pop()
    whole = tuple(range(P.order))
    rec = [whole]
    for n in range(2, len(chain) + 1):
        prev = rec[-1]
        comm = commutator_subgroup(P, prev, whole)
        pw = [P.power(g, p) for g in rec[math.ceil(n / p) - 1]]
        rec.append(subgroup_generated(P, list(comm) + pw))
    if rec != chain:
        raise AssertionError("dimension subgroups disagree with the Jennings recursion")
    return DimensionChain(chain)


def is_powerful(P: FiniteGroup) -> bool:
    """P' contained in P^p (p odd)."""
    if P.order == 1:
        return True
    primes = prime_factors(P.order)
    if len(primes) != 1:
        raise GroupError("not a p-group")
    p = primes[0]
    return set(derived_subgroup(P)) <= set(power_subgroup(P, range(P.order), p))


# --- M_n, script-M_k ----------------------------------------------------------


def _h_minus_hinv(ctx: AlgebraContext, h: int) -> np.ndarray:
    return ctx.norm(ctx.unit_vector(h) - ctx.unit_vector(int(ctx.group.inv[h])))


def f_space(ctx: AlgebraContext, dec: Q8Decomposition, n: int) -> Subspace:
    """span{(h1 - h1^-1)...(hn - hn^-1) : hi in P}."""
    factors = np.stack([_h_minus_hinv(ctx, h) for h in dec.p_part])
    cur = ctx.span(factors)
    for _ in range(n - 1):
        if cur.dim == 0:
            break
        b = SubspaceBuilder(ctx.field, ctx.n)
        for fac in factors:
            b.absorb(ctx.right_mul_many(cur.basis, fac))
        cur = b.subspace()
    return cur


def _one_minus(ctx: AlgebraContext, g: int) -> np.ndarray:
    return ctx.norm(ctx.one() - ctx.unit_vector(g))


def m_space(ctx: AlgebraContext, dec: Q8Decomposition, n: int) -> Subspace:
    """span{f (1 - c) a : f in f_space(n), a noncentral in Q8 x E}."""
    if dec is None:
        raise ValueError("decomposition required")
    F = f_space(ctx, dec, n)
    b = SubspaceBuilder(ctx.field, ctx.n)
    if F.dim == 0:
        return b.subspace()
    one_c = _one_minus(ctx, dec.c)
    for a in dec.noncentral_q8e:
        b.absorb(ctx.right_mul_many(F.basis, ctx.mul(one_c, ctx.unit_vector(a))))
    return b.subspace()


def m_script_space(ctx: AlgebraContext, dec: Q8Decomposition, k: int) -> Subspace:
    """The spanning set of gamma^k for abelian P: f (1 - a^2) a and g f (1 - a^2) a."""
    if dec is None:
        raise ValueError("decomposition required")
    F = f_space(ctx, dec, k)
    b = SubspaceBuilder(ctx.field, ctx.n)
    if F.dim == 0:
        return b.subspace()
    G = ctx.group
    for a in dec.noncentral_q8e:
        tail = ctx.mul(_one_minus(ctx, G.power(a, 2)), ctx.unit_vector(a))
        rows = ctx.right_mul_many(F.basis, tail)
        b.absorb(rows)
        b.absorb(rows[:, ctx.left_idx[dec.g]])
    return b.subspace()


# --- x_{i,n} in FS_n ------------------------------------------------------------


def _compose(p: tuple, q: tuple) -> tuple:
    """(p q)(k) = p(q(k)); permutations as image tuples of 1..n."""
    return tuple(p[q[k] - 1] for k in range(len(q)))


def cycle(n: int, *points: int) -> tuple:
    """The cycle (points[0], points[1], ...) mapping each point to the next."""
    img = list(range(1, n + 1))
    for a, b in zip(points, points[1:] + points[:1]):
        img[a - 1] = b
    return tuple(img)


@dataclass
class SymPermSum:
    """An element of Z S_n: {permutation image tuple: coefficient}."""

    n: int
    terms: dict

    def __mul__(self, other: "SymPermSum") -> "SymPermSum":
        out: dict = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                r = _compose(p, q)
                out[r] = out.get(r, 0) + a * b
        return SymPermSum(self.n, {k: v for k, v in out.items() if v})

    def __add__(self, other: "SymPermSum") -> "SymPermSum":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SymPermSum(self.n, {k: v for k, v in out.items() if v})

    def __len__(self):
        return len(self.terms)

    @property
    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    @classmethod
    def of(cls, n: int, *perms) -> "SymPermSum":
        return cls(n, {p: 1 for p in perms})


def sym_action(n: int, upto: int | None = None) -> SymPermSum:
    """x_{upto,n}: x_{2,n} = 1 + (2,1), x_{i,n} = x_{i-1,n} + x_{i-1,n} (i, i-1, ..., 1)."""
    upto = n if upto is None else upto
    if n < 2 or not 2 <= upto <= n:
        raise ValueError("need 2 <= i <= n")
    ident = tuple(range(1, n + 1))
    x = SymPermSum.of(n, ident, cycle(n, 2, 1))
    for i in range(3, upto + 1):
        x = x + x * SymPermSum.of(n, cycle(n, *range(i, 0, -1)))
    return x


def f_product(ctx: AlgebraContext, hs) -> np.ndarray:
    out = ctx.one()
    for h in hs:
        out = ctx.mul(out, _h_minus_hinv(ctx, h))
    return out


def apply_sym_action(ctx: AlgebraContext, x: SymPermSum, hs, a: int, c: int) -> np.ndarray:
    """Sum of coef * f_{s(1),...,s(n)} (1 - c) a over the terms s of x."""
    if len(hs) != x.n:
        raise ValueError("need one h per position")
    tail = ctx.mul(_one_minus(ctx, c), ctx.unit_vector(a))
    out = ctx.zero()
    for perm, coef in x.terms.items():
        f = f_product(ctx, [hs[perm[i] - 1] for i in range(x.n)])
        out = ctx.norm(out + ctx.field.scalar(coef) * ctx.mul(f, tail))
    return out
