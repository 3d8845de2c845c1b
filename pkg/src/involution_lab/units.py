"""Symmetric units: group commutators, exhaustive class computation on tiny
algebras and witness-unit bounds for the nilpotency class of U+(FG)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraContext, NotUnit
from .groups import Q8Decomposition
from .lie import DEFAULT_SERIES_CAP, SeriesReport, strong_lie_series
from .linalg import Subspace, _nonzero

DEFAULT_ENUM_CAP = 3 ** 12
DEFAULT_GROUP_CAP = 50_000
DEFAULT_SEARCH_BUDGET = 20_000


class CapExceeded(RuntimeError):
    pass


def unit_commutator(ctx: AlgebraContext, u, v, u_inv=None, v_inv=None) -> np.ndarray:
    """(u, v) = u^-1 v^-1 u v, checked against 1 + u^-1 v^-1 [u, v]."""
    u_inv = ctx.invert(u) if u_inv is None else u_inv
    v_inv = ctx.invert(v) if v_inv is None else v_inv
    head = ctx.mul(u_inv, v_inv)
    value = ctx.mul(ctx.mul(head, u), v)
    other = ctx.norm(ctx.one() + ctx.mul(head, ctx.bracket(u, v)))
    if not np.array_equal(value, other):
        raise AssertionError("commutator identity (u,v) = 1 + u^-1 v^-1 [u,v] failed")
    return value


def iterated_unit_commutator(ctx: AlgebraContext, units, inverses=None) -> tuple[np.ndarray, np.ndarray]:
    """((u1, ..., u_{n-1}), u_n) together with its inverse."""
    inverses = [ctx.invert(u) for u in units] if inverses is None else inverses
    w, w_inv = units[0], inverses[0]
    for u, u_inv in zip(units[1:], inverses[1:]):
        # (w, u)^-1 = (u, w)
        w, w_inv = (unit_commutator(ctx, w, u, w_inv, u_inv),
                    unit_commutator(ctx, u, w, u_inv, w_inv))
    return w, w_inv


# --- exhaustive enumeration ----------------------------------------------------


def _invertible_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Batched Gaussian elimination: which of the (k, n, n) matrices are invertible mod p."""
    A = np.array(mats, dtype=np.int64) % p
    k, n, _ = A.shape
    inv_table = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    alive = np.ones(k, dtype=bool)
    rows = np.arange(k)
    for c in range(n):
        nz = A[:, c:, c] != 0
        alive &= nz.any(axis=1)
        r = c + nz.argmax(axis=1)
        top, piv_row = A[rows, c].copy(), A[rows, r].copy()
        A[rows, r] = top
        A[rows, c] = piv_row
        A[:, c] = A[:, c] * inv_table[A[:, c, c]][:, None] % p
        factors = A[:, c + 1:, c]
        A[:, c + 1:] = (A[:, c + 1:] - factors[:, :, None] * A[:, c][:, None, :]) % p
    return alive


def enumerate_symmetric_units(ctx: AlgebraContext, cap: int = DEFAULT_ENUM_CAP) -> np.ndarray:
    """All symmetric units of FG over a prime field, one per row.

    Scans all p^dim symmetric elements; raises CapExceeded beyond ``cap``.
    """
    p = ctx.field.characteristic
    if p == 0:
        raise CapExceeded("the symmetric elements of a characteristic 0 algebra are infinite")
    basis = ctx.symmetric_generators().plus_part
    d = basis.shape[0]
    if p ** d > cap:
        raise CapExceeded(f"{p}^{d} symmetric elements exceed the enumeration cap {cap}")
    coeffs = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64).reshape(-1, d)
    found = []
    for start in range(0, coeffs.shape[0], 4096):
        elems = ctx.field.matmul(coeffs[start:start + 4096], basis)
        mats = elems[:, ctx.right_idx.T]
        found.append(elems[_invertible_mod_p(mats, p)])
    return np.concatenate(found) if found else ctx.field.zeros((0, ctx.n))


def _key(v: np.ndarray) -> bytes:
    return np.ascontiguousarray(v).tobytes()


def generated_unit_group(ctx: AlgebraContext, gens, gen_invs, cap: int = DEFAULT_GROUP_CAP) -> dict:
    """Breadth-first closure {key: (element, inverse)} of the group generated by ``gens``."""
    one = ctx.one()
    seen = {_key(one): (one, one)}
    frontier = [(one, one)]
    while frontier:
        nxt = []
        for x, x_inv in frontier:
            for g, g_inv in zip(gens, gen_invs):
                y = ctx.mul(x, g)
                k = _key(y)
                if k not in seen:
                    seen[k] = (y, ctx.mul(g_inv, x_inv))
                    nxt.append(seen[k])
                    if len(seen) > cap:
                        raise CapExceeded(f"generated subgroup exceeds {cap} elements")
        frontier = nxt
    return seen


def subset_class_exhaustive(ctx: AlgebraContext, units, cap: int = DEFAULT_GROUP_CAP,
                            max_rounds: int = 64) -> int | None:
    """cl(H) for a finite unit set H: least n with gamma_{n+1}(H) = 1.

    gamma_1 = H and gamma_{n+1} = <(a, h) : a in gamma_n, h in H>, each
    gamma_n enumerated in full. Returns None when a term repeats a previous
    nontrivial one (H is then not nilpotent). cl({1}) = 0.
    """
    units = [np.asarray(u, dtype=ctx.field.dtype) for u in units]
    one = ctx.one()
    H = [(u, ctx.invert(u)) for u in units]
    if all(np.array_equal(u, one) for u, _ in H):
        return 0
    gamma = {_key(u): (u, ui) for u, ui in H}
    history = []
    for n in range(1, max_rounds + 1):
        comms = {}
        for a, a_inv in gamma.values():
            for h, h_inv in H:
                c = unit_commutator(ctx, a, h, a_inv, h_inv)
                k = _key(c)
                if k not in comms:
                    comms[k] = (c, unit_commutator(ctx, h, a, h_inv, a_inv))
        comms.pop(_key(one), None)
        if not comms:
            return n
        gens = list(comms.values())
        gamma = generated_unit_group(ctx, [g for g, _ in gens], [gi for _, gi in gens], cap)
        keys = frozenset(gamma)
        if keys in history:
            return None
        history.append(keys)
    raise CapExceeded(f"class computation did not settle in {max_rounds} rounds")


# --- witness bounds --------------------------------------------------------------


@dataclass
class WitnessTuple:
    """x_i = a_i h_i + (a_i h_i)^-1 and u_i = 1 - a_i(1 + a_i^2) + x_i."""

    pairs: list            # (a_i, h_i) element indices
    x_list: list
    u_list: list
    lie_value: np.ndarray  # [x_1, ..., x_n]
    commutator: np.ndarray  # (u_1, ..., u_n)
    congruence: bool       # (u_1..u_n) - 1 - [x_1..x_n] in FG Delta(P)^{n+1}

    @property
    def length(self) -> int:
        return len(self.pairs)

    def to_dict(self, ctx: AlgebraContext) -> dict:
        lab = ctx.group.labels
        return {
            "pairs": [[lab[a], lab[h]] for a, h in self.pairs],
            "lie_value": ctx.format(self.lie_value),
            "congruence": self.congruence,
        }


@dataclass
class UnitSubsetReport:
    """Bounds on cl(U+(FG)); ``exact`` iff they meet."""

    lower_bound: int
    upper_bound: int | None
    exact: bool
    method: str
    witness: WitnessTuple | None = None
    upper_sources: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def value(self) -> int | None:
        return self.lower_bound if self.exact else None

    def to_dict(self, ctx: AlgebraContext | None = None) -> dict:
        out = {
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "exact": self.exact,
            "method": self.method,
            "upper_sources": dict(sorted(self.upper_sources.items())),
            "notes": list(self.notes),
        }
        if self.witness is not None and ctx is not None:
            out["witness"] = self.witness.to_dict(ctx)
        return out


def p_filtration(ctx: AlgebraContext, dec: Q8Decomposition) -> list[Subspace]:
    """[FG Delta(P)^1, ..., FG Delta(P)^t] ending with the first zero term."""
    P = dec.p_part
    if len(P) == 1:
        return [Subspace.zero(ctx.field, ctx.n)]
    powers = ctx.augmentation_powers(P, len(P) + 1)
    out = []
    for D in powers:
        out.append(D)
        if D.dim == 0:
            break
    return out


def _filtration_member(filtration: list[Subspace], k: int, v) -> bool:
    if k <= 0:
        return True
    if k > len(filtration):
        return not _nonzero(v).any()
    return filtration[k - 1].contains(v)


def witness_unit(ctx: AlgebraContext, a: int, h: int) -> tuple[np.ndarray, np.ndarray]:
    """(x, u) for the pair (a, h)."""
    G = ctx.group
    g = int(G.mul[a, h])
    x = ctx.norm(ctx.unit_vector(g) + ctx.unit_vector(int(G.inv[g])))
    a2 = G.power(a, 2)
    central = ctx.mul(ctx.unit_vector(a), ctx.norm(ctx.one() + ctx.unit_vector(a2)))
    u = ctx.norm(ctx.one() - central + x)
    return x, u


def _pair_degree(filtration, ctx, h) -> int:
    v = ctx.norm(ctx.unit_vector(h) - ctx.one())
    k = 0
    while k < len(filtration) and filtration[k].contains(v):
        k += 1
    return k


def search_witness(ctx: AlgebraContext, dec: Q8Decomposition, n: int, filtration: list[Subspace],
                   rng: np.random.Generator, budget: int = DEFAULT_SEARCH_BUDGET) -> WitnessTuple | None:
    """Depth-first search for a length-n tuple with (u_1, ..., u_n) != 1.

    The first pass uses a fixed candidate order (generators of P first);
    later passes are seeded random restarts. A partial bracket that already
    lies too deep in the Delta(P)-filtration cannot survive the remaining
    brackets and is pruned.
    """
    t_nil = len(filtration)
    hs = [h for h in dec.p_part if h != 0]
    hs.sort(key=lambda h: (_pair_degree(filtration, ctx, h), h))
    cands = [(a, h) for h in hs for a in dec.noncentral_q8e]
    if not cands:
        return None
    xs = {pair: witness_unit(ctx, *pair) for pair in cands}
    nodes = 0

    def leaf(path, value):
        us = [xs[pr][1] for pr in path]
        try:
            invs = [ctx.invert(u) for u in us]
        except NotUnit:
            raise AssertionError("witness element is not a unit")
        comm, _ = iterated_unit_commutator(ctx, us, invs)
        if np.array_equal(comm, ctx.one()):
            return None
        diff = ctx.norm(comm - ctx.one() - value)
        return WitnessTuple(list(path), [xs[pr][0] for pr in path], us, value, comm,
                            _filtration_member(filtration, n + 1, diff))

    def dfs(path, value, order):
        nonlocal nodes
        i = len(path)
        if i == n:
            return leaf(path, value)
        for pair in order:
            nodes += 1
            if nodes > budget:
                return None
            x = xs[pair][0]
            nv = x if i == 0 else ctx.bracket(value, x)
            if i >= 1:
                if not _nonzero(nv).any():
                    continue
                if _filtration_member(filtration, t_nil - (n - i - 1), nv):
                    continue
            found = dfs(path + [pair], nv, order)
            if found is not None or nodes > budget:
                return found
        return None

    order = list(cands)
    while nodes <= budget:
        found = dfs([], None, order)
        if found is not None:
            return found
        order = [cands[i] for i in rng.permutation(len(cands))]
    return None


def witness_class_bounds(ctx: AlgebraContext, dec: Q8Decomposition, seed: int = 0,
                         cap: int = DEFAULT_SERIES_CAP, budget: int = DEFAULT_SEARCH_BUDGET,
                         strong: SeriesReport | None = None,
                         strong_set: SeriesReport | None = None) -> UnitSubsetReport:
    """Lower and upper bounds for cl(U+(FG)).

    Upper bounds come from the two strong chains of (FG)^+ (cl < index for
    each); the lower bound is the longest witness tuple found, searched from
    the upper bound downwards.
    """
    S = ctx.symmetric_generators().plus_part
    strong = strong if strong is not None else strong_lie_series(ctx, S, cap)
    strong_set = strong_set if strong_set is not None else strong_lie_series(ctx, S, cap, first="set")
    sources = {}
    for rep in (strong, strong_set):
        if rep.vanished:
            sources[rep.kind] = max(rep.index, 2) - 1
    upper = min(sources.values()) if sources else None
    notes = ["lower bound 1: -1 is a symmetric unit different from 1"]
    report = UnitSubsetReport(1, upper, upper == 1, "witness", None, sources, notes)
    if upper is None:
        notes.append("no strong chain vanished within the cap; class unresolved")
        return report
    filtration = p_filtration(ctx, dec)
    rng = np.random.default_rng(seed)
    for n in range(upper, 1, -1):
        w = search_witness(ctx, dec, n, filtration, rng, budget)
        if w is not None:
            report.lower_bound = n
            report.witness = w
            break
    report.exact = report.lower_bound == upper
    if not report.exact:
        notes.append("bounds apart; class unresolved")
    return report


# --- sampling --------------------------------------------------------------------


def sample_symmetric_units(ctx: AlgebraContext, count: int, rng: np.random.Generator,
                           max_tries: int | None = None, normal_p=None) -> list[tuple[np.ndarray, np.ndarray]]:
    """Random symmetric units with their inverses (rejection sampling).

    ``normal_p``: a normal p-subgroup A in characteristic p. FG Delta(A) is
    then a nilpotent ideal, so a is a unit iff its image in F[G/A] is, and
    candidates are screened there in batches.
    """
    S = ctx.symmetric_generators().plus_part
    max_tries = max_tries or 50 * count
    p = ctx.field.characteristic
    screen = None
    if p and normal_p is not None and len(normal_p) > 1:
        qctx, coset_of = ctx.quotient_context(normal_p, induced=False)
        push = np.zeros((ctx.n, qctx.n), dtype=np.int64)
        push[np.arange(ctx.n), coset_of] = 1
        screen = (qctx, push)
    elif p and ctx.n <= 48:
        screen = (ctx, None)
    out = []
    tries = 0
    while len(out) < count and tries < max_tries:
        batch = np.array([ctx.random_combination(rng, S) for _ in range(64)])
        tries += len(batch)
        if screen is not None:
            sctx, push = screen
            images = batch if push is None else batch @ push % p
            batch = batch[_invertible_mod_p(images[:, sctx.right_idx.T], p)]
        for a in batch:
            if len(out) == count:
                break
            try:
                out.append((a, ctx.invert(a)))
            except NotUnit:
                continue
    return out


def sampled_commutator_containment(ctx: AlgebraContext, chain: SeriesReport, units, lengths=(2, 3),
                                   rng: np.random.Generator | None = None) -> dict[int, tuple[int, int]]:
    """For each n, (checked, contained): iterated commutators of n sampled units
    tested for membership in 1 + chain.term(n)."""
    rng = rng or np.random.default_rng(0)
    one = ctx.one()
    out = {}
    for n in lengths:
        term = chain.term(n)
        ok = 0
        for _ in range(len(units)):
            idx = rng.integers(0, len(units), size=n)
            comm, _ = iterated_unit_commutator(ctx, [units[i][0] for i in idx], [units[i][1] for i in idx])
            if term.contains(ctx.norm(comm - one)):
                ok += 1
        out[n] = (len(units), ok)
    return out
