"""Finite groups as dense multiplication tables, orientations and the
structural search for the Q8-type decomposition used by the symmetric-element
results."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_ORDER_CAP = 256


class GroupError(ValueError):
    pass


class OrderCapExceeded(GroupError):
    """A group construction would exceed the order cap."""


Subset = tuple  # sorted tuple of element indices


class FiniteGroup:
    """A finite group given by its Cayley table; element 0 is the identity."""

    def __init__(self, mul, labels=None, validate: bool = True):
        mul = np.asarray(mul, dtype=np.int64)
        n = mul.shape[0]
        if mul.shape != (n, n):
            raise GroupError("multiplication table must be square")
        self.order = n
        self.mul = mul
        self.mul.setflags(write=False)
        self.identity = 0
        self.labels = list(labels) if labels is not None else [f"g{i}" for i in range(n)]
        if len(self.labels) != n:
            raise GroupError("one label per element required")
        if validate:
            self._validate()
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(mul == 0)
        inv[rows] = cols
        self.inv = inv
        self.inv.setflags(write=False)
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def _validate(self):
        n, mul = self.order, self.mul
        if mul.min() < 0 or mul.max() >= n:
            raise GroupError("table entries out of range")
        ar = np.arange(n)
        if not (np.all(mul[0] == ar) and np.all(mul[:, 0] == ar)):
            raise GroupError("element 0 is not a two-sided identity")
        for row in mul:
            if len(np.unique(row)) != n:
                raise GroupError("table rows are not permutations (no inverses)")
        for a in range(n):
            # (a b) c == a (b c) for all b, c
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                raise GroupError(f"associativity fails for a={a}")

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def __len__(self):
        return self.order

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            return int(label)
        try:
            return self._index[label]
        except KeyError:
            raise GroupError(f"unknown element label {label!r}") from None

    def label(self, g: int) -> str:
        return self.labels[g]

    def m(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def prod(self, *elems: int) -> int:
        out = 0
        for e in elems:
            out = int(self.mul[out, e])
        return out

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        out, base = 0, g
        while k:
            if k & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            k >>= 1
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.mul[x, g])
            k += 1
        return k

    def commutator(self, a: int, b: int) -> int:
        """(a, b) = a^-1 b^-1 a b."""
        return self.prod(int(self.inv[a]), int(self.inv[b]), a, b)

    def commutes(self, a: int, b: int) -> bool:
        return self.mul[a, b] == self.mul[b, a]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def is_subgroup(self, subset) -> bool:
        s = set(subset)
        if 0 not in s:
            return False
        idx = np.fromiter(s, dtype=np.int64)
        closed = np.isin(self.mul[np.ix_(idx, idx)], idx).all()
        return bool(closed)

    def is_normal(self, subset) -> bool:
        if not self.is_subgroup(subset):
            return False
        s = np.fromiter(set(subset), dtype=np.int64)
        for g in range(self.order):
            conj = self.mul[self.mul[self.inv[g], s], g]
            if not np.isin(conj, s).all():
                return False
        return True


def _as_subset(elems) -> Subset:
    return tuple(sorted({int(e) for e in elems}))


def subgroup_generated(G: FiniteGroup, gens) -> Subset:
    """Closure of ``gens`` under multiplication (inverses come for free)."""
    gens = [G.index(g) for g in gens]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = int(G.mul[a, s])
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return _as_subset(seen)


def commutator_subgroup(G: FiniteGroup, X, Y) -> Subset:
    """Subgroup generated by all (x, y) with x in X, y in Y."""
    X = np.fromiter(X, dtype=np.int64)
    Y = np.fromiter(Y, dtype=np.int64)
    left = G.mul[G.inv[X][:, None], G.inv[Y][None, :]]
    right = G.mul[X[:, None], Y[None, :]]
    comms = np.unique(G.mul[left, right])
    return subgroup_generated(G, comms.tolist())


def derived_subgroup(G: FiniteGroup) -> Subset:
    return commutator_subgroup(G, range(G.order), range(G.order))


def is_cyclic(G: FiniteGroup, subset) -> bool:
    n = len(subset)
    return any(G.element_order(g) == n for g in subset)


@dataclass(frozen=True)
class SubgroupInfo:
    elements: Subset
    order: int
    cyclic: bool


def derived_subgroup_info(G: FiniteGroup) -> SubgroupInfo:
    d = derived_subgroup(G)
    return SubgroupInfo(d, len(d), is_cyclic(G, d))


def center(G: FiniteGroup) -> Subset:
    comm = np.all(G.mul == G.mul.T, axis=1)
    return _as_subset(np.flatnonzero(comm))


def centralizer(G: FiniteGroup, elems) -> Subset:
    elems = list(elems)
    return _as_subset(g for g in range(G.order) if all(G.commutes(g, e) for e in elems))


def conjugacy_classes(G: FiniteGroup) -> list[Subset]:
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for g in range(G.order):
        if seen[g]:
            continue
        cls = np.unique(G.mul[G.mul[G.inv, g], np.arange(G.order)])
        seen[cls] = True
        classes.append(_as_subset(cls))
    return classes


def power_subgroup(G: FiniteGroup, subset, k: int) -> Subset:
    """Subgroup generated by k-th powers of the elements of ``subset``."""
    return subgroup_generated(G, {G.power(g, k) for g in subset})


def lower_central_series(G: FiniteGroup, H=None, cap: int = 64) -> list[Subset]:
    """gamma_1 = H, gamma_{n+1} = (gamma_n, H); stops at {1} or when stable."""
    H = _as_subset(range(G.order) if H is None else H)
    series = [H]
    while len(series) < cap:
        nxt = commutator_subgroup(G, series[-1], H)
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt == (0,):
            break
    return series


def is_nilpotent(G: FiniteGroup) -> bool:
    return lower_central_series(G)[-1] == (0,)


@dataclass
class Quotient:
    group: FiniteGroup
    coset_of: np.ndarray  # element index of G -> coset index
    representatives: list[int]


def quotient_group(G: FiniteGroup, A) -> Quotient:
    """G/A together with the natural surjection."""
    A = _as_subset(A)
    if not G.is_subgroup(A):
        raise GroupError("A is not a subgroup")
    if not G.is_normal(A):
        raise GroupError("A is not normal")
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    Aarr = np.asarray(A)
    for g in range(G.order):
        if coset_of[g] < 0:
            coset_of[G.mul[g, Aarr]] = len(reps)
            reps.append(g)
    k = len(reps)
    table = np.empty((k, k), dtype=np.int64)
    r = np.asarray(reps)
    table[:, :] = coset_of[G.mul[r[:, None], r[None, :]]]
    labels = [G.labels[g] for g in reps]
    return Quotient(FiniteGroup(table, labels), coset_of, reps)


def induced_group(G: FiniteGroup, subset) -> tuple[FiniteGroup, list[int]]:
    """The subgroup ``subset`` as a standalone FiniteGroup (identity first)."""
    elems = _as_subset(subset)
    if not G.is_subgroup(elems):
        raise GroupError("not a subgroup")
    pos = {g: i for i, g in enumerate(elems)}
    table = [[pos[int(G.mul[a, b])] for b in elems] for a in elems]
    return FiniteGroup(table, [G.labels[g] for g in elems], validate=False), list(elems)


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            if d not in out:
                out.append(d)
            n //= d
        d += 1
    if n > 1 and n not in out:
        out.append(n)
    return out


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def sylow_subgroup(G: FiniteGroup, p: int) -> Subset:
    """Elements of p-power order; requires G nilpotent so this is a subgroup."""
    if not is_nilpotent(G):
        raise GroupError("group is not nilpotent; Sylow subset need not be a subgroup")
    S = _as_subset(g for g in range(G.order) if _is_p_power(G.element_order(g), p))
    if not G.is_subgroup(S):
        raise GroupError("p-power-order elements do not form a subgroup")
    return S


@dataclass
class Orientation:
    """A homomorphism G -> {+1, -1} with kernel N."""

    group: FiniteGroup
    sign: np.ndarray
    kernel: Subset

    @property
    def nontrivial(self) -> bool:
        return len(self.kernel) != self.group.order

    def __call__(self, g: int) -> int:
        return int(self.sign[g])


def make_orientation(G: FiniteGroup, kernel) -> Orientation:
    N = _as_subset(kernel)
    if not G.is_subgroup(N):
        raise GroupError("kernel is not a subgroup")
    if G.order % len(N) or G.order // len(N) not in (1, 2):
        raise GroupError("kernel must have index 1 or 2")
    sign = -np.ones(G.order, dtype=np.int64)
    sign[list(N)] = 1
    # homomorphism check on all pairs
    if not np.array_equal(sign[G.mul], np.outer(sign, sign)):
        raise GroupError("sign map is not a homomorphism")
    sign.setflags(write=False)
    return Orientation(G, sign, N)


def trivial_orientation(G: FiniteGroup) -> Orientation:
    return make_orientation(G, range(G.order))


def admissible_kernels(G: FiniteGroup) -> list[Subset]:
    """All subgroups of index 1 or 2 (each is the kernel of one orientation)."""
    out = [tuple(range(G.order))]
    if G.order % 2:
        return out
    # index-2 subgroups contain every square; G/<squares> is elementary abelian
    sq = power_subgroup(G, range(G.order), 2)
    Q = quotient_group(G, sq)
    A = Q.group
    basis: list[int] = []
    span_of = {0: 0}  # coset -> bitmask over basis
    for a in range(A.order):
        if a in span_of:
            continue
        bit = 1 << len(basis)
        basis.append(a)
        for elem, mask in list(span_of.items()):
            span_of[int(A.mul[elem, a])] = mask | bit
    kernels = []
    for phi in range(1, 1 << len(basis)):
        ker = _as_subset(g for g in range(G.order) if bin(span_of[int(Q.coset_of[g])] & phi).count("1") % 2 == 0)
        kernels.append(ker)
    return out + sorted(kernels)


# --- Q8-type decomposition -------------------------------------------------


class DecompositionError(GroupError):
    """No decomposition; ``condition`` names the first violated requirement."""

    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"{condition}: {detail}" if detail else condition)
        self.condition = condition
        self.detail = detail


@dataclass
class Q8Decomposition:
    """Witnesses for G = <Q8, g> x E x P with N = Q8 x E x P."""

    group: FiniteGroup
    x: int
    y: int
    g: int
    c: int
    e_part: Subset
    p_part: Subset
    q8e_part: Subset
    p: int
    noncentral_q8e: Subset = field(default=())

    @property
    def m(self) -> int:
        """Exponent of |P| = p^m."""
        return 0 if len(self.p_part) == 1 else round(math.log(len(self.p_part), self.p))


def _is_q8_pair(G: FiniteGroup, x: int, y: int) -> bool:
    x2 = G.power(x, 2)
    if x2 == 0 or G.power(x, 4) != 0:
        return False
    if G.power(y, 2) != x2:
        return False
    # x^y = y^-1 x y = x^-1
    if G.prod(int(G.inv[y]), x, y) != int(G.inv[x]):
        return False
    return len(subgroup_generated(G, [x, y])) == 8


def find_q8_pairs(G: FiniteGroup, within=None):
    pool = range(G.order) if within is None else sorted(within)
    fours = [a for a in pool if G.element_order(a) == 4]
    for x in fours:
        for y in fours:
            if y > x and _is_q8_pair(G, x, y):
                yield x, y


def _elementary_complement(G: FiniteGroup, omega: Subset, avoid: int) -> list[int] | None:
    """Greedy basis of an elementary abelian complement to <avoid> in ``omega``."""
    current = {0, avoid}
    basis = []
    for e in omega:
        if e in current:
            continue
        basis.append(e)
        current = set(subgroup_generated(G, [avoid] + basis))
    return basis if len(current) == len(omega) else None


def decompose_q8_structure(G: FiniteGroup, sigma: Orientation, p: int) -> Q8Decomposition:
    """Exhaustively search witnesses (x, y, g, E, P, c).

    ``p`` is the field characteristic (0 or an odd prime). Raises
    ``DecompositionError`` naming the first structural condition that fails.
    """
    if not sigma.nontrivial:
        raise DecompositionError("orientation trivial")
    N = sigma.kernel
    Nset = set(N)
    pairs = list(find_q8_pairs(G, N))
    if not pairs:
        if any(True for _ in find_q8_pairs(G)):
            raise DecompositionError("no Q8 inside the kernel N")
        raise DecompositionError("no Q8 subgroup")

    odd = _as_subset(a for a in N if G.element_order(a) % 2)
    if not G.is_subgroup(odd):
        raise DecompositionError("odd-order part of N is not a subgroup")
    if p == 0 and len(odd) > 1:
        raise DecompositionError("characteristic 0 requires N = Q8 x E", f"odd part has order {len(odd)}")
    if p and len(odd) > 1 and not _is_p_power(len(odd), p):
        raise DecompositionError("odd part of N is not a p-group", f"|odd part|={len(odd)}, p={p}")
    central = set(center(G))
    if not set(odd) <= central:
        raise DecompositionError("P is not a central direct factor")

    outside = [a for a in range(G.order) if a not in Nset]
    last_failure = DecompositionError("no admissible g", "no g outside N commutes with x, y and squares to x^2")
    for x, y in pairs:
        c = G.power(x, 2)
        gs = [a for a in outside if G.commutes(a, x) and G.commutes(a, y) and G.power(a, 2) == c]
        if not gs:
            continue
        g = gs[0]
        q8 = subgroup_generated(G, [x, y])
        omega = _as_subset(a for a in central if a in Nset and G.power(a, 2) == 0)
        E = _elementary_complement(G, omega, c)
        if E is None:
            last_failure = DecompositionError("N not of shape Q8 x E x P", "no complement to <c>")
            continue
        e_part = subgroup_generated(G, E)
        q8e = subgroup_generated(G, list(q8) + list(e_part))
        if len(q8) * len(e_part) != len(q8e) or len(q8e) * len(odd) != len(N):
            last_failure = DecompositionError("N not of shape Q8 x E x P", f"|Q8||E||P| != |N|={len(N)}")
            continue
        whole = subgroup_generated(G, list(q8e) + list(odd) + [g])
        if len(whole) != G.order or 2 * len(N) != G.order:
            last_failure = DecompositionError("G is not <Q8, g> x E x P")
            continue
        zq8e = set(center(G)) & set(q8e)
        noncentral = _as_subset(a for a in q8e if a not in zq8e)
        return Q8Decomposition(G, x, y, g, c, e_part, odd, q8e, p, noncentral)
    raise last_failure
