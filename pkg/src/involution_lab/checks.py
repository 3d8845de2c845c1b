"""Statement-level checks on an Analysis. Each returns a list of Check records;
suites are just ordered collections of these functions."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraContext, AlgebraElement, NotUnit
from .analysis import Analysis
from .groups import (
    admissible_kernels,
    center,
    derived_subgroup,
    induced_group,
    is_nilpotent,
    make_orientation,
    power_subgroup,
    subgroup_generated,
)
from .lie import (
    STABILIZED,
    VANISHED,
    apply_sym_action,
    augmentation_series,
    dimension_subgroups,
    f_product,
    is_powerful,
    lower_lie_series,
    m_script_space,
    sym_action,
)
from .linalg import Subspace, SubspaceBuilder, _nonzero, nullspace
from .units import (
    CapExceeded,
    enumerate_symmetric_units,
    sample_symmetric_units,
    sampled_commutator_containment,
    subset_class_exhaustive,
)

PASS, FAIL, INCONCLUSIVE, SKIPPED = "pass", "fail", "inconclusive", "skipped"

FROM_ORACLE = "oracle fixture"
FROM_THEOREM = "theorem"
FROM_LEMMA = "lemma"
FROM_IDENTITY = "identity"
FROM_DEFINITION = "definition"

# the exhaustive class walks all of gamma_n x U+, quadratic in the unit count
EXHAUSTIVE_UNIT_LIMIT = 256
# exact rational inverses are slow; fewer sampled units over Q
CHAR0_SAMPLES = 100


@dataclass
class Check:
    name: str
    statement: str
    expected: object
    computed: object
    status: str
    source: str
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == FAIL


def check(name, statement, expected, computed, ok, source, detail="") -> Check:
    if ok is None:
        status = INCONCLUSIVE
    else:
        status = PASS if ok else FAIL
    return Check(name, statement, expected, computed, status, source, detail)


def skipped(name, statement, reason) -> Check:
    return Check(name, statement, None, None, SKIPPED, FROM_DEFINITION, reason)


def _fixture(fixtures: dict, an: Analysis, key: str):
    entry = fixtures.get(f"{an.name}/{key}")
    return None if entry is None else entry["value"]


def _eq(ctx: AlgebraContext, a, b) -> bool:
    return bool(np.array_equal(ctx.norm(a), ctx.norm(b)))


# --- involution axioms and spans -------------------------------------------------


def involution_axioms(an: Analysis, samples: int = 200) -> list[Check]:
    ctx = an.ctx
    G, sign = an.group, an.orientation.sign
    rng = np.random.default_rng(an.seed)
    out = []
    prod_sign = sign[G.mul]
    ok = bool(np.all(prod_sign == sign[:, None] * sign[None, :]))
    kernel = {g for g in range(G.order) if sign[g] == 1}
    ok = ok and kernel == set(an.orientation.kernel) and G.order % len(kernel) == 0 \
        and G.order // len(kernel) in (1, 2)
    out.append(check("orientation-homomorphism", "sigma(gh) = sigma(g) sigma(h), kernel of index at most 2",
                     True, ok, ok, FROM_DEFINITION))
    twice = antimult = linear = 0
    for _ in range(samples):
        a, b = ctx.random_vector(rng), ctx.random_vector(rng)
        twice += _eq(ctx, ctx.involute(ctx.involute(a)), a)
        antimult += _eq(ctx, ctx.involute(ctx.mul(a, b)), ctx.mul(ctx.involute(b), ctx.involute(a)))
        two = ctx.field.scalar(2)
        linear += _eq(ctx, ctx.involute(ctx.norm(a + two * b)),
                      ctx.norm(ctx.involute(a) + two * ctx.involute(b)))
    out.append(check("involution-order-two", "(a*)* = a on random a", samples, twice, twice == samples,
                     FROM_DEFINITION))
    out.append(check("involution-antimultiplicative", "(ab)* = b* a* on random pairs", samples, antimult,
                     antimult == samples, FROM_DEFINITION))
    out.append(check("involution-linear", "(a + 2b)* = a* + 2 b*", samples, linear, linear == samples,
                     FROM_DEFINITION))
    gens = ctx.symmetric_generators()
    fixed = all(_eq(ctx, ctx.involute(s), s) for s in gens.plus_part)
    negated = all(_eq(ctx, ctx.involute(s), -s) for s in gens.minus_part)
    out.append(check("generators-fixed-and-negated", "elements of S are fixed and elements of L negated by *",
                     True, fixed and negated, fixed and negated, FROM_DEFINITION))
    plus, minus = gens.plus_span(), gens.minus_span()
    total = (plus + minus).dim
    out.append(check("symmetric-skew-direct-sum", "FG = span(S) + span(L), a direct sum",
                     ctx.n, (plus.dim, minus.dim, total), plus.dim + minus.dim == ctx.n and total == ctx.n,
                     FROM_DEFINITION, f"dims {plus.dim} + {minus.dim}, sum {total}"))
    return out


def span_equalities(an: Analysis, fixtures: dict | None = None) -> list[Check]:
    ctx = an.ctx
    J = ctx.involution_matrix()
    eye = ctx.field.eye(ctx.n)
    fixed = nullspace(ctx.field, ctx.norm(J - eye))
    negated = nullspace(ctx.field, ctx.norm(J + eye))
    gens = ctx.symmetric_generators()
    plus, minus = gens.plus_span(), gens.minus_span()
    out = [
        check("symmetric-span-is-fixed-space", "span(S) equals the +1 eigenspace of the involution matrix",
              fixed.dim, plus.dim, plus == fixed, FROM_DEFINITION),
        check("skew-span-is-negated-space", "span(L) equals the -1 eigenspace of the involution matrix",
              negated.dim, minus.dim, minus == negated, FROM_DEFINITION),
    ]
    expected = _fixture(fixtures or {}, an, "sym_dim")
    if expected is not None:
        out.append(check("symmetric-dimension", "dimension of the symmetric elements", expected, plus.dim,
                         expected == plus.dim, FROM_ORACLE))
    return out


# --- strong Lie nilpotency of Q8-containing groups ------------------------------------


def _q8_hypotheses(an: Analysis) -> str | None:
    from .groups import find_q8_pairs
    if not an.orientation.nontrivial:
        return "orientation is trivial"
    if next(iter(find_q8_pairs(an.group)), None) is None:
        return "G contains no Q8"
    return None


def strong_nilpotence(an: Analysis, fixtures: dict | None = None) -> list[Check]:
    """Strong Lie nilpotence of (FG)+ for groups containing Q8, both directions."""
    out = []
    reason = _q8_hypotheses(an)
    if reason:
        return [skipped("strong-nilpotence-criterion", "strong Lie nilpotence criterion for Q8-containing groups",
                        reason)]
    dec = an.decomposition
    holds = dec is not None
    strong = an.strong
    if strong.verdict not in (VANISHED, STABILIZED):
        out.append(check("strong-nilpotence-criterion", "(FG)+ strongly Lie nilpotent iff G = <Q8,g> x E x P",
                         holds, None, None, FROM_THEOREM, "strong chain reached the cap"))
    else:
        out.append(check("strong-nilpotence-criterion", "(FG)+ strongly Lie nilpotent iff G = <Q8,g> x E x P",
                         holds, strong.vanished, strong.vanished == holds, FROM_THEOREM,
                         "structure holds" if holds else f"structure fails: {an.decomposition_error}"))
    lower = an.lower
    expected_verdict = VANISHED if holds else STABILIZED
    ok = None if lower.verdict not in (VANISHED, STABILIZED) else lower.verdict == expected_verdict
    out.append(check("lower-series-verdict", "lower Lie series of (FG)+ vanishes iff the structure holds",
                     expected_verdict, lower.verdict, ok, FROM_THEOREM,
                     f"dims {lower.dims}" + (f", containment witness {lower.witness}" if lower.witness else "")))
    if not holds or not strong.vanished:
        return out
    order_p = len(dec.p_part)
    tL = strong.index
    out.append(check("strong-index-proof-bound", "strong chain of (FG)+ vanishes by step 2|P|",
                     f"<= {2 * order_p}", tL, tL <= 2 * order_p, FROM_THEOREM))
    expected = _fixture(fixtures or {}, an, "tL")
    if expected is not None:
        out.append(check("strong-index-oracle", "strong Lie index of (FG)+, chain started at FG", expected, tL,
                         expected == tL, FROM_ORACLE))
    if order_p > 1 and an.p:
        tn = an.t_nil
        out.append(check("strong-index-at-most-tnil", "strong Lie index of (FG)+ at most t_nil(P)",
                         f"<= {tn}", tL, tL <= tn, FROM_THEOREM,
                         "chain started at FG; see strong-index-set-at-most-tnil"))
        ts = an.strong_set.index if an.strong_set.vanished else None
        out.append(check("strong-index-at-most-tnil-plus-one", "strong Lie index of (FG)+ at most t_nil(P) + 1",
                         f"<= {tn + 1}", tL, tL <= tn + 1, FROM_LEMMA))
        out.append(check("strong-index-set-at-most-tnil", "strong index with chain started at (FG)+ at most t_nil(P)",
                         f"<= {tn}", ts, ts is not None and ts <= tn, FROM_LEMMA))
    bounds = an.unit_bounds
    out.append(check("symmetric-units-nilpotent", "U+(FG) is nilpotent (finite class bound)",
                     "finite", bounds.upper_bound, bounds.upper_bound is not None, FROM_THEOREM))
    out.extend(chain_reduction(an))
    return out


def chain_reduction(an: Analysis) -> list[Check]:
    """The inductive step for |P| = p^m: a central z of order p in P gives
    S^(2p^(m-1)) in (z - 1)FG, then S^(i+j) in (z - 1)S^(j) and S^(2p^m) = 0."""
    dec = an.decomposition
    if dec is None or dec.m == 0 or not an.p:
        return [skipped("chain-reduction", "strong chain reduction through a central element of order p",
                        "needs a nontrivial P")]
    ctx, G, p, m = an.ctx, an.group, an.p, dec.m
    z = next(h for h in dec.p_part if h != 0 and G.element_order(h) == p)
    zm1 = ctx.norm(ctx.unit_vector(z) - ctx.one())
    strong = an.strong
    i = 2 * p ** (m - 1)
    zfg = ctx.ideal_generated(zm1[None, :])
    first = strong.term(i).issubspace(zfg) if i <= len(strong.terms) or strong.vanished else None
    out = [check("chain-reduction-first-step", f"S^({i}) lies in (z - 1)FG", True, first, first, FROM_THEOREM,
                 f"z = {G.labels[z]}")]
    last = len(strong.terms) if not strong.vanished else strong.index
    bad = []
    for j in range(1, last + 1):
        big = strong.term(i + j)
        small = strong.term(j)
        shifted = ctx.span(ctx.left_mul_many(zm1, small.basis)) if small.dim else small
        if not big.issubspace(shifted):
            bad.append(j)
    out.append(check("chain-shift-lemma", f"S^({i}+j) in (z - 1) S^(j) for j = 1..{last}", [], bad, not bad,
                     FROM_LEMMA))
    top = strong.term(2 * p ** m)
    out.append(check("chain-vanishes-at-proof-bound", f"S^({2 * p ** m}) = 0", 0, top.dim, top.dim == 0,
                     FROM_THEOREM))
    return out


# --- indices against the P-filtration --------------------------------------------


def index_bounds(an: Analysis, fixtures: dict | None = None) -> list[Check]:
    """Chain 1 + m(p-1) <= t <= tL <= t_nil, the powerful equality and class bounds."""
    dec = an.decomposition
    if dec is None:
        return [skipped("index-bounds", "index bounds for <Q8,g> x E x P", an.decomposition_error)]
    if dec.m == 0 or not an.p:
        return [skipped("index-bounds", "index bounds for <Q8,g> x E x P", "P is trivial")]
    out = []
    lower, strong = an.lower, an.strong
    if not lower.vanished or not strong.vanished:
        return [check("index-bounds", "series vanish", True, (lower.verdict, strong.verdict), None, FROM_THEOREM)]
    t, tL, tn, m, p = lower.index, strong.index, an.t_nil, dec.m, an.p
    expected = _fixture(fixtures or {}, an, "t")
    if expected is not None:
        out.append(check("lie-index-oracle", "Lie nilpotency index t((FG)+)", expected, t, expected == t,
                         FROM_ORACLE))
    expected_tn = _fixture(fixtures or {}, an, "t_nil")
    if expected_tn is not None:
        out.append(check("tnil-oracle", "nilpotency index of the augmentation ideal of FP", expected_tn, tn,
                         expected_tn == tn, FROM_ORACLE))
    out.append(check("lie-index-lower-bound", "1 + m(p - 1) <= t", f">= {1 + m * (p - 1)}", t,
                     1 + m * (p - 1) <= t, FROM_THEOREM))
    out.append(check("lie-index-at-most-strong", "t <= tL", f"<= {tL}", t, t <= tL, FROM_DEFINITION))
    out.append(check("strong-index-at-most-tnil", "tL <= t_nil(P)", f"<= {tn}", tL, tL <= tn, FROM_THEOREM,
                     "chain started at FG"))
    out.append(check("lie-index-at-most-tnil", "t <= t_nil(P)", f"<= {tn}", t, t <= tn, FROM_LEMMA))
    if is_powerful(an.p_group):
        out.append(check("powerful-index-equality", "P powerful implies t = t_nil(P)", tn, t, t == tn,
                         FROM_THEOREM))
    out.extend(class_bounds(an))
    return out


def class_bounds(an: Analysis) -> list[Check]:
    lower, strong = an.lower, an.strong
    t, tn = lower.index, an.t_nil
    b = an.unit_bounds
    out = [check("class-at-most-tnil-minus-one", "cl(U+) <= t_nil(P) - 1", f"<= {tn - 1}", b.upper_bound,
                 b.upper_bound is not None and b.upper_bound <= tn - 1, FROM_THEOREM,
                 f"upper bounds {b.upper_sources}")]
    if t == tn:
        out.append(check("class-plus-one-is-index", "t = t_nil implies cl(U+) + 1 = t", t - 1,
                         b.value, b.exact and b.value + 1 == t if b.exact else None, FROM_THEOREM,
                         f"witness lower bound {b.lower_bound}, upper bound {b.upper_bound}"))
        tL = strong.index
        ok = b.lower_bound == tL - 1
        out.append(check("class-witness-meets-strong-bound", "witness lower bound meets tL - 1", tL - 1,
                         b.lower_bound, ok, FROM_THEOREM, "tL from the chain started at FG"))
    if b.witness is not None:
        out.append(check("witness-congruence", "(u_1..u_n) - 1 - [x_1..x_n] in FG Delta(P)^(n+1)", True,
                         b.witness.congruence, b.witness.congruence, FROM_THEOREM,
                         f"length {b.witness.length}"))
        out.extend(witness_units_in_filtration(an, b.witness))
    return out


def witness_units_in_filtration(an: Analysis, w) -> list[Check]:
    ctx = an.ctx
    d1 = an.filtration_term(1)
    ok = True
    for u in w.u_list:
        ok &= _eq(ctx, ctx.involute(u), u)
        ok &= d1.contains(ctx.norm(u - ctx.one()))
        ok &= ctx.is_unit(u)
    return [check("witness-units", "witness units are symmetric, invertible and in 1 + FG Delta(P)", True, ok, ok,
                  FROM_THEOREM)]


# --- cyclic derived subgroup ------------------------------------------------------


def derived_index(an: Analysis, fixtures: dict | None = None) -> list[Check]:
    """t((FG)+) = |G'| + 1 iff G' is cyclic, for Lie nilpotent FG."""
    out = []
    G = an.group
    if G.order % 2:
        kernels = admissible_kernels(G)
        ok = len(kernels) == 1 and len(kernels[0]) == G.order
        out.append(check("odd-order-orientation-trivial", "odd order groups admit only the trivial orientation",
                         1, len(kernels), ok, FROM_LEMMA))
    whole = an.whole_lower
    if whole.verdict != VANISHED:
        out.append(skipped("derived-index", "index of (FG)+ against |G'| + 1", "FG is not Lie nilpotent"))
        return out
    d = an.derived_order
    lower, ws = an.lower, an.whole_strong
    if not lower.vanished or not ws.vanished:
        out.append(check("derived-index", "series vanish", True, None, None, FROM_THEOREM))
        return out
    t, tLG = lower.index, ws.index
    expected_d = _fixture(fixtures or {}, an, "derived_order")
    if expected_d is not None:
        out.append(check("derived-order-oracle", "|G'|", expected_d, d, expected_d == d, FROM_ORACLE))
    expected_w = _fixture(fixtures or {}, an, "tL_whole")
    if expected_w is not None:
        out.append(check("whole-strong-index-oracle", "strong Lie index of FG", expected_w, tLG, expected_w == tLG,
                         FROM_ORACLE))
    out.append(check("whole-strong-index-bound", "tL(FG) <= |G'| + 1", f"<= {d + 1}", tLG, tLG <= d + 1,
                     FROM_THEOREM))
    out.append(check("lie-index-at-most-whole-strong", "t((FG)+) <= tL(FG)", f"<= {tLG}", t, t <= tLG,
                     FROM_DEFINITION))
    expected = _fixture(fixtures or {}, an, "t")
    if expected is not None:
        out.append(check("lie-index-oracle", "Lie nilpotency index t((FG)+)", expected, t, expected == t,
                         FROM_ORACLE))
    if an.derived_cyclic:
        out.append(check("cyclic-derived-index", "G' cyclic implies t((FG)+) = |G'| + 1", d + 1, t, t == d + 1,
                         FROM_THEOREM))
    else:
        out.append(check("noncyclic-derived-index", "G' not cyclic implies t((FG)+) <= tL(FG) < |G'| + 1",
                         f"< {d + 1}", (t, tLG), t <= tLG < d + 1, FROM_THEOREM))
    return out


# --- lemmas --------------------------------------------------------------------------


def power_congruence(an: Analysis) -> list[Check]:
    """g^m - 1 = m(g - 1) modulo Delta(G)^2 for all g and m in [-e, 2e]."""
    ctx, G = an.ctx, an.group
    D2 = ctx.augmentation_power(range(G.order), 2)
    one = ctx.one()
    exponent = math.lcm(*[G.element_order(g) for g in range(G.order)])
    bad = []
    for g in range(G.order):
        gm1 = ctx.norm(ctx.unit_vector(g) - one)
        for m in range(-exponent, 2 * exponent + 1):
            lhs = ctx.norm(ctx.unit_vector(G.power(g, m % G.element_order(g))) - one)
            diff = ctx.norm(lhs - ctx.field.scalar(m) * gm1)
            if not D2.contains(diff):
                bad.append((G.labels[g], m))
    return [check("power-congruence", "g^m - 1 = m(g - 1) mod Delta(G)^2 for all g, m", [], bad[:5], not bad,
                  FROM_IDENTITY, f"{G.order} elements, m in [{-exponent}, {2 * exponent}]")]


def filtration_containments(an: Analysis) -> list[Check]:
    dec = an.decomposition
    if dec is None:
        return [skipped("filtration", "containments in FG Delta(P)^n", an.decomposition_error)]
    ctx = an.ctx
    tn = an.t_nil if an.p else 1
    out = []
    zeta = an.ctx.algebra_center()
    sym_ok = (an.filtration_term(1) + zeta).contains_all(an.sym)
    out.append(check("symmetric-in-filtration-plus-center", "(FG)+ lies in FG Delta(P) + center(FG)", True, sym_ok,
                     sym_ok, FROM_LEMMA))
    strong, strong_set, lower = an.strong, an.strong_set, an.lower
    for n in range(2, max(tn, 2) + 1):
        ok = strong.term(n).issubspace(an.filtration_term(n))
        out.append(check(f"strong-chain-in-filtration-{n}", f"S^({n}) lies in FG Delta(P)^{n} (chain from FG)",
                         True, ok, ok, FROM_LEMMA, f"dim S^({n}) = {strong.term(n).dim}, "
                         f"dim FG Delta(P)^{n} = {an.filtration_term(n).dim}"))
    shifted, set_ok, lower_ok = [], [], []
    for n in range(2, max(tn, 2) + 2):
        if not strong.term(n).issubspace(an.filtration_term(n - 1)):
            shifted.append(n)
        if not strong_set.term(n).issubspace(an.filtration_term(n)):
            set_ok.append(n)
        if not lower.term(n).issubspace(an.filtration_term(n)):
            lower_ok.append(n)
    out.append(check("strong-chain-in-shifted-filtration", "S^(n) lies in FG Delta(P)^(n-1) (chain from FG)",
                     [], shifted, not shifted, FROM_LEMMA))
    out.append(check("set-chain-in-filtration", "S^(n) lies in FG Delta(P)^n (chain from (FG)+)", [], set_ok,
                     not set_ok, FROM_LEMMA))
    out.append(check("lower-series-in-filtration", "gamma^n((FG)+) lies in FG Delta(P)^n", [], lower_ok,
                     not lower_ok, FROM_LEMMA))
    return out


def _noncentral(an: Analysis):
    return list(an.decomposition.noncentral_q8e)


def _times_one_minus_c(ctx: AlgebraContext, W: Subspace, c: int) -> Subspace:
    if W.dim == 0:
        return W
    return ctx.span(ctx.right_mul_many(W.basis, ctx.norm(ctx.one() - ctx.unit_vector(c))))


def sym_action_membership(an: Analysis, degrees=(2, 3), max_tuples: int = 5000) -> list[Check]:
    """x_{n,n} applied to each M_n generator lies in gamma^n((FG)+)(1 - c)."""
    dec = an.decomposition
    if dec is None or dec.m == 0:
        return [skipped("sym-action-membership", "x_{n,n} M_n in gamma^n (1 - c)", "needs a nontrivial P")]
    ctx = an.ctx
    out = []
    for n in degrees:
        x = sym_action(n)
        target = _times_one_minus_c(ctx, an.lower.term(n), dec.c)
        bad, count = [], 0
        for hs in itertools.islice(itertools.product(dec.p_part, repeat=n), max_tuples):
            for a in _noncentral(an):
                count += 1
                v = apply_sym_action(ctx, x, list(hs), a, dec.c)
                if not target.contains(v):
                    bad.append(([an.group.labels[h] for h in hs], an.group.labels[a]))
        out.append(check(f"sym-action-membership-{n}", f"x_{{{n},{n}}} M_{n} lies in gamma^{n}((FG)+)(1 - c)",
                         [], bad[:3], not bad, FROM_LEMMA, f"{count} generators"))
    return out


def sym_action_congruence(an: Analysis, degrees=(2, 3), max_tuples: int = 5000) -> list[Check]:
    """x_{n,n} f (1-c) a against K (h_1 - 1)...(h_n - 1)(1-c) a mod FG Delta(P)^(n+1).

    Checked with K = 2^(2n) and with K = 2^(2n-1); x_{n,n} has 2^(n-1)
    terms, each congruent to f, and f is congruent to 2^n (h_1-1)...(h_n-1).
    """
    dec = an.decomposition
    if dec is None or dec.m == 0 or not an.p:
        return [skipped("sym-action-congruence", "x_{n,n} congruence", "needs a nontrivial P")]
    if not is_powerful(an.p_group):
        return [skipped("sym-action-congruence", "x_{n,n} congruence", "P is not powerful")]
    ctx = an.ctx
    one_c = ctx.norm(ctx.one() - ctx.unit_vector(dec.c))
    out = []
    for n in degrees:
        x = sym_action(n)
        mod = an.filtration_term(n + 1)
        bad = {2 * n: [], 2 * n - 1: []}
        count = 0
        for hs in itertools.islice(itertools.product(dec.p_part, repeat=n), max_tuples):
            prod = ctx.one()
            for h in hs:
                prod = ctx.mul(prod, ctx.norm(ctx.unit_vector(h) - ctx.one()))
            for a in _noncentral(an):
                count += 1
                lhs = apply_sym_action(ctx, x, list(hs), a, dec.c)
                base = ctx.mul(ctx.mul(prod, one_c), ctx.unit_vector(a))
                for e in bad:
                    diff = ctx.norm(lhs - ctx.field.scalar(2 ** e) * base)
                    if not mod.contains(diff):
                        bad[e].append([an.group.labels[h] for h in hs] + [an.group.labels[a]])
        out.append(check(f"sym-action-congruence-{n}",
                         f"x_{{{n},{n}}} f (1-c)a = 2^{2 * n} (h_1-1)...(h_{n}-1)(1-c)a mod FG Delta(P)^{n + 1}",
                         [], bad[2 * n][:3], not bad[2 * n], FROM_THEOREM,
                         f"{count} generators; x_{{{n},{n}}} has {len(x)} terms"))
        out.append(check(f"sym-action-congruence-corrected-{n}",
                         f"x_{{{n},{n}}} f (1-c)a = 2^{2 * n - 1} (h_1-1)...(h_{n}-1)(1-c)a mod FG Delta(P)^{n + 1}",
                         [], bad[2 * n - 1][:3], not bad[2 * n - 1], FROM_LEMMA, f"{count} generators"))
    return out


def norm_element_depth(an: Analysis) -> list[Check]:
    """hat(P)(1 - c)a is nonzero and lies in gamma^{m(p-1)}((FG)+) for some noncentral a."""
    dec = an.decomposition
    if dec is None or dec.m == 0 or not an.p:
        return [skipped("norm-element-depth", "hat(P)(1-c)a depth", "needs a nontrivial P")]
    ctx = an.ctx
    k = dec.m * (an.p - 1)
    term = an.lower.term(k)
    hatP = ctx.hat(dec.p_part)
    one_c = ctx.norm(ctx.one() - ctx.unit_vector(dec.c))
    good = []
    for a in _noncentral(an):
        v = ctx.mul(ctx.mul(hatP, one_c), ctx.unit_vector(a))
        if _nonzero(v).any() and term.contains(v):
            good.append(an.group.labels[a])
    return [check("norm-element-depth", f"0 != hat(P)(1-c)a in gamma^{k}((FG)+) for some a", "nonempty", good,
                  bool(good), FROM_LEMMA, f"{len(good)} of {len(_noncentral(an))} noncentral a")]


def powerful_commutation(an: Analysis) -> list[Check]:
    """(h_i-1)(h_j-1) = (h_j-1)(h_i-1) mod Delta(P)^(k_i+k_j+1) and D_n = P^(p^i)."""
    if an.p == 0 or len(an.p_part) == 1:
        return [skipped("powerful-commutation", "powerful group congruences", "needs a nontrivial p-group")]
    P, p = an.p_group, an.p
    if not is_powerful(P):
        return [skipped("powerful-commutation", "powerful group congruences", "P is not powerful")]
    pctx = AlgebraContext(P, ctx_field(an))
    powers = augmentation_series(P, pctx.field).terms
    one = pctx.one()
    diffs = [pctx.norm(pctx.unit_vector(h) - one) for h in range(P.order)]

    def depth(v):
        k = 0
        while k < len(powers) and powers[k].contains(v):
            k += 1
        return k

    def member(k, v):
        return not _nonzero(v).any() if k > len(powers) else powers[k - 1].contains(v)

    depths = [depth(d) for d in diffs]
    bad = []
    for i in range(1, P.order):
        for j in range(1, P.order):
            lhs = pctx.norm(pctx.mul(diffs[i], diffs[j]) - pctx.mul(diffs[j], diffs[i]))
            if not member(depths[i] + depths[j] + 1, lhs):
                bad.append((P.labels[i], P.labels[j]))
    out = [check("powerful-commutation", "(h_i-1)(h_j-1) = (h_j-1)(h_i-1) mod Delta(P)^(k_i+k_j+1)", [], bad[:3],
                 not bad, FROM_LEMMA, f"{(P.order - 1) ** 2} pairs")]
    chain = dimension_subgroups(P, pctx.field)
    whole = tuple(range(P.order))
    mism = []
    for n in range(1, len(chain) + 2):
        i = 0
        while p ** i < n:
            i += 1
        expected = power_subgroup(P, whole, p ** i)
        if tuple(sorted(chain[n])) != tuple(sorted(expected)):
            mism.append(n)
    out.append(check("dimension-subgroups-powerful", "D_n = P^(p^i) when p^(i-1) < n <= p^i", [], mism, not mism,
                     FROM_LEMMA, f"orders {[len(chain[n]) for n in range(1, len(chain) + 1)]}"))
    return out


def ctx_field(an: Analysis):
    return an.ctx.field


def bracket_identities(an: Analysis) -> list[Check]:
    """Element identities for brackets of the generators of (FG)+ (abelian P)."""
    dec = an.decomposition
    if dec is None:
        return [skipped("bracket-identities", "bracket identities", an.decomposition_error)]
    if not induced_group(an.group, dec.p_part)[0].is_abelian():
        return [skipped("bracket-identities", "bracket identities", "P is not abelian")]
    ctx, G = an.ctx, an.group

    def el(g):
        return ctx.element(ctx.unit_vector(g))

    def inv(g):
        return int(G.inv[g])

    one = ctx.element(ctx.one())
    c, g = el(dec.c), el(dec.g)
    one_c = one - c
    pairs = [(a, b) for a in _noncentral(an) for b in _noncentral(an) if not G.commutes(a, b)]
    hs = list(dec.p_part)
    alphas = [el(h) for h in hs]
    failures = {k: 0 for k in ("21", "22", "28", "29", "30", "31")}
    count = {k: 0 for k in failures}

    def record(key, exprs):
        count[key] += 1
        if any(e != exprs[0] for e in exprs[1:]):
            failures[key] += 1

    for a, b in pairs:
        A, B, AB = el(a), el(b), el(a) * el(b)
        a2, b2 = el(G.power(a, 2)), el(G.power(b, 2))
        ab_br = A.bracket(B)
        for h1 in hs:
            H1, H1i = el(h1), el(inv(h1))
            for h2 in hs:
                H2, H2i = el(h2), el(inv(h2))
                f12 = (H2 - H2i) * (H1 - H1i)
                record("21", [
                    (A * (H1 + a2 * H1i)).bracket(B * (H2 + b2 * H2i)),
                    (H2 + b2 * H2i) * (H1 + a2 * H1i) * ab_br,
                    f12 * one_c * AB,
                ])
                record("28", [
                    (A * (H1 + a2 * H1i)).bracket(B * g * (H2 - H2i)),
                    (H2 - H2i) * (H1 + a2 * H1i) * A.bracket(B * g),
                    g * (H2 - H2i) * (H1 + c * H1i) * one_c * AB,
                    g * f12 * one_c * AB,
                ])
                record("29", [
                    (A * g * (H1 - H1i)).bracket(B * g * (H2 - H2i)),
                    f12 * (A * g).bracket(B * g),
                    f12 * g * g * one_c * AB,
                    -(f12 * one_c * AB),
                ])
            H, Hi = H1, H1i
            for alpha in alphas:
                record("22", [
                    (alpha * one_c * A).bracket(B * (H + b2 * Hi)),
                    alpha * one_c * (H + b2 * Hi) * ab_br,
                    alpha * (H - Hi) * one_c * one_c * AB,
                    2 * (alpha * (H - Hi) * one_c * AB),
                ])
                record("30", [
                    (alpha * one_c * A).bracket(g * B * (H - Hi)),
                    alpha * (H - Hi) * one_c * A.bracket(g * B),
                    g * alpha * (H - Hi) * one_c * ab_br,
                    g * alpha * (H - Hi) * one_c * one_c * AB,
                    2 * (g * alpha * (H - Hi) * one_c * AB),
                ])
                record("31", [
                    (g * alpha * one_c * A).bracket(g * B * (H - Hi)),
                    g * g * alpha * (H - Hi) * one_c * ab_br,
                    c * alpha * (H - Hi) * one_c * ab_br,
                    c * alpha * (H - Hi) * one_c * one_c * AB,
                    -2 * (alpha * (H - Hi) * one_c * AB),
                ])
    names = {
        "21": "[a(h1 + a^2 h1^-1), b(h2 + b^2 h2^-1)] = (h2 - h2^-1)(h1 - h1^-1)(1-c)ab",
        "22": "[alpha(1-c)a, b(h + b^2 h^-1)] = 2 alpha (h - h^-1)(1-c)ab",
        "28": "[a(h1 + a^2 h1^-1), bg(h2 - h2^-1)] = g(h2 - h2^-1)(h1 - h1^-1)(1-c)ab",
        "29": "[ag(h1 - h1^-1), bg(h2 - h2^-1)] = -(h2 - h2^-1)(h1 - h1^-1)(1-c)ab",
        "30": "[alpha(1-c)a, gb(h - h^-1)] = 2g alpha (h - h^-1)(1-c)ab",
        "31": "[g alpha(1-c)a, gb(h - h^-1)] = -2 alpha (h - h^-1)(1-c)ab",
    }
    return [check(f"bracket-identity-{k}", names[k], 0, failures[k], failures[k] == 0, FROM_IDENTITY,
                  f"{count[k]} tuples, every intermediate expression compared") for k in names]


def lower_series_spanning_sets(an: Analysis, degrees=(2, 3)) -> list[Check]:
    dec = an.decomposition
    if dec is None or dec.m == 0:
        return [skipped("lower-series-spanning-set", "gamma^k = script M_k", "needs a nontrivial P")]
    if not induced_group(an.group, dec.p_part)[0].is_abelian():
        return [skipped("lower-series-spanning-set", "gamma^k = script M_k", "P is not abelian")]
    out = []
    for k in degrees:
        M = m_script_space(an.ctx, dec, k)
        term = an.lower.term(k)
        out.append(check(f"lower-series-spanning-set-{k}", f"gamma^{k}((FG)+) = span of script M_{k}", term.dim,
                         M.dim, term == M, FROM_THEOREM))
    return out


def monotonicity(an: Analysis) -> list[Check]:
    """t((FH)+) <= t((FG)+) for subgroups H and t((F(G/A))+) <= t((FG)+) for A in N."""
    dec = an.decomposition
    if dec is None or not an.lower.vanished:
        return [skipped("monotonicity", "index monotone under subgroups and quotients",
                        "needs a Lie nilpotent decomposable context")]
    G, sign, t = an.group, an.orientation.sign, an.lower.index
    subgroups = {
        "N": tuple(an.orientation.kernel),
        "<Q8,g> x E": subgroup_generated(G, [dec.x, dec.y, dec.g] + list(dec.e_part)),
        "Q8 x P": subgroup_generated(G, [dec.x, dec.y] + list(dec.p_part)),
    }
    results = []
    for name, H in subgroups.items():
        Hg, elems = induced_group(G, H)
        kernel = [i for i, e in enumerate(elems) if sign[e] == 1]
        sub = AlgebraContext(Hg, an.ctx.field, make_orientation(Hg, kernel))
        rep = lower_lie_series(sub, sub.symmetric_generators().plus_part, an.series_cap)
        results.append((f"subgroup {name}", rep.index if rep.vanished else None))
    quotients = {"P": tuple(dec.p_part), "<c>": subgroup_generated(G, [dec.c]), "E": tuple(dec.e_part)}
    for name, A in quotients.items():
        if len(A) == 1:
            continue
        qctx, _ = an.ctx.quotient_context(A)
        rep = lower_lie_series(qctx, qctx.symmetric_generators().plus_part, an.series_cap)
        results.append((f"quotient by {name}", rep.index if rep.vanished else None))
    bad = [r for r in results if r[1] is None or r[1] > t]
    return [check("index-monotone", "t((FH)+) <= t((FG)+) and t((F(G/A))+) <= t((FG)+)", f"<= {t}", results,
                  not bad, FROM_LEMMA)]


# --- symmetric units --------------------------------------------------------------------


def unit_class(an: Analysis, fixtures: dict | None = None, samples: int = 500) -> list[Check]:
    ctx = an.ctx
    enum_cap = getattr(an, "enum_cap", 3 ** 12)
    out = []
    exhaustive_cl = None
    dim = an.sym.shape[0]
    if an.p and an.p ** dim <= enum_cap:
        units = enumerate_symmetric_units(ctx, enum_cap)
        expected = _fixture(fixtures or {}, an, "sym_units")
        if expected is not None:
            out.append(check("symmetric-unit-count", "number of symmetric units", expected, len(units),
                             expected == len(units), FROM_ORACLE, f"{an.p ** dim} symmetric elements scanned"))
        if len(units) > EXHAUSTIVE_UNIT_LIMIT:
            out.append(skipped("class-exhaustive", "cl(U+) by exhaustive enumeration",
                               f"{len(units)} units exceed the exhaustive limit {EXHAUSTIVE_UNIT_LIMIT}"))
            units = None
        try:
            exhaustive_cl = subset_class_exhaustive(ctx, units) if units is not None else None
        except CapExceeded as exc:
            out.append(check("class-exhaustive", "cl(U+) by exhaustive enumeration", None, None, None,
                             FROM_DEFINITION, str(exc)))
        else:
            if units is not None:
                # nilpotence is only predicted when the structural decomposition holds
                expected = "nilpotent" if an.decomposition is not None or an.group.is_abelian() else None
                computed = exhaustive_cl if exhaustive_cl is not None else "not nilpotent"
                ok = exhaustive_cl is not None if expected else True
                out.append(check("class-exhaustive", "cl(U+) by exhaustive enumeration", expected, computed, ok,
                                 FROM_DEFINITION, f"{len(units)} units"))
            if units is not None and an.group.is_abelian():
                out.append(check("abelian-units-commute", "abelian G gives class at most 1", "<= 1",
                                 exhaustive_cl, exhaustive_cl is not None and exhaustive_cl <= 1, FROM_DEFINITION))
    witness_cl = None
    if an.decomposition is not None:
        b = an.unit_bounds
        witness_cl = b.value
        out.append(check("class-witness-bounds", "witness lower bound meets an upper bound", True,
                         (b.lower_bound, b.upper_bound), b.exact if b.upper_bound is not None else None,
                         FROM_THEOREM, f"upper bounds {b.upper_sources}"))
        if b.witness is not None:
            out.append(check("witness-congruence", "(u_1..u_n) - 1 - [x_1..x_n] in FG Delta(P)^(n+1)", True,
                             b.witness.congruence, b.witness.congruence, FROM_THEOREM))
            out.extend(witness_units_in_filtration(an, b.witness))
        if exhaustive_cl is not None and witness_cl is not None:
            out.append(check("class-methods-agree", "exhaustive and witness classes agree", exhaustive_cl,
                             witness_cl, exhaustive_cl == witness_cl, FROM_DEFINITION))
    cl = exhaustive_cl if exhaustive_cl is not None else witness_cl
    strong = an.strong
    if cl is not None and strong.vanished:
        out.append(check("class-below-strong-index", "cl(U+) < tL((FG)+)", f"< {strong.index}", cl,
                         cl < strong.index, FROM_LEMMA))
    if not an.p:
        samples = min(samples, CHAR0_SAMPLES)
    if samples and strong.verdict in (VANISHED, STABILIZED):
        rng = np.random.default_rng(an.seed)
        normal_p = an.p_part if an.decomposition is not None else None
        units = sample_symmetric_units(ctx, samples, rng, normal_p=normal_p)
        lengths = tuple(n for n in (2, 3) if strong.vanished or n <= len(strong.terms))
        res = sampled_commutator_containment(ctx, strong, units, lengths, rng)
        for n, (total, ok) in res.items():
            out.append(check(f"commutators-in-strong-chain-{n}", f"gamma_{n}(U+) lies in 1 + S^({n})", total, ok,
                             ok == total and total > 0, FROM_LEMMA, f"{ok}/{total} sampled commutators"))
    return out


def summary_class(an: Analysis):
    if an.decomposition is None:
        return None
    return an.unit_bounds.value
