import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from involution_lab.algebra import AlgebraContext, NotUnit, basis_elements
from involution_lab.fields import get_field
from involution_lab.groups import trivial_orientation
from involution_lab.lie import (
    STABILIZED,
    VANISHED,
    augmentation_series,
    dimension_subgroups,
    is_powerful,
    lie_index,
    lower_lie_series,
    strong_lie_series,
    sym_action,
    t_nil,
)
from involution_lab.specs import CATALOG, build_group

import oracles
from conftest import catalog_analysis

seeds = st.integers(0, 2 ** 32 - 1)


def ctx_of(name, p=None):
    an = catalog_analysis(name, p)
    return an.ctx


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_multiplication_is_associative_and_unital(seed):
    ctx = ctx_of("q8ext_c3")
    rng = np.random.default_rng(seed)
    a, b, c = (ctx.random_vector(rng) for _ in range(3))
    assert np.array_equal(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)))
    assert np.array_equal(ctx.mul(ctx.one(), a), a) and np.array_equal(ctx.mul(a, ctx.one()), a)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_involution_is_an_antiautomorphism(seed):
    ctx = ctx_of("es3_c2")
    rng = np.random.default_rng(seed)
    a, b = ctx.random_vector(rng), ctx.random_vector(rng)
    assert np.array_equal(ctx.involute(ctx.involute(a)), a)
    assert np.array_equal(ctx.involute(ctx.mul(a, b)), ctx.mul(ctx.involute(b), ctx.involute(a)))


def test_rational_context_and_inverse():
    ctx = ctx_of("q8ext_c2")
    el = basis_elements(ctx)
    u = el["1"] + el["x"] * 2
    v = u.inverse()
    assert (u * v) == el["1"]
    with pytest.raises(NotUnit) as err:
        (el["1"] + el["x^2"]).inverse()
    w = err.value.certificate
    assert np.any(w != 0) and not np.any(ctx.mul((el["1"] + el["x^2"]).coeffs, w) != 0)


def test_bracket_is_antisymmetric_and_satisfies_jacobi():
    ctx = ctx_of("q8ext_c3")
    rng = np.random.default_rng(1)
    a, b, c = (ctx.random_vector(rng) for _ in range(3))
    assert np.array_equal(ctx.bracket(a, b), ctx.norm(-ctx.bracket(b, a)))
    jac = ctx.bracket(a, ctx.bracket(b, c)) + ctx.bracket(b, ctx.bracket(c, a)) + ctx.bracket(c, ctx.bracket(a, b))
    assert not ctx.norm(jac).any()


def test_center_elements_commute_with_everything():
    ctx = ctx_of("es3_c2")
    Z = ctx.algebra_center()
    for z in Z.basis:
        for g in range(ctx.n):
            assert not ctx.bracket(z, ctx.unit_vector(g)).any()


def test_quotient_push_is_a_ring_map():
    ctx = ctx_of("q8ext_c3")
    dec = catalog_analysis("q8ext_c3").decomposition
    qctx, coset_of = ctx.quotient_context(dec.p_part)
    rng = np.random.default_rng(3)
    a, b = ctx.random_vector(rng), ctx.random_vector(rng)
    push = lambda v: ctx.quotient_push(coset_of, v, qctx)  # noqa: E731
    assert np.array_equal(push(ctx.mul(a, b)), qctx.mul(push(a), push(b)))
    assert np.array_equal(push(ctx.involute(a)), qctx.involute(push(a)))


@pytest.mark.parametrize("name", ["q8ext", "q8ext_c3", "es3_c2", "q8_c2"])
def test_lower_series_matches_oracle(name):
    """Live cross-check of the lower Lie series dimensions against the brute-force oracle."""
    an = catalog_analysis(name)
    cases = {
        "q8ext": lambda: oracles.q8ext_case([], 3),
        "q8ext_c3": lambda: oracles.q8ext_case([3], 3),
        "es3_c2": oracles.es3_c2_case,
        "q8_c2": lambda: _q8_c2_oracle(),
    }
    G, sign = cases[name]()
    A = oracles.OracleAlgebra(G, sign, an.p)
    S = A.symmetric()
    t, dims = A.lie_index(S, cap=12)
    assert S.shape[0] == an.sym.shape[0]
    if t is None:
        assert an.lower.verdict == STABILIZED
    else:
        assert an.lower.index == t and an.lower.dims == dims + [0]


def _q8_c2_oracle():
    elems, mul, q8 = oracles.pauli_group()
    q8set = set(q8)
    G = oracles.OracleGroup(*oracles.product((q8, mul), oracles.cyclic(2)))
    return G, [1 if e[1] == 0 else -1 for e in G.elements]


def test_strong_chain_matches_oracle_on_small_case():
    an = catalog_analysis("q8ext_c3")
    G, sign = oracles.q8ext_case([3], 3)
    A = oracles.OracleAlgebra(G, sign, 3)
    S = A.symmetric()
    tl, dims = A.strong_index(S)
    tls, dims_set = A.strong_index(S, start=S)
    assert (an.strong.index, an.strong.dims) == (tl, dims + [0])
    assert (an.strong_set.index, an.strong_set.dims) == (tls, dims_set + [0])


@pytest.mark.parametrize("spec,p", [("cyclic:3", 3), ("cyclic:9", 3), ("product(cyclic:3, cyclic:3)", 3),
                                    ("cyclic:5", 5), ("extraspecial:3", 3), ("cyclic:27", 3)])
def test_t_nil_matches_oracle(spec, p):
    G = build_group(spec)
    if spec == "extraspecial:3":
        elems, mul = oracles.unitriangular3()
    else:
        parts = [int(x.split(":")[1]) for x in spec.replace("product(", "").rstrip(")").split(",")]
        elems, mul = oracles.product(*[oracles.cyclic(k) for k in parts])
    assert t_nil(G, p) == oracles.t_nil(oracles.OracleGroup(elems, mul), p)


def test_t_nil_of_trivial_group_and_augmentation_series():
    assert t_nil(build_group("cyclic:1"), 3) == 1
    rep = augmentation_series(build_group("cyclic:9"), 3)
    assert rep.verdict == VANISHED and rep.dims == list(range(8, -1, -1))


def test_jennings_dimension_subgroups():
    P = build_group("cyclic:9")
    D = dimension_subgroups(P, 3)
    assert [len(D[n]) for n in range(1, 5)] == [9, 3, 3, 1]
    E = build_group("extraspecial:3")
    DE = dimension_subgroups(E, 3)
    assert [len(DE[n]) for n in (1, 2, 3, 4)] == [27, 3, 1, 1]  # exponent 3: D_3 = [D_2, G] G^3 = 1
    assert is_powerful(P) and not is_powerful(E)


def test_series_edge_cases():
    ctx = AlgebraContext(build_group("cyclic:3"), get_field(3))
    zero = ctx.field.zeros((0, ctx.n))
    assert lie_index(ctx, zero).index == 1
    rep = lie_index(ctx)
    assert rep.index == 2  # commutative, nonzero symmetric part
    assert lower_lie_series(ctx, ctx.field.eye(3)).index == 2


def test_strong_chain_rejects_unknown_start():
    ctx = ctx_of("q8ext")
    with pytest.raises(ValueError):
        strong_lie_series(ctx, ctx.symmetric_generators().plus_part, first="nope")


def test_non_nilpotent_series_carries_a_certificate():
    an = catalog_analysis("q8_c4")
    rep = an.lower
    assert rep.verdict == STABILIZED
    i, j = rep.witness
    assert i < j and rep.term(i).dim > 0 and rep.term(i).issubspace(rep.term(j))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sym_action_has_power_of_two_terms(n):
    assert len(sym_action(n)) == 2 ** (n - 1)


def test_characteristic_two_is_rejected():
    with pytest.raises(ValueError):
        AlgebraContext(build_group("q8"), 2)


def test_char0_order_cap():
    from involution_lab.groups import GroupError
    G = CATALOG["q8ext_c9"].group()
    with pytest.raises(GroupError):
        AlgebraContext(G, 0, trivial_orientation(G))
