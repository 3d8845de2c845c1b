import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from involution_lab.groups import (
    DecompositionError,
    FiniteGroup,
    GroupError,
    OrderCapExceeded,
    admissible_kernels,
    center,
    decompose_q8_structure,
    derived_subgroup,
    is_cyclic,
    make_orientation,
    quotient_group,
    subgroup_generated,
    sylow_subgroup,
    trivial_orientation,
)
from involution_lab.specs import (
    CATALOG,
    ENV_CAP,
    build_group,
    parse_kernel,
    parse_spec,
    read_table_file,
    resolve_group,
    write_table_file,
)

import oracles

ORDERS = {"c3": 3, "q8": 8, "q8_c2": 16, "q8_c4": 32, "q8ext": 16, "q8ext_c2": 32, "q8ext_c3": 48,
          "q8ext_c5": 80, "q8ext_c9": 144, "q8ext_c3c3": 144, "q8ext_c2_c3": 96, "extraspecial3": 27,
          "es3_c2": 54}


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_groups_are_valid_groups(name):
    G = CATALOG[name].group()
    assert G.order == ORDERS[name]
    # associativity and inverses on the full table
    m = G.mul
    a, b, c = np.meshgrid(np.arange(G.order), np.arange(G.order), np.arange(G.order), indexing="ij")
    assert np.array_equal(m[m[a, b], c], m[a, m[b, c]])
    assert np.all(m[np.arange(G.order), G.inv] == 0)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_decomposition_round_trip(name):
    """The decomposition exists exactly for the catalog entries built as <Q8,g> x E x P."""
    entry = CATALOG[name]
    G = entry.group()
    built = name.startswith("q8ext")
    try:
        dec = decompose_q8_structure(G, entry.orientation(G), entry.characteristic)
    except DecompositionError:
        assert not built
        return
    assert built
    assert len(dec.q8e_part) * len(dec.p_part) * 2 == G.order
    assert G.power(dec.g, 2) == G.power(dec.x, 2) == dec.c
    assert entry.orientation(G)(dec.g) == -1


def test_decomposition_errors_name_the_condition():
    G = CATALOG["q8_c4"].group()
    with pytest.raises(DecompositionError) as err:
        decompose_q8_structure(G, CATALOG["q8_c4"].orientation(G), 3)
    assert err.value.condition
    G = CATALOG["q8"].group()
    with pytest.raises(DecompositionError, match="orientation trivial"):
        decompose_q8_structure(G, trivial_orientation(G), 3)


@pytest.mark.parametrize("spec", ["cyclic:9", "extraspecial:3", "product(cyclic:3, cyclic:3)", "elem2:2"])
def test_odd_or_small_group_orientations(spec):
    G = build_group(spec)
    kernels = admissible_kernels(G)
    if G.order % 2:
        assert kernels == [tuple(range(G.order))]
    for K in kernels:
        sigma = make_orientation(G, K)
        assert np.array_equal(sigma.sign[G.mul], np.outer(sigma.sign, sigma.sign))


def test_derived_and_center_of_q8():
    G = build_group("q8")
    D = derived_subgroup(G)
    assert len(D) == 2 and tuple(center(G)) == tuple(D)
    assert is_cyclic(G, D)
    assert len(subgroup_generated(G, ["x"])) == 4
    Q = quotient_group(G, D)
    assert Q.group.order == 4 and Q.group.is_abelian()


def test_derived_order_matches_oracle():
    G = build_group("product(extraspecial:3, cyclic:2)")
    og, _ = oracles.es3_c2_case()
    assert len(derived_subgroup(G)) == oracles.derived_order(og)


def test_sylow_subgroup():
    G = build_group("product(q8ext, cyclic:9)")
    P = sylow_subgroup(G, 3)
    assert len(P) == 9 and G.is_normal(P)


@pytest.mark.parametrize("text", ["q8", "cyclic:5", "product(q8ext, cyclic:2, cyclic:3)",
                                  "quotient(q8; x^2)", "product(extraspecial:3, elem2:2)"])
def test_spec_text_round_trip(text):
    spec = parse_spec(text)
    assert parse_spec(str(spec)) == spec


@pytest.mark.parametrize("bad", ["", "cyclic:", "product(q8", "nosuch:3", "product(q8,,q8)"])
def test_bad_specs_raise(bad):
    with pytest.raises(GroupError):
        build_group(bad)


def test_order_cap_and_environment_override(monkeypatch):
    with pytest.raises(OrderCapExceeded):
        build_group("product(q8ext, cyclic:9)", cap=100)
    monkeypatch.setenv(ENV_CAP, "20")
    with pytest.raises(OrderCapExceeded):
        build_group("product(q8ext, cyclic:3)")
    monkeypatch.setenv(ENV_CAP, "300")
    assert build_group("product(q8ext, cyclic:2, cyclic:9)").order == 288


def test_table_file_round_trip(tmp_path):
    G = build_group("product(q8, cyclic:3)")
    path = tmp_path / "g.table"
    write_table_file(G, path)
    H = read_table_file(path)
    assert np.array_equal(H.mul, G.mul)
    assert resolve_group(f"table:{path}")[0].order == 24


def test_table_file_errors(tmp_path):
    path = tmp_path / "bad.table"
    path.write_text("2\n1 2\n2 3\n")
    with pytest.raises(GroupError):
        read_table_file(path)
    with pytest.raises(GroupError):
        read_table_file(tmp_path / "missing.table")


def test_wreath_table_file_is_the_oracle_group():
    from conftest import DATA
    G = read_table_file(DATA / "c3_wr_c3.table")
    assert G.order == 81 and len(derived_subgroup(G)) == 9
    assert not is_cyclic(G, derived_subgroup(G))


def test_kernel_parsing():
    G = CATALOG["q8ext_c3"].group()
    K = parse_kernel(G, "x,y,h1")
    assert len(K) == 24
    with pytest.raises(GroupError):
        make_orientation(G, parse_kernel(G, "x"))


def test_invalid_tables_are_rejected():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 12), st.integers(1, 6))
def test_cyclic_products_are_abelian(m, n):
    G = build_group(f"product(cyclic:{m}, cyclic:{n})")
    assert G.order == m * n and G.is_abelian() and len(derived_subgroup(G)) == 1
