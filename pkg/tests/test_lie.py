import pytest
from hypothesis import given, settings, strategies as st

from arrangements import Arrangement, build_poset, catalog, supersolvable
from arrangements.arith import upoly_mul
from arrangements.lie import (
    FormulaError,
    ResourceError,
    chen_formula,
    chen_lower_bound_check,
    chen_ranks_holonomy,
    derived_dims,
    diagonal_tor_series,
    holonomy_lie,
    holonomy_ranks,
    jacobi_spot_check,
    lcs_formula_supersolvable,
    linear_strand_over_E,
    rank_sequences,
    witt,
    witt_phi_from_series,
)

from oracles import lyndon_count

# (name, degree reached in the test)
SUPERSOLVABLE = [("braid3", 6), ("braid4", 6), ("boolean(3)", 6), ("k4-e", 6), ("braid5", 4), ("cube", 4)]


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_witt_matches_lyndon_words(q):
    assert [witt(q, k) for k in range(1, 7)] == [lyndon_count(q, k) for k in range(1, 7)]


@pytest.mark.parametrize("name, N", SUPERSOLVABLE)
def test_lcs_formula_for_fiber_type(name, N):
    p = build_poset(catalog(name))
    ex = supersolvable(p)
    phi = holonomy_ranks(p, N)
    # phi_k = sum over exponents of the free Lie algebra ranks
    assert phi == [sum(lyndon_count(e, k) for e in ex) for k in range(1, N + 1)]
    chk = lcs_formula_supersolvable(p, N, phi=phi)
    assert chk.equal and chk.detail["exponent_product_matches"]


def test_braid4_phi_through_six():
    assert holonomy_ranks(catalog("braid4"), 6) == [6, 4, 10, 21, 54, 125]


def test_witt_inversion_of_poincare_series():
    series = [1]
    for e in (1, 2, 3):
        series = upoly_mul(series, [1, -e])
    assert witt_phi_from_series(series, 6) == [6, 4, 10, 21, 54, 125]


@pytest.mark.parametrize("name, N", [("braid4", 5), ("k4-e", 5), ("ceva(3)", 4), ("generic(4,3)", 5)])
def test_jacobi_identity_on_random_triples(name, N):
    assert jacobi_spot_check(holonomy_lie(catalog(name), N), trials=100, seed=1)


@given(st.permutations(range(6)))
@settings(max_examples=10, deadline=None)
def test_ranks_invariant_under_hyperplane_order(perm):
    a = catalog("braid4")
    b = Arrangement(a.ambient_dim, [a.normals[i] for i in perm])
    L = holonomy_lie(b, 5)
    assert L.phi == [6, 4, 10, 21, 54]
    assert chen_ranks_holonomy(b, 5, L) == [6, 4, 10, 15, 20]


@given(st.permutations(range(5)))
@settings(max_examples=10, deadline=None)
def test_k4_minus_edge_ranks_invariant(perm):
    a = catalog("k4-e")
    b = Arrangement(a.ambient_dim, [a.normals[i] for i in perm])
    assert holonomy_ranks(b, 5) == [5, 2, 4, 6, 12]


@pytest.mark.parametrize("name, N", [("braid4", 5), ("k4-e", 5), ("ceva(3)", 4), ("c4", 5)])
def test_rank_sequence_sanity(name, N):
    rs = rank_sequences(catalog(name), N)
    assert rs.check() == []
    assert all(t <= f for t, f in zip(rs.theta, rs.phi))
    assert rs.theta[:3] == rs.phi[:3]


def test_abelian_cases():
    for name in ("c4", "boolean(3)", "generic(4,3)"):
        a = catalog(name)
        assert holonomy_ranks(a, 4) == [a.n, 0, 0, 0]


def test_derived_algebra_starts_in_degree_four():
    L = holonomy_lie(catalog("braid4"), 5)
    dd = derived_dims(L)
    assert dd[:3] == [0, 0, 0]
    assert [f - d for f, d in zip(L.phi, dd)] == [6, 4, 10, 15, 20]


def test_chen_formula_values():
    assert [chen_formula([2] * 5, k) for k in range(2, 6)] == [5, 10, 15, 20]
    assert chen_formula([3], 3) == 2 * 4
    with pytest.raises(FormulaError):
        chen_formula([2], 1)


def test_chen_lower_bound():
    for k in (3, 4, 5):
        assert chen_lower_bound_check(catalog("braid4"), k, dims=[2] * 5)


def test_diagonal_tor_boolean_is_symmetric_algebra():
    # Koszul dual of an exterior algebra on 4 generators: polynomial ring
    assert diagonal_tor_series(catalog("boolean(4)"), 4) == [1, 4, 10, 20, 35]


def test_diagonal_tor_braid3():
    assert diagonal_tor_series(catalog("braid3"), 4) == [1, 3, 7, 15, 31]


def test_linear_strand_small_cases():
    assert linear_strand_over_E(catalog("braid3"), 4) == [1, 2, 3]
    assert linear_strand_over_E(catalog("generic(4,3)"), 4) == [0, 0, 0]
    assert linear_strand_over_E(catalog("k4-e"), 4) == [2, 4, 6]


def test_resource_guards():
    with pytest.raises(ResourceError):
        holonomy_lie(catalog("braid4"), 20)
    with pytest.raises(ResourceError):
        holonomy_lie(catalog("hessian"), 6, budget=1000)


def test_not_supersolvable_is_reported():
    with pytest.raises(FormulaError):
        lcs_formula_supersolvable(catalog("generic(4,3)"), 4)
