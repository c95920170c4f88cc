import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arrangements import build_os, catalog
from arrangements.arith import GF, rank
from arrangements.resonance import (
    BudgetExceeded,
    ResonanceError,
    aomoto_cohomology,
    batch_rank_mod_p,
    certify,
    coverage,
    enumerate_Fp,
    in_resonance,
    local_components,
    nonlinearity_witness,
    partition_component,
    resonance_census_Q,
)


@pytest.fixture(scope="module")
def braid4():
    return build_os(catalog("braid4"))


@pytest.fixture(scope="module")
def braid4_census(braid4):
    return resonance_census_Q(braid4, seed=0)


@given(st.lists(st.integers(-5, 5), min_size=6, max_size=6), st.integers(1, 7))
@settings(max_examples=50, deadline=None)
def test_cohomology_is_scale_invariant(w, c):
    A = build_os(catalog("braid4"))
    assert aomoto_cohomology(A, w) == aomoto_cohomology(A, [c * x for x in w])
    assert aomoto_cohomology(A, w, GF(5)) == aomoto_cohomology(A, [c * x for x in w], GF(5)) or c % 5 == 0


def test_zero_weight_gives_full_cohomology(braid4):
    assert aomoto_cohomology(braid4, [0] * 6) == braid4.dims


def test_generic_weight_has_no_h1(braid4):
    # sum of weights nonzero: the complex is exact
    assert aomoto_cohomology(braid4, [1, 2, 3, 5, 7, 11]) == [0, 0, 0, 0]


def test_wrong_length_weight(braid4):
    with pytest.raises(ResonanceError):
        aomoto_cohomology(braid4, [1, 2])


def test_batch_rank_matches_exact_rank():
    rng = np.random.default_rng(4)
    M = rng.integers(0, 7, size=(40, 5, 6))
    M[:5, 3] = M[:5, 0] * 2  # force some rank drops
    got = batch_rank_mod_p(M, 7)
    want = [rank(m.tolist(), GF(7)) for m in M]
    assert got.tolist() == want


def test_enumeration_agrees_with_pointwise_cohomology():
    A = build_os(catalog("braid3"))
    en = enumerate_Fp(A, 3, 1, 1)
    brute = {v for v in product(range(3), repeat=A.n) if aomoto_cohomology(A, v, GF(3))[1] >= 1}
    assert set(en.points) == brute


def test_enumeration_is_homogeneous(braid4):
    aff = enumerate_Fp(braid4, 5, 1, 1)
    S = set(aff.points)
    for v in S:
        for c in range(1, 5):
            assert tuple(c * x % 5 for x in v) in S
    proj = enumerate_Fp(braid4, 5, 1, 1, projective=True)
    assert proj.full_set() == S
    assert len(S) == 121 and len(proj.points) == 30


def test_enumeration_budget(braid4):
    with pytest.raises(BudgetExceeded):
        enumerate_Fp(braid4, 5, budget=100)


def test_braid4_census_shape(braid4_census):
    assert len(braid4_census) == 5
    assert sorted(c.dimension for c in braid4_census) == [2] * 5


def _span_point(basis, rng):
    cs = [rng.randint(-5, 5) for _ in basis]
    return [sum(c * b[h] for c, b in zip(cs, basis)) for h in range(len(basis[0]))]


def test_census_members_are_resonant(braid4, braid4_census):
    rng = random.Random(2)
    for comp in braid4_census:
        for _ in range(20):
            assert in_resonance(braid4, _span_point(comp.basis, rng), 1, 1)


def test_resonance_membership_equals_union(braid4, braid4_census):
    rng = random.Random(3)
    for k in range(200):
        if k % 2:
            v = _span_point(rng.choice(braid4_census).basis, rng)
        else:
            v = [rng.randint(-3, 3) for _ in range(6)]
        inside = bool((coverage([tuple(x % 101 for x in v)], braid4_census, 101, 6) >= 0).all())
        assert in_resonance(braid4, v, 1, 1) == inside


def test_affine_gf5_points_all_covered(braid4, braid4_census):
    aff = enumerate_Fp(braid4, 5, 1, 1)
    assert (coverage(aff.points, braid4_census, 5, 6) >= 0).all()


def test_certification_is_reproducible(braid4):
    comp = local_components(braid4, seed=11)[0]
    again = certify(braid4, comp.basis, seed=11)
    assert comp.certification == again
    assert again["samples"] == 50 and again["generic_h1"] == 1


def test_non_resonant_partition_rejected(braid4):
    assert partition_component(braid4, [[0], [1], [2, 3, 4, 5]]) is None
    with pytest.raises(ResonanceError):
        partition_component(braid4, [[0, 1], [1, 2], [3]])


def test_generic_arrangement_has_empty_census():
    assert resonance_census_Q(build_os(catalog("generic(4,3)"))) == []


def test_ceva3_census():
    comps = resonance_census_Q(build_os(catalog("ceva(3)")))
    kinds = sorted((c.kind, c.dimension) for c in comps)
    assert kinds == [("essential", 2)] * 4 + [("local", 2)] * 12


def test_no_witness_when_variety_is_linear(braid4, braid4_census):
    en = enumerate_Fp(braid4, 5, 1, 1, projective=True)
    assert nonlinearity_witness(sorted(en.full_set()), braid4_census, 5) is None


def test_witness_on_a_toy_union():
    # the two coordinate axes in GF(3)^2: a union of lines, not a subspace
    pts = [(0, 0), (1, 0), (2, 0), (0, 1), (0, 2)]
    assert nonlinearity_witness(pts, (), 3) == ((1, 0), (0, 1))


def test_witness_requires_prime():
    with pytest.raises(ResonanceError):
        nonlinearity_witness([(1, 0)], ())


def test_hessian_four_net_component():
    from arrangements.pencils import enumerate_neighborly

    h = catalog("hessian")
    A = build_os(h)
    four = [p for p in enumerate_neighborly(h, strict=True, min_support=12) if len(p.classes) == 4]
    comp = partition_component(A, four[0].classes)
    assert comp is not None and comp.dimension == 3
    assert comp.certification["certified"]
