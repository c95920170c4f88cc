from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from arrangements import (
    AbstractMatroid,
    Arrangement,
    ArrangementError,
    build_poset,
    catalog,
    characteristic_polynomial,
    count_regions,
    supersolvable,
)
from arrangements.arith import upoly_eval
from arrangements.fileformat import ParseError, dump_arrangement, parse_arrangement

from oracles import chi_deletion_restriction, regions_by_sign_vectors

REALIZED = ["braid3", "braid4", "boolean(4)", "generic(4,3)", "generic(5,3)", "cube", "ceva(2)", "k4-e", "c4"]


@pytest.mark.parametrize("name", REALIZED)
def test_chi_matches_deletion_restriction(name):
    a = catalog(name)
    assert characteristic_polynomial(build_poset(a)) == chi_deletion_restriction(a.normals, a.ambient_dim)


# every realized catalog entry with l <= 4 and n <= 10
SMALL_REAL = ["braid3", "braid4", "boolean(3)", "boolean(4)", "generic(4,3)", "generic(5,3)", "cube", "ceva(2)", "k4", "c4", "k4-e"]


@pytest.mark.parametrize("name", SMALL_REAL)
def test_regions_match_sign_vectors(name):
    a = catalog(name)
    regions, bounded = count_regions(a)
    assert regions_by_sign_vectors(a.normals, a.ambient_dim, samples=40000, seed=1) == regions
    # chambers of a central arrangement are cones
    assert bounded == 0


def _distinct_lines(vectors):
    out = []
    for v in vectors:
        if not any(v):
            continue
        if any(all(v[i] * w[j] == v[j] * w[i] for i in range(len(v)) for j in range(len(v))) for w in out):
            continue
        out.append(v)
    return out


normals3 = st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=1, max_size=7)


@given(normals3)
@settings(max_examples=60, deadline=None)
def test_random_chi_against_deletion_restriction(vecs):
    vecs = _distinct_lines(vecs)
    assume(vecs)
    a = Arrangement(3, vecs)
    chi = characteristic_polynomial(build_poset(a))
    assert chi == chi_deletion_restriction(vecs, 3)
    # central and nonempty: chi(1) = 0
    assert upoly_eval(chi, 1) == 0


@given(normals3)
@settings(max_examples=30, deadline=None)
def test_sign_vectors_never_exceed_zaslavsky(vecs):
    vecs = _distinct_lines(vecs)
    assume(vecs)
    regions, _ = count_regions(Arrangement(3, vecs))
    assert regions_by_sign_vectors(vecs, 3, samples=3000) <= regions


@given(st.permutations(range(9)))
@settings(max_examples=15, deadline=None)
def test_poset_invariant_under_relabeling(perm):
    a = catalog("cube")
    b = Arrangement(3, [a.normals[i] for i in perm])
    pa, pb = build_poset(a), build_poset(b)
    assert pa.census() == pb.census()
    assert characteristic_polynomial(pa) == characteristic_polynomial(pb)


def test_mobius_and_whitney():
    p = build_poset(catalog("braid4"))
    assert p.census() == [1, 6, 7, 1]
    assert p.whitney_numbers() == [1, 6, 11, 6]
    triple = [F for F in p.flats_of_rank(2) if len(F.hyperplanes) == 3]
    assert len(triple) == 4 and all(p.mu(F) == 2 for F in triple)


def test_abstract_catalog_entries():
    h = catalog("hessian")
    assert isinstance(h, AbstractMatroid)
    p = build_poset(h)
    assert p.census() == [1, 12, 21, 1]
    assert sorted(len(F.hyperplanes) for F in p.flats_of_rank(2)).count(4) == 9
    c3 = build_poset(catalog("ceva(3)"))
    assert c3.census() == [1, 9, 12, 1]
    assert characteristic_polynomial(c3) == [-16, 24, -9, 1]


def test_supersolvable_exponents():
    assert supersolvable(build_poset(catalog("braid4"))) == [1, 2, 3]
    assert supersolvable(build_poset(catalog("cube"))) == [1, 3, 5]
    assert supersolvable(build_poset(catalog("generic(4,3)"))) is None
    assert supersolvable(build_poset(catalog("k4-e"))) is not None


def test_deletion_and_restriction():
    a = catalog("braid4")
    d = a.deletion(0)
    assert d.n == 5
    r = a.restriction(0)
    # braid(4) restricted to a hyperplane is braid(3), up to the lattice
    assert build_poset(r).census() == build_poset(catalog("braid3")).census()


def test_duplicate_hyperplanes_rejected():
    with pytest.raises(ArrangementError):
        Arrangement(2, [(1, 0), (2, 0)])
    with pytest.raises(ArrangementError):
        Arrangement(2, [(0, 0)])


@pytest.mark.parametrize("name", ["braid4", "cube", "hessian", "ceva(3)", "generic(4,3)"])
def test_file_round_trip(name):
    a = catalog(name)
    text = dump_arrangement(a)
    b = parse_arrangement(text)
    assert b.fingerprint() == a.fingerprint()
    assert b.labels == a.labels
    assert b.multiplicities == a.multiplicities
    assert dump_arrangement(b) == text


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as e:
        parse_arrangement("dim 3\nx 1 0 zz\n")
    assert e.value.line == 2 and e.value.col == 7
    with pytest.raises(ParseError):
        parse_arrangement("dim 2\nx 0 0\n")
    with pytest.raises(ParseError):
        parse_arrangement("matroid 4\n1 2 9\n")
    with pytest.raises(ParseError):
        parse_arrangement("")


def test_rational_coefficients_parse():
    a = parse_arrangement("dim 2\nu 1/2 1\nv 1 0 3\n")
    assert a.normals[0] == (Fraction(1, 2), Fraction(1))
    assert a.multiplicities == (1, 3)


@pytest.mark.parametrize("name", ["braid(4)", "braid4", "ceva:3", "generic(4,3)", "k4", "c4", "k4-e", "cube"])
def test_catalog_spellings(name):
    assert catalog(name).n > 0


def test_unknown_catalog_entry():
    with pytest.raises(ArrangementError):
        catalog("dodecahedron")
