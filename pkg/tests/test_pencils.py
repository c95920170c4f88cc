from fractions import Fraction

import pytest
import sympy

from arrangements import catalog
from arrangements.arith import MultiPoly
from arrangements.pencils import (
    Partition,
    PencilError,
    SearchCeilingExceeded,
    ceva2_master_setup,
    check_multinet,
    class_polynomials,
    critical_equations,
    critical_locus_check,
    enumerate_neighborly,
    incidence_eligible,
    is_neighborly,
    line_family,
    pencil_certificate,
    pencil_member,
    search_multiplicities,
    singular_fibers,
)

from oracles import sympy_forms

FIGURE_ONE = [[0, 5], [1, 4], [2, 3]]  # 12,34 | 13,24 | 14,23 in braid(4)
CUBE_CLASSES = [[0, 5, 6], [1, 7, 8], [2, 3, 4]]


def _sympy_class_products(a, classes, mults):
    xs, forms = sympy_forms(a.normals, ("x", "y", "z", "w")[: a.ambient_dim])
    return xs, [sympy.expand(sympy.Mul(*[forms[h] ** mults[h] for h in c])) for c in classes]


@pytest.mark.parametrize(
    "name, classes",
    [("ceva(2)", [[0, 1], [2, 3], [4, 5]]), ("cube", CUBE_CLASSES)],
)
def test_pencil_matches_sympy_expansion(name, classes):
    a = catalog(name)
    cert = pencil_certificate(a, Partition.make(classes))
    xs, ref = _sympy_class_products(a, classes, a.multiplicities)
    for q, r in zip(cert.class_polys, ref):
        assert sympy.expand(sympy.sympify(str(q).replace("^", "**"), locals=dict(zip(a.linear_forms()[0].vars, xs))) - r) == 0
    # the sympy dependency agrees with the certified one
    polys = [sympy.Poly(r, *xs) for r in ref]
    monos = sorted({m for p in polys for m in p.monoms()})
    M = sympy.Matrix([[dict(zip(p.monoms(), p.coeffs())).get(m, 0) for p in polys] for m in monos])
    null = M.nullspace()
    assert len(null) == 1
    v = null[0] / next(x for x in null[0] if x)
    assert [Fraction(int(x.p), int(x.q)) for x in v] == cert.dependency


def test_braid4_figure_one_partition():
    a = catalog("braid4")
    assert is_neighborly(a, Partition.make(FIGURE_ONE))
    assert not is_neighborly(a, Partition.make([[0], [5], [1, 2, 3, 4]]))
    rep = check_multinet(a, Partition.make(FIGURE_ONE))
    assert rep.ok and rep.degree == 2


def test_strict_enumeration_braid4():
    parts = enumerate_neighborly(catalog("braid4"), strict=True)
    full = [p for p in parts if len(p.support) == 6]
    assert [sorted(p.classes) for p in full] == [sorted(tuple(c) for c in FIGURE_ONE)]
    assert len(parts) == 5


def test_plain_enumeration_ceiling():
    with pytest.raises(SearchCeilingExceeded):
        enumerate_neighborly(catalog("braid4"), ceiling=10)


def test_hessian_strict_search_finds_four_net():
    h = catalog("hessian")
    parts = enumerate_neighborly(h, strict=True, min_support=12)
    four = [p for p in parts if len(p.classes) == 4]
    assert len(four) == 1
    assert sorted(len(c) for c in four[0].classes) == [3, 3, 3, 3]


def test_cube_multiplicity_search():
    cube = catalog("cube")
    found = search_multiplicities(cube, Partition.make(CUBE_CLASSES))
    assert found is not None
    assert list(found)[:3] == [2, 2, 2]
    unit = check_multinet(cube, Partition.make(CUBE_CLASSES), [1] * 9)
    assert not unit.ok


def test_singular_fibers_are_normalized():
    cert = pencil_certificate(catalog("ceva(2)"), Partition.make([[0, 1], [2, 3], [4, 5]]))
    fibers = singular_fibers(cert)
    assert fibers == [(1, 0), (0, 1), (1, 1)]
    for (a_, b_), q in zip(fibers, cert.class_polys):
        m = pencil_member(cert, a_, b_)
        assert poly_proportional(m, q)


def poly_proportional(p, q):
    lead = max(q.terms)
    if lead not in p.terms:
        return False
    r = p.terms[lead] / q.terms[lead]
    return (p - q * r).is_zero()


def test_pencil_errors():
    b3 = catalog("boolean(3)")
    with pytest.raises(PencilError) as e:
        pencil_certificate(b3, Partition.make([[0], [1], [2]]))
    assert e.value.kind == "no-pencil"
    with pytest.raises(PencilError) as e:
        pencil_certificate(catalog("hessian"), Partition.make([[0], [1], [2]]))
    assert e.value.kind == "precondition"
    with pytest.raises(PencilError):
        Partition.make([[0], [0, 1], [2]])
    with pytest.raises(PencilError):
        Partition.make([[0], [1]])


def test_critical_locus_against_sympy():
    a, weights, family = ceva2_master_setup()
    x, y, z, al, be = sympy.symbols("x y z alpha beta")
    ga = -al - be
    Phi_log = al * sympy.log(x**2 - y**2) + be * sympy.log(y**2 - z**2) + ga * sympy.log(z**2 - x**2)
    names = dict(zip(family[0].vars, sympy.symbols(family[0].vars)))
    fam = [sympy.sympify(str(f).replace("^", "**"), locals=names) for f in family]
    subs = dict(zip((x, y, z), fam))
    # Phi has degree 0, so criticality on P^2 means the whole gradient vanishes
    for v in (x, y, z):
        g = sympy.together(sympy.diff(Phi_log, v).subs(subs))
        assert sympy.expand(sympy.numer(g)) == 0
    assert critical_locus_check(a, weights, family)


def test_critical_check_scaling_and_failures():
    a, weights, family = ceva2_master_setup()
    assert critical_locus_check(a, [w * 3 for w in weights], family)
    ring = family[0].vars
    zero = [MultiPoly(ring, {}) for _ in weights]
    assert critical_locus_check(a, zero, family)
    line = line_family((1, 2, 3), (2, -1, 5), ring)
    assert not critical_locus_check(a, weights, line)
    eqs = critical_equations(a, weights, line)
    assert any(not e.is_zero() for e in eqs)


def test_critical_rejects_unbalanced_weights():
    a, weights, family = ceva2_master_setup()
    ring = family[0].vars
    with pytest.raises(PencilError):
        critical_equations(a, [MultiPoly.const(ring, 1)] * 6, family)


def test_class_polynomials_use_multiplicities():
    cube = catalog("cube")
    Q = class_polynomials(cube, Partition.make(CUBE_CLASSES))
    assert [q.degree() for q in Q] == [4, 4, 4]


def test_figure_one_incidence_nullspace():
    # four triple points against six lines: rank 4, nullspace of dimension 2
    a = catalog("braid4")
    assert incidence_eligible(a, range(6))


def test_figure_one_with_a_double_line_is_not_a_multinet():
    rep = check_multinet(catalog("braid4"), Partition.make(FIGURE_ONE), [2, 1, 1, 1, 1, 1])
    assert not rep.ok
