"""The ten acceptance criteria, each timed against its limit.

Every criterion prints one ``criterion N PASS|FAIL`` line; the lines are
repeated in the terminal summary.
"""

import random
from math import factorial

from arrangements import (
    build_os,
    build_poset,
    catalog,
    characteristic_polynomial,
    count_regions,
)
from arrangements.arith import GF, QQ, MultiPoly, upoly_mul
from arrangements.lie import (
    chen_formula,
    chen_formula_check,
    chen_ranks_holonomy,
    diagonal_tor_series,
    holonomy_lie,
    linear_strand_over_E,
    resonance_lcs_formula,
    strand_formula_check,
    tor_formula_check,
    witt,
    witt_phi_from_series,
)
from arrangements.pencils import (
    Partition,
    ceva2_master_setup,
    check_multinet,
    critical_equations,
    critical_locus_check,
    pencil_certificate,
    singular_fibers,
)
from arrangements.resonance import (
    aomoto_cohomology,
    census_audit,
    coverage,
    d_squared_is_zero,
    enumerate_Fp,
    nonlinearity_witness,
    resonance_census_Q,
)

from oracles import chi_deletion_restriction, lyndon_count, regions_by_sign_vectors

AOMOTO_CATALOG = ["braid3", "braid4", "braid5", "boolean(3)", "generic(4,3)", "cube", "ceva(3)", "hessian", "k4-e", "c4"]


def test_criterion_01_braid_combinatorics(criterion):
    c = criterion(1, "braid(3..5): chi = t(t-1)...(t-l+1), l! regions", 5)
    with c.run():
        for ell in (3, 4, 5):
            a = catalog("braid", ell)
            chi = characteristic_polynomial(build_poset(a))
            expected = [1]
            for j in range(ell):
                expected = upoly_mul(expected, [-j, 1])
            assert chi == expected
            assert chi == chi_deletion_restriction(a.normals, a.ambient_dim)
            regions, _ = count_regions(a)
            assert regions == factorial(ell)
            assert regions_by_sign_vectors(a.normals, a.ambient_dim, samples=4000, seed=ell) == factorial(ell)
            c.note(f"braid{ell} regions {regions}")


def test_criterion_02_os_hilbert_braid4(criterion):
    c = criterion(2, "OS Hilbert series of braid(4)", 1)
    with c.run():
        p = build_poset(catalog("braid4"))
        A = build_os(p)
        assert A.dims == [1, 6, 11, 6]
        mu_sums = [sum(abs(p.mu(F)) for F in p.flats_of_rank(r)) for r in range(p.rank + 1)]
        assert mu_sums == A.dims
        prod = [1]
        for e in (1, 2, 3):
            prod = upoly_mul(prod, [1, e])
        assert prod == A.dims


def test_criterion_03_aomoto_complex(criterion):
    c = criterion(3, "d^2 = 0 and Euler characteristic over QQ, GF(3), GF(5)", 30)
    with c.run():
        rng = random.Random(3)
        for name in AOMOTO_CATALOG:
            A = build_os(build_poset(catalog(name)))
            euler = sum((-1) ** i * d for i, d in enumerate(A.dims))
            for F in (QQ, GF(3), GF(5)):
                for _ in range(200):
                    w = [rng.randint(-6, 6) for _ in range(A.n)]
                    assert d_squared_is_zero(A, w, F)
                    h = aomoto_cohomology(A, w, F)
                    assert sum((-1) ** i * x for i, x in enumerate(h)) == euler
        c.note(f"{len(AOMOTO_CATALOG)} arrangements x 3 fields x 200 weights")


def test_criterion_04_braid4_resonance_census(criterion):
    c = criterion(4, "R^1_1(braid(4)): 4 local + 1 essential, certified, GF(5) covered", 120)
    with c.run():
        A = build_os(build_poset(catalog("braid4")))
        comps = resonance_census_Q(A, seed=0)
        assert len(comps) == 5
        assert all(x.dimension == 2 for x in comps)
        assert sorted(x.kind for x in comps) == ["essential"] + ["local"] * 4
        ess = next(x for x in comps if x.kind == "essential")
        assert sorted(map(sorted, ess.source)) == [[0, 5], [1, 4], [2, 3]]
        for x in comps:
            assert x.certification["certified"]
            assert x.certification["generic_h1"] >= 1
        audit = census_audit(A, comps, p=5)
        assert audit["exceptions"] == 0
        c.note(f"GF(5): {audit['projective_points']} projective points, 0 exceptions")


def test_criterion_05_pencils(criterion):
    c = criterion(5, "conic pencil for braid(4), quartic pencil for the cube", 10)
    with c.run():
        # the braid(4) multinet, written with the ceva(2) forms x^2-y^2, ...
        a = catalog("ceva(2)")
        part = Partition.make([[0, 1], [2, 3], [4, 5]])
        cert = pencil_certificate(a, part)
        assert cert.span_dim == 2 and cert.multinet_ok
        assert all(q.degree() == 2 for q in cert.class_polys)
        assert cert.dependency == [1, 1, 1]
        assert sum(cert.class_polys[1:], cert.class_polys[0]).is_zero()
        fibers = singular_fibers(cert)
        assert len(fibers) == 3
        # same partition on braid(4) itself
        b = catalog("braid4")
        cert_b = pencil_certificate(b, Partition.make([[0, 5], [1, 4], [2, 3]]))
        assert cert_b.span_dim == 2 and len(singular_fibers(cert_b)) == 3
        assert build_poset(a).census() == build_poset(b).census()

        cube = catalog("cube")
        assert cube.multiplicities == (2, 2, 2, 1, 1, 1, 1, 1, 1)
        cp = Partition.make([[0, 5, 6], [1, 7, 8], [2, 3, 4]])
        rep = check_multinet(cube, cp)
        assert rep.ok and rep.degree == 4
        qc = pencil_certificate(cube, cp)
        assert qc.span_dim == 2
        assert all(q.degree() == 4 for q in qc.class_polys)
        dep = qc.dependency
        combo = MultiPoly.const(qc.variables, 0)
        for coef, q in zip(dep, qc.class_polys):
            combo = combo + q * coef
        assert combo.is_zero()
        assert len(singular_fibers(qc)) == 3
        c.note(f"cube dependency {[str(x) for x in dep]}")


def test_criterion_06_critical_locus(criterion):
    c = criterion(6, "critical set [x2-y2 : y2-z2 : z2-x2] = [alpha:beta:gamma]", 10)
    with c.run():
        a, weights, family = ceva2_master_setup()
        eqs = critical_equations(a, weights, family)
        assert eqs and all(e.is_zero() for e in eqs)
        assert critical_locus_check(a, weights, family)
        # along the family the class quadrics are proportional to the weights
        ring = family[0].vars
        x, y, z = family
        al, be = MultiPoly.var(ring, "alpha"), MultiPoly.var(ring, "beta")
        q = [x * x - y * y, y * y - z * z, z * z - x * x]
        w = [al, be, -al - be]
        for i in range(3):
            for j in range(i + 1, 3):
                assert (q[i] * w[j] - q[j] * w[i]).is_zero()
        assert not q[0].is_zero()


def test_criterion_07_hessian_mod3_nonlinear(criterion):
    c = criterion(7, "R^1_1(hessian, GF(3)) enumeration and nonlinearity witness", 300)
    with c.run():
        A = build_os(build_poset(catalog("hessian")))
        en = enumerate_Fp(A, 3, 1, 1, projective=True)
        comps = resonance_census_Q(A, seed=0)
        owner = coverage(en.points, comps, 3, A.n)
        uncovered = int((owner < 0).sum())
        assert uncovered > 0
        full = sorted(en.full_set())
        wit = nonlinearity_witness(full, comps, 3)
        assert wit is not None
        u, v = wit
        s = tuple((x + y) % 3 for x, y in zip(u, v))
        F = GF(3)
        assert aomoto_cohomology(A, u, F)[1] >= 1
        assert aomoto_cohomology(A, v, F)[1] >= 1
        assert aomoto_cohomology(A, s, F)[1] == 0
        assert (coverage([u, v], comps, 3, A.n) < 0).all()
        c.note(f"{len(en.points)} projective points, {uncovered} off the QQ components; u={u} v={v}")


def test_criterion_08_braid4_lcs_and_chen(criterion):
    c = criterion(8, "braid(4): phi via holonomy = Witt inversion, theta vs 5(k-1)", 120)
    with c.run():
        p = build_poset(catalog("braid4"))
        L = holonomy_lie(p, 5)
        assert L.phi == [6, 4, 10, 21, 54]
        series = [1]
        for e in (1, 2, 3):
            series = upoly_mul(series, [1, -e])
        assert witt_phi_from_series(series, 5) == L.phi
        assert [sum(witt(e, k) for e in (1, 2, 3)) for k in range(1, 6)] == L.phi
        assert [sum(lyndon_count(e, k) for e in (1, 2, 3)) for k in range(1, 6)] == L.phi
        theta = chen_ranks_holonomy(p, 5, L)
        assert theta[1:] == [4, 10, 15, 20]
        dims = [2] * 5
        assert [chen_formula(dims, k) for k in (3, 4, 5)] == theta[2:]
        chk = chen_formula_check(p, 5, dims=dims, theta=theta)
        assert chen_formula(dims, 2) == 5 and theta[1] == 4
        assert chk.detail["onset"] == 3
        c.note("k=2: formula 5 vs theta_2 = 4, expected before the onset k=3")


def test_criterion_09_tor_identities(criterion):
    c = criterion(9, "diagonal Tor over A and linear strand over E", 300)
    with c.run():
        for name in ("braid3", "braid4", "boolean(4)"):
            chk = tor_formula_check(catalog(name), 4)
            assert chk.equal, (name, chk.lhs, chk.rhs)
        for name in ("braid3", "braid4", "generic(4,3)"):
            chk = strand_formula_check(catalog(name), 4)
            assert chk.equal, (name, chk.lhs, chk.rhs)
        assert diagonal_tor_series(catalog("braid4"), 4) == [1, 6, 25, 90, 301]
        assert linear_strand_over_E(catalog("braid4"), 4) == [4, 10, 15]


def test_criterion_10_graphic_conjectures(criterion):
    c = criterion(10, "resonance LCS and Chen formulas on K4, C4, K4-e", 300)
    with c.run():
        failures = []
        for name in ("k4", "c4", "k4-e"):
            p = build_poset(catalog(name))
            dims = [x.dimension for x in resonance_census_Q(build_os(p))]
            L = holonomy_lie(p, 5)
            theta = chen_ranks_holonomy(p, 5, L)
            lcs = resonance_lcs_formula(p, 5, dims=dims, phi=L.phi, theta=theta)
            chen = chen_formula_check(p, 5, dims=dims, theta=theta)
            # "sufficiently large": equality must hold from some k on, through 5
            if chen.detail["onset"] is None:
                failures.append(f"{name}: Chen formula never holds through k=5")
            if not lcs.hypothesis:
                failures.append(f"{name}: phi_4={lcs.detail['phi4']} != theta_4={lcs.detail['theta4']}")
            elif not lcs.equal:
                failures.append(f"{name}: resonance LCS series differ")
        for f in failures:
            c.note(f)
        assert not failures, "; ".join(failures)
