"""Holonomy Lie algebra, LCS and Chen ranks, and the rank formulas they satisfy.

The holonomy Lie algebra is built degree by degree as a quotient of the
exterior square of the part already known:

    h_2 = L^2 V / R,        h_k = (L^2 h)_k / d(L^3 h)_k   (k >= 3),

where d(a^b^c) = [a,b]^c - [a,c]^b + [b,c]^a.  Because the presentation is
quadratic, the second homology of h sits in degree 2 only, so the bracket
map identifies (L^2 h)_k modulo Jacobi images with h_k for k >= 3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Sequence

from .arith import QQ, echelon, lcs_exponents, lcs_product, series_mul, series_pow, sparse_rank
from .arrangement import IntersectionPoset, build_poset, supersolvable
from .orlik_solomon import OSAlgebra, build_os

DEFAULT_MAX_DEGREE = 6
DEGREE_BOUND = 8
DEFAULT_CELL_BUDGET = 3_000_000


class ResourceError(RuntimeError):
    """A computation would exceed its configured size bound."""


class FormulaError(ValueError):
    """A formula's precondition does not hold (e.g. not supersolvable)."""


def _add(target: dict, vec: dict, c):
    for k, v in vec.items():
        nv = target.get(k, 0) + c * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


# ---------------------------------------------------------------------------
# holonomy Lie algebra


def holonomy_relations(poset: IntersectionPoset) -> list[dict]:
    """[x_i, sum_{j in X} x_j] for each rank-2 flat X and i in X, as
    sparse vectors on the pairs (i, j), i < j."""
    rels = []
    for F in poset.flats_of_rank(2):
        X = sorted(F.hyperplanes)
        for i in X:
            r: dict = {}
            for j in X:
                if i < j:
                    r[(i, j)] = r.get((i, j), 0) + 1
                elif j < i:
                    r[(j, i)] = r.get((j, i), 0) - 1
            if r:
                rels.append(r)
    return rels


@dataclass
class HolonomyLie:
    """Graded pieces h_1..h_N with bracket structure constants.

    Basis elements are pairs (degree, index).  ``tables[(a, b)]`` maps
    (i, j) to the sparse vector [u_i, u_j] in degree a + b, stored for
    (a, i) < (b, j).
    """

    n: int
    N: int
    dims: list  # dims[k] for k = 0..N (dims[0] = 0)
    tables: dict = dc_field(default_factory=dict)
    basis_words: dict = dc_field(default_factory=dict)  # (k, idx) -> (1, h) x (k-1, idx') spelling

    def bracket_basis(self, a: int, i: int, b: int, j: int) -> dict:
        if a + b > self.N:
            raise ResourceError(f"bracket lands in degree {a + b} > {self.N}")
        if (a, i) == (b, j):
            return {}
        if (a, i) < (b, j):
            return self.tables[(a, b)].get((i, j), {})
        return {k: -v for k, v in self.tables[(b, a)].get((j, i), {}).items()}

    def bracket(self, a: int, u: dict, b: int, v: dict) -> dict:
        """[u, v] for u in h_a, v in h_b (sparse coefficient dicts)."""
        out: dict = {}
        for i, x in u.items():
            for j, y in v.items():
                _add(out, self.bracket_basis(a, i, b, j), x * y)
        return out

    @property
    def phi(self) -> list[int]:
        return self.dims[1:]


def _wedge_index(k: int, dims: list):
    """Basis of (L^2 h)_k: pairs ((a,i),(b,j)) with (a,i) < (b,j), a+b = k."""
    cols = []
    for a in range(1, k // 2 + 1):
        b = k - a
        if a < b:
            cols.extend(((a, i), (b, j)) for i in range(dims[a]) for j in range(dims[b]))
        else:
            cols.extend(((a, i), (a, j)) for i, j in combinations(range(dims[a]), 2))
    return {c: t for t, c in enumerate(cols)}, cols


def _wedge(x, y):
    """(sign, key) of x ^ y for basis elements, or None when x == y."""
    if x == y:
        return None
    return (1, (x, y)) if x < y else (-1, (y, x))


def holonomy_lie(A, N: int = DEFAULT_MAX_DEGREE, budget: int = DEFAULT_CELL_BUDGET, bound: int = DEGREE_BOUND) -> HolonomyLie:
    """The holonomy Lie algebra of an arrangement (or its poset / OS algebra) through degree N."""
    poset = _poset_of(A)
    if N > bound:
        raise ResourceError(f"degree {N} exceeds the configured bound {bound}")
    n = poset.n
    dims = [0, n]
    L = HolonomyLie(n, N, dims)
    if N < 2:
        return L
    for k in range(2, N + 1):
        index, cols = _wedge_index(k, dims)
        if k == 2:
            rows = [{index[((1, i), (1, j))]: Fraction(c) for (i, j), c in r.items()} for r in holonomy_relations(poset)]
        else:
            rows = _jacobi_rows(L, k, dims, index, budget)
        # prefer pivots away from V ^ h_{k-1}, so the surviving basis is spelled [x_h, u]
        col_order = sorted(range(len(cols)), key=lambda t: (cols[t][0][0] == 1, t))
        piv = echelon(rows, QQ, col_order)
        free = [t for t in range(len(cols)) if t not in piv]
        pos = {t: s for s, t in enumerate(free)}
        dims.append(len(free))
        for s, t in enumerate(free):
            L.basis_words[(k, s)] = cols[t]
        # bracket tables from the projection (L^2 h)_k -> h_k
        for t, (x, y) in enumerate(cols):
            if t in piv:
                vec = {pos[c]: -v for c, v in piv[t].items() if c != t}
            else:
                vec = {pos[t]: Fraction(1)}
            if vec:
                L.tables.setdefault((x[0], y[0]), {})[(x[1], y[1])] = vec
            else:
                L.tables.setdefault((x[0], y[0]), {})
        if dims[k] == 0:
            # h is nilpotent from here on
            for kk in range(k + 1, N + 1):
                dims.append(0)
            _fill_empty_tables(L, dims)
            break
    L.N = N
    return L


def _fill_empty_tables(L: HolonomyLie, dims):
    for a in range(1, L.N + 1):
        for b in range(a, L.N + 1 - a):
            L.tables.setdefault((a, b), {})


def _jacobi_rows(L: HolonomyLie, k: int, dims, index, budget: int) -> list[dict]:
    triples = []
    for p, q, r in combinations_with_replacement(range(1, k), 3):
        if p + q + r != k:
            continue
        triples.append((p, q, r))
    count = 0
    for p, q, r in triples:
        if p == q == r:
            count += comb(dims[p], 3)
        elif p == q:
            count += comb(dims[p], 2) * dims[r]
        elif q == r:
            count += dims[p] * comb(dims[q], 2)
        else:
            count += dims[p] * dims[q] * dims[r]
    if count * max(1, len(index)) > budget * 50 or count > budget:
        raise ResourceError(f"degree {k} needs {count} Jacobi relations; raise the budget or lower the degree")
    rows = []
    for p, q, r in triples:
        for a in _elements(p, dims):
            for b in _elements(q, dims):
                if b <= a:
                    continue
                for c in _elements(r, dims):
                    if c <= b:
                        continue
                    row: dict = {}
                    for (u, v, w, s) in ((a, b, c, 1), (a, c, b, -1), (b, c, a, 1)):
                        br = L.bracket_basis(u[0], u[1], v[0], v[1])
                        deg = u[0] + v[0]
                        for idx, coef in br.items():
                            wd = _wedge((deg, idx), w)
                            if wd is None:
                                continue
                            sg, key = wd
                            col = index[key]
                            nv = row.get(col, 0) + s * sg * coef
                            if nv:
                                row[col] = nv
                            else:
                                row.pop(col, None)
                    if row:
                        rows.append(row)
    return rows


def _elements(deg: int, dims):
    return [(deg, i) for i in range(dims[deg])]


def _poset_of(A) -> IntersectionPoset:
    if isinstance(A, IntersectionPoset):
        return A
    if isinstance(A, OSAlgebra):
        return A.poset
    return build_poset(A)


def holonomy_ranks(A, N: int = DEFAULT_MAX_DEGREE, **kw) -> list[int]:
    """phi_1..phi_N of the holonomy Lie algebra."""
    return holonomy_lie(A, N, **kw).phi


def derived_dims(L: HolonomyLie) -> list[int]:
    """dim h''_k for k = 1..N, spanned by [u, v] with deg u, deg v >= 2."""
    out = [0] * (L.N + 1)
    for k in range(4, L.N + 1):
        rows = []
        for a in range(2, k // 2 + 1):
            b = k - a
            for i in range(L.dims[a]):
                for j in range(L.dims[b]):
                    if a == b and j <= i:
                        continue
                    v = L.bracket_basis(a, i, b, j)
                    if v:
                        rows.append(dict(v))
        out[k] = sparse_rank(rows, QQ)
    return out[1:]


def chen_ranks_holonomy(A, N: int = DEFAULT_MAX_DEGREE, lie: HolonomyLie | None = None) -> list[int]:
    """theta_1..theta_N = dim (h / h'')_k."""
    L = lie or holonomy_lie(A, N)
    dd = derived_dims(L)
    return [p - d for p, d in zip(L.phi, dd)]


def jacobi_spot_check(L: HolonomyLie, trials: int = 100, seed: int = 0) -> bool:
    """Antisymmetry and Jacobi on random basis triples with total degree <= N."""
    rng = random.Random(seed)
    degs = [k for k in range(1, L.N + 1) if L.dims[k]]
    if not degs:
        return True
    for _ in range(trials):
        a, b = rng.choice(degs), rng.choice(degs)
        if a + b > L.N:
            continue
        i, j = rng.randrange(L.dims[a]), rng.randrange(L.dims[b])
        x = L.bracket_basis(a, i, b, j)
        y = L.bracket_basis(b, j, a, i)
        s: dict = {}
        _add(s, x, 1)
        _add(s, y, 1)
        if s:
            return False
        rest = [c for c in degs if a + b + c <= L.N]
        if not rest:
            continue
        c = rng.choice(rest)
        kk = rng.randrange(L.dims[c])
        u, v, w = (a, {i: 1}), (b, {j: 1}), (c, {kk: 1})
        tot: dict = {}
        for p, q, r in ((u, v, w), (v, w, u), (w, u, v)):
            inner = L.bracket(q[0], q[1], r[0], r[1])
            _add(tot, L.bracket(p[0], p[1], q[0] + r[0], inner), 1)
        if tot:
            return False
    return True


# ---------------------------------------------------------------------------
# rank sequences and formulas


@dataclass
class RankSequences:
    phi: list
    theta: list
    sources: dict = dc_field(default_factory=dict)

    def check(self) -> list[str]:
        """Violated structural invariants (empty when all hold)."""
        bad = []
        if any(x < 0 for x in self.phi + self.theta):
            bad.append("negative rank")
        if any(t > p for p, t in zip(self.phi, self.theta)):
            bad.append("theta_k > phi_k")
        for k in (1, 2, 3):
            if k <= min(len(self.phi), len(self.theta)) and self.phi[k - 1] != self.theta[k - 1]:
                bad.append(f"theta_{k} != phi_{k}")
        return bad


def rank_sequences(A, N: int = DEFAULT_MAX_DEGREE) -> RankSequences:
    L = holonomy_lie(A, N)
    return RankSequences(L.phi, chen_ranks_holonomy(A, N, L), {"phi": "holonomy", "theta": "holonomy/h''"})


def hilbert_at_minus_t(dims: Sequence[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    for i, d in enumerate(dims[: N + 1]):
        out[i] = (-1) ** i * d
    return out


@dataclass
class FormulaCheck:
    name: str
    lhs: list
    rhs: list
    equal: bool
    hypothesis: bool | None = None
    detail: dict = dc_field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.hypothesis is False:
            return "hypothesis-not-met"
        return "holds" if self.equal else "fails"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "lhs": [str(x) for x in self.lhs],
            "rhs": [str(x) for x in self.rhs],
            "equal": self.equal,
            "hypothesis": self.hypothesis,
            **self.detail,
        }


def lcs_formula_supersolvable(A, N: int = DEFAULT_MAX_DEGREE, phi: Sequence[int] | None = None) -> FormulaCheck:
    """prod_k (1 - t^k)^phi_k against Hilb(A, -t), for fiber-type arrangements."""
    poset = _poset_of(A)
    ex = supersolvable(poset)
    if ex is None:
        raise FormulaError("arrangement is not supersolvable")
    phi = list(phi) if phi is not None else holonomy_ranks(poset, N)
    lhs = lcs_product(phi, N)
    os_dims = build_os(poset).dims
    rhs = hilbert_at_minus_t(os_dims, N)
    # the exponents give the same polynomial, prod (1 - e_i t)
    prod = [1]
    for e in ex:
        prod = series_mul(prod + [0] * N, [1, -e] + [0] * N, N)
    prod = (prod + [0] * (N + 1))[: N + 1]
    return FormulaCheck("lcs-supersolvable", lhs, rhs, lhs == rhs, None, {"exponents": ex, "exponent_product_matches": prod == rhs})


def resonance_lcs_formula(A, N: int = DEFAULT_MAX_DEGREE, dims: Sequence[int] | None = None, phi=None, theta=None) -> FormulaCheck:
    """prod_{k>=2} (1 - t^k)^phi_k against prod_i (1 - d_i t)/(1 - t)^d_i.

    The hypothesis phi_4 = theta_4 is checked first; when it fails the
    comparison is still reported but no equality is claimed.
    """
    poset = _poset_of(A)
    if dims is None:
        from .resonance import resonance_census_Q

        dims = [c.dimension for c in resonance_census_Q(build_os(poset))]
    if phi is None or theta is None:
        L = holonomy_lie(poset, max(N, 4))
        phi = L.phi
        theta = chen_ranks_holonomy(poset, max(N, 4), L)
    hyp = phi[3] == theta[3]
    lhs = lcs_product(phi, N, start=2)
    rhs = [1] + [0] * N
    for d in dims:
        rhs = series_mul(rhs, series_mul([1, -d] + [0] * N, series_pow([1, -1], -d, N), N), N)
    equal = lhs == rhs
    return FormulaCheck(
        "resonance-lcs",
        lhs,
        rhs,
        equal if hyp else False,
        hyp,
        {"phi4": phi[3], "theta4": theta[3], "component_dims": list(dims), "series_agree": equal},
    )


def chen_formula(dims: Sequence[int], k: int) -> int:
    """(k - 1) * sum_i C(k + d_i - 2, k)."""
    if k < 2:
        raise FormulaError("the Chen rank formula needs k >= 2")
    return (k - 1) * sum(comb(k + d - 2, k) for d in dims)


def chen_formula_check(A, N: int = 5, dims=None, theta=None, kmin: int = 2) -> FormulaCheck:
    """Holonomy Chen ranks against the closed formula for k = kmin..N.

    ``detail['onset']`` is the smallest k from which equality holds through N.
    """
    poset = _poset_of(A)
    if dims is None:
        from .resonance import resonance_census_Q

        dims = [c.dimension for c in resonance_census_Q(build_os(poset))]
    if theta is None:
        theta = chen_ranks_holonomy(poset, N)
    ks = list(range(kmin, N + 1))
    lhs = [theta[k - 1] for k in ks]
    rhs = [chen_formula(dims, k) for k in ks]
    onset = None
    for idx in range(len(ks)):
        if lhs[idx:] == rhs[idx:]:
            onset = ks[idx]
            break
    return FormulaCheck("chen", lhs, rhs, lhs == rhs, None, {"k": ks, "onset": onset, "component_dims": list(dims)})


def chen_lower_bound_check(A, k: int, dims=None, theta=None) -> bool:
    poset = _poset_of(A)
    if dims is None:
        from .resonance import resonance_census_Q

        dims = [c.dimension for c in resonance_census_Q(build_os(poset))]
    if theta is None:
        theta = chen_ranks_holonomy(poset, k)
    return theta[k - 1] >= chen_formula(dims, k)


# ---------------------------------------------------------------------------
# Tor computations


def _os(A) -> OSAlgebra:
    if isinstance(A, OSAlgebra):
        return A
    return build_os(_poset_of(A))


def _check_size(cells: int, budget: int, what: str):
    if cells > budget:
        raise ResourceError(f"{what} needs a {cells}-entry matrix (budget {budget})")


def diagonal_tor_series(A, N: int = 5, budget: int = DEFAULT_CELL_BUDGET) -> list[int]:
    """dim Tor^A_i(Q, Q)_i for i = 0..N.

    The linear strand of the minimal resolution of Q over A: W_0 = Q,
    W_1 = A_1 and W_i = ker(A_1 (x) W_{i-1} -> A_2 (x) W_{i-2}), the map
    multiplying the first two tensor factors in A.
    """
    Aos = _os(A)
    n = Aos.n
    d2 = Aos.dim(2)
    mult = {}
    for h in range(n):
        for g in range(n):
            mult[(h, g)] = {Aos.index[2][V]: c for V, c in Aos.monomial_product((h,), (g,)).items()} if d2 else {}
    out = [1]
    if N == 0:
        return out
    out.append(n)
    # W_{i-1} basis vectors over (h, index in W_{i-2})
    prev_basis = [{(g, 0): Fraction(1)} for g in range(n)]  # W_1 inside A_1 (x) W_0
    prev_dim2 = 1  # dim W_{i-2}
    for i in range(2, N + 1):
        m = len(prev_basis)
        ncols = n * m
        _check_size(ncols * d2 * prev_dim2, budget * 20, f"Tor degree {i}")
        # row index: (A_2 basis r, W_{i-2} basis b) ; column: (h, k)
        rows: dict = {}
        for h in range(n):
            for k, vec in enumerate(prev_basis):
                col = h * m + k
                for (g, b), c in vec.items():
                    for r, cc in mult[(h, g)].items():
                        key = r * prev_dim2 + b
                        row = rows.setdefault(key, {})
                        nv = row.get(col, 0) + c * cc
                        if nv:
                            row[col] = nv
                        else:
                            row.pop(col, None)
        piv = echelon(list(rows.values()), QQ)
        null = _nullspace_sparse(piv, ncols)
        basis = []
        for v in null:
            basis.append({(col // m, col % m): x for col, x in v.items()})
        out.append(len(basis))
        prev_dim2 = m
        prev_basis = basis
        if not basis:
            out.extend([0] * (N - i))
            break
    return out


def _nullspace_sparse(piv: dict, ncols: int) -> list[dict]:
    out = []
    for f in range(ncols):
        if f in piv:
            continue
        v = {f: Fraction(1)}
        for pc, prow in piv.items():
            x = prow.get(f)
            if x:
                v[pc] = -x
        out.append(v)
    return out


def _monomials(n: int, d: int) -> list[tuple]:
    return [tuple(c) for c in combinations_with_replacement(range(n), d)]


def linear_strand_over_E(A, N: int = 4, budget: int = DEFAULT_CELL_BUDGET, max_n: int = 8) -> list[int]:
    """dim Tor^E_{k-1}(A, Q)_k for k = 2..N, E the exterior algebra on A_1.

    Tor is balanced: resolving Q over E by the Cartan complex E (x) S_j
    and tensoring with A gives A_{k-j} (x) S_j with
    d(m (x) f) = sum_l e_l m (x) df/dx_l; the (k-1)-st homology in internal
    degree k sits at A_1 (x) S_{k-1}.
    """
    Aos = _os(A)
    n = Aos.n
    if n > max_n:
        raise ResourceError(f"n = {n} exceeds the bound {max_n} for resolutions over E")
    out = []
    for k in range(2, N + 1):
        S_k, S_k1, S_k2 = _monomials(n, k), _monomials(n, k - 1), _monomials(n, k - 2)
        _check_size(len(S_k1) * n * max(len(S_k), len(S_k2) * Aos.dim(2)), budget * 20, f"Cartan complex degree {k}")
        idx_k1 = {m: i for i, m in enumerate(S_k1)}
        idx_k2 = {m: i for i, m in enumerate(S_k2)}
        # middle space A_1 (x) S_{k-1}: column (h, mono) -> h * len(S_k1) + i
        # incoming: A_0 (x) S_k -> A_1 (x) S_{k-1}
        inc = []
        for mono in S_k:
            row: dict = {}
            for l in set(mono):
                c = mono.count(l)
                rest = list(mono)
                rest.remove(l)
                col = l * len(S_k1) + idx_k1[tuple(rest)]
                row[col] = row.get(col, 0) + c
            inc.append(row)
        rank_in = sparse_rank(inc, QQ)
        # outgoing: A_1 (x) S_{k-1} -> A_2 (x) S_{k-2}; e_h (x) f -> sum_l e_l e_h (x) df/dx_l
        d2 = Aos.dim(2)
        out_rows: dict = {}
        for h in range(n):
            for mono in S_k1:
                col = h * len(S_k1) + idx_k1[mono]
                for l in set(mono):
                    c = mono.count(l)
                    rest = list(mono)
                    rest.remove(l)
                    b = idx_k2[tuple(rest)]
                    for V, cc in Aos.monomial_product((l,), (h,)).items():
                        key = Aos.index[2][V] * len(S_k2) + b
                        row = out_rows.setdefault(key, {})
                        nv = row.get(col, 0) + c * cc
                        if nv:
                            row[col] = nv
                        else:
                            row.pop(col, None)
        rank_out = sparse_rank(list(out_rows.values()), QQ) if d2 else 0
        middle = n * len(S_k1)
        out.append(middle - rank_out - rank_in)
    return out


def tor_formula_check(A, N: int = 4, phi=None) -> FormulaCheck:
    """Diagonal Tor over A against prod_k (1 - t^k)^phi_k: the two series
    are mutually inverse."""
    tor = diagonal_tor_series(A, N)
    if phi is None:
        phi = holonomy_ranks(A, N)
    lhs = lcs_product(phi, N)
    prod = series_mul(lhs, tor, N)
    return FormulaCheck("diagonal-tor", tor, lhs, prod == [1] + [0] * N, None, {"product": prod})


def strand_formula_check(A, N: int = 4, theta=None) -> FormulaCheck:
    strand = linear_strand_over_E(A, N)
    if theta is None:
        theta = chen_ranks_holonomy(A, N)
    rhs = theta[1:N]
    return FormulaCheck("linear-strand", strand, rhs, strand == rhs, None, {"k": list(range(2, N + 1))})


def witt_phi_from_series(series: Sequence[int], N: int) -> list[int]:
    """phi_1..phi_N with prod (1 - t^k)^phi_k equal to ``series``."""
    return lcs_exponents(series, N)



def _mobius(m: int) -> int:
    res, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def witt(n: int, k: int) -> int:
    """Rank of the degree-k part of the free Lie algebra on n generators."""
    return sum(_mobius(k // d) * n**d for d in range(1, k + 1) if k % d == 0) // k
