"""Aomoto complexes and resonance varieties R^i_d over QQ and GF(p)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arith import (
    GF,
    QQ,
    ExactMatrix,
    _as_sparse,
    echelon,
    Field,
    MultiPoly,
    clear_denominators,
    function_field_rank,
    rank as mat_rank,
    rank_nullspace,
    sparse_rank,
)
from .orlik_solomon import OSAlgebra

DEFAULT_BUDGET = 2_000_000
CERT_SAMPLES = 50


class ResonanceError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its point budget."""


# ---------------------------------------------------------------------------
# the Aomoto complex


def differential_ranks(A: OSAlgebra, a: Sequence, field: Field | None = None) -> list[int]:
    """rank of mu_a: A^i -> A^(i+1) for i = 0..rank-1."""
    F = field or A.field
    return [sparse_rank(A.left_mult_rows(a, i, F), F) for i in range(A.rank)]


def aomoto_cohomology(A: OSAlgebra, a: Sequence, field: Field | None = None) -> list[int]:
    """(h^0, ..., h^rank) of the complex (A, a) with d = left multiplication by a."""
    if len(a) != A.n:
        raise ResonanceError(f"weight vector must have length {A.n}")
    r = differential_ranks(A, a, field)
    h = []
    for i in range(A.rank + 1):
        out_rank = r[i] if i < A.rank else 0
        in_rank = r[i - 1] if i >= 1 else 0
        h.append(A.dim(i) - out_rank - in_rank)
    return h


def in_resonance(A: OSAlgebra, a: Sequence, i: int, d: int, field: Field | None = None) -> bool:
    return aomoto_cohomology(A, a, field)[i] >= d if 0 <= i <= A.rank else d <= 0


def d_squared_is_zero(A: OSAlgebra, a: Sequence, field: Field | None = None) -> bool:
    """Check mu_a o mu_a = 0 in every degree by composing the sparse matrices."""
    F = field or A.field
    for i in range(A.rank - 1):
        first = A.left_mult_rows(a, i, F)
        second = A.left_mult_rows(a, i + 1, F)
        for row in second:
            acc: dict = {}
            for mid, c in row.items():
                for k, v in first[mid].items():
                    acc[k] = F.reduce(acc.get(k, 0) + c * v)
            if any(acc.values()):
                return False
    return True


# ---------------------------------------------------------------------------
# components and their certification


@dataclass
class ResonanceComponent:
    kind: str  # "local" | "essential" | "point-set"
    basis: list  # integer vectors spanning the subspace
    support: frozenset
    source: object = None  # the flat or the partition classes
    certification: dict = dc_field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return mat_rank(self.basis, QQ) if self.basis else 0

    def to_dict(self, labels: Sequence[str] | None = None) -> dict:
        lab = (lambda i: labels[i]) if labels else (lambda i: i + 1)
        src = self.source
        if isinstance(src, (frozenset, set)):
            src = [lab(i) for i in sorted(src)]
        elif isinstance(src, (list, tuple)):
            src = [[lab(i) for i in cls] for cls in src]
        return {
            "kind": self.kind,
            "dimension": self.dimension,
            "support": [lab(i) for i in sorted(self.support)],
            "basis": [[int(x) for x in v] for v in self.basis],
            "source": src,
            "certification": self.certification,
        }


def generic_h1_lower_bound(A: OSAlgebra, basis: Sequence[Sequence]) -> int:
    """h^1 at the generic point of span(basis), computed over QQ(c_1..c_k).

    The differential is a matrix of linear forms in the parameters; its rank
    over the function field is found by fraction-free elimination.
    """
    k = len(basis)
    if k == 0:
        return A.n
    params = tuple(f"c{j + 1}" for j in range(k))
    cs = MultiPoly.gens(params)
    zero = MultiPoly(params, {})
    a = []
    for h in range(A.n):
        acc = zero
        for j in range(k):
            if basis[j][h]:
                acc = acc + cs[j] * Fraction(basis[j][h])
        a.append(acc)
    out = []
    for i in (0, 1):
        mat = [[zero] * A.dim(i) for _ in range(A.dim(i + 1))]
        for h, cols in enumerate(A._left_tables[i]):
            if a[h].is_zero():
                continue
            for col_idx, col in enumerate(cols):
                for r, c in col.items():
                    mat[r][col_idx] = mat[r][col_idx] + a[h] * c
        out.append(function_field_rank(mat))
    return A.dim(1) - out[0] - out[1]


def _random_point(basis, rng: random.Random) -> list[int]:
    while True:
        cs = [rng.randint(-9, 9) for _ in basis]
        v = [sum(c * b[h] for c, b in zip(cs, basis)) for h in range(len(basis[0]))]
        if any(v):
            return v


def certify(A: OSAlgebra, basis: Sequence[Sequence], d: int = 1, samples: int = CERT_SAMPLES, seed: int = 0) -> dict:
    """Check that span(basis) lies in R^1_d(A) over QQ.

    Sampled points are tested one by one; the generic point is tested over
    the rational function field in the span coordinates.
    """
    rng = random.Random(seed)
    Aq = A.with_field(QQ) if A.field != QQ else A
    sampled = 0
    for _ in range(samples):
        v = _random_point(basis, rng)
        if aomoto_cohomology(Aq, v)[1] < d:
            break
        sampled += 1
    ok_samples = sampled == samples
    generic = generic_h1_lower_bound(Aq, basis) if ok_samples else None
    return {
        "samples": samples,
        "samples_passed": sampled,
        "seed": seed,
        "generic_h1": generic,
        "certified": bool(ok_samples and generic is not None and generic >= d),
    }


def _integral_basis(vectors) -> list[list[int]]:
    vecs = [list(v) for v in vectors]
    if not vecs:
        return []
    # row-reduce to a canonical spanning set
    piv = echelon(_as_sparse(vecs, QQ), QQ)
    n = len(vecs[0])
    out = []
    for c in sorted(piv):
        row = [piv[c].get(j, Fraction(0)) for j in range(n)]
        out.append(clear_denominators(row))
    return out


def local_components(A: OSAlgebra, seed: int = 0, certify_components: bool = True) -> list[ResonanceComponent]:
    """One component per rank-2 flat with m >= 3 hyperplanes: {a on X, sum = 0}."""
    out = []
    for F in A.poset.flats_of_rank(2):
        X = sorted(F.hyperplanes)
        if len(X) < 3:
            continue
        basis = []
        for h in X[1:]:
            v = [0] * A.n
            v[X[0]] = 1
            v[h] = -1
            basis.append(v)
        comp = ResonanceComponent("local", _integral_basis(basis), frozenset(X), frozenset(X))
        if certify_components:
            comp.certification = certify(A, comp.basis, seed=seed)
        out.append(comp)
    return out


def class_vectors(n: int, classes, mults=None) -> list[list[int]]:
    mults = mults or [1] * n
    out = []
    for cls in classes:
        v = [0] * n
        for h in cls:
            v[h] = mults[h]
        out.append(v)
    return out


def partition_subspace(A: OSAlgebra, classes, mults=None) -> list[list[int]]:
    """{sum c_j u_j : sum c_j = 0} cut down by the incidence conditions at
    every inter-class point of the support (u_j = weighted class indicator).

    Points whose lines all lie in one class impose nothing: a class vector
    does not sum to zero there, yet nets such as ceva(3) are resonant.
    """
    n = A.n
    mults = list(mults) if mults else [1] * n
    U = class_vectors(n, classes, mults)
    k = len(classes)
    support = frozenset().union(*map(frozenset, classes))
    constraints = [[1] * k]
    for X in A.poset.multiple_points(support, min_size=2):
        row = [sum(mults[h] for h in cls if h in X) for cls in classes]
        if sum(1 for x in row if x) >= 2:
            constraints.append(row)
    _, null = rank_nullspace(ExactMatrix.from_rows(constraints, QQ, k))
    vecs = [[sum(c[j] * U[j][h] for j in range(k)) for h in range(n)] for c in null]
    return _integral_basis(vecs)


def _check_classes(A: OSAlgebra, classes):
    classes = [sorted(set(c)) for c in classes]
    if len(classes) < 3:
        raise ResonanceError("a partition needs at least three classes")
    seen = set()
    for c in classes:
        if not c:
            raise ResonanceError("empty class")
        for h in c:
            if not 0 <= h < A.n:
                raise ResonanceError(f"hyperplane index {h + 1} out of range")
            if h in seen:
                raise ResonanceError("classes overlap, so the partition does not cover its support")
            seen.add(h)
    return classes


def partition_component(A: OSAlgebra, classes, mults=None, seed: int = 0) -> ResonanceComponent | None:
    """Certified component attached to a partition, or None."""
    classes = _check_classes(A, classes)
    basis = partition_subspace(A, classes, mults)
    if len(basis) < 2:
        return None
    support = frozenset(h for c in classes for h in c)
    comp = ResonanceComponent("essential", basis, support, [tuple(c) for c in classes])
    comp.certification = certify(A, basis, seed=seed)
    if mults:
        comp.certification["multiplicities"] = [int(mults[h]) for h in sorted(support)]
    if not comp.certification["certified"]:
        return None
    return comp


def _contained(small, big) -> bool:
    return mat_rank(list(big) + list(small), QQ) == mat_rank(big, QQ)


def resonance_census_Q(A: OSAlgebra, seed: int = 0, max_classes: int | None = None, ceiling: int = 200_000) -> list[ResonanceComponent]:
    """Components of R^1_1(A) over QQ: local ones plus certified partition ones.

    Partitions come from the multinet-shaped neighborly search; candidate
    subspaces contained in another component are dropped, so only maximal
    subspaces are reported.
    """
    from .pencils import enumerate_neighborly, search_multiplicities

    if A.rank > 3:
        raise ResonanceError("the QQ census is only available for rank <= 3")
    comps = local_components(A, seed=seed)
    cands = []
    for part in enumerate_neighborly(A.arrangement, max_classes=max_classes, ceiling=ceiling, strict=True, poset=A.poset):
        comp = partition_component(A, part.classes, None, seed=seed)
        if comp is None:
            ms = search_multiplicities(A.arrangement, part, poset=A.poset)
            if ms is not None:
                comp = partition_component(A, part.classes, ms, seed=seed)
        if comp is not None:
            cands.append(comp)
    allc = comps + cands
    keep = []
    for i, c in enumerate(allc):
        dominated = False
        for j, o in enumerate(allc):
            if i == j:
                continue
            if _contained(c.basis, o.basis):
                if o.dimension > c.dimension or j < i:
                    dominated = True
                    break
        if not dominated:
            keep.append(c)
    return keep


# ---------------------------------------------------------------------------
# enumeration over GF(p)


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    return inv


def batch_rank_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices M[b] over GF(p), by vectorized elimination."""
    M = np.array(M, dtype=np.int64) % p
    B, R, C = M.shape
    rank = np.zeros(B, dtype=np.int64)
    if R == 0 or C == 0:
        return rank
    inv = _inverse_table(p)
    rows = np.arange(R)
    bidx = np.arange(B)
    for c in range(C):
        active = rows[None, :] >= rank[:, None]
        cand = (M[:, :, c] != 0) & active
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        b = bidx[has]
        r0 = rank[has]
        pr = piv[has]
        # swap pivot row into position rank[b]
        tmp = M[b, r0, :].copy()
        M[b, r0, :] = M[b, pr, :]
        M[b, pr, :] = tmp
        prow = (M[b, r0, :] * inv[M[b, r0, c]][:, None]) % p
        M[b, r0, :] = prow
        below = rows[None, :] > r0[:, None]
        factors = M[b, :, c] * below
        M[b] = (M[b] - factors[:, :, None] * prow[:, None, :]) % p
        rank[has] += 1
    return rank


def _points_from_indices(idx: np.ndarray, n: int, p: int) -> np.ndarray:
    out = np.zeros((len(idx), n), dtype=np.int64)
    x = idx.copy()
    for j in range(n - 1, -1, -1):
        out[:, j] = x % p
        x //= p
    return out


def _projective_chunk(start: int, stop: int, n: int, p: int) -> np.ndarray:
    """Representatives with first nonzero coordinate 1, numbered in order."""
    pts = []
    offset = 0
    for f in range(n):
        cnt = p ** (n - f - 1)
        lo, hi = max(start, offset), min(stop, offset + cnt)
        if lo < hi:
            tail = _points_from_indices(np.arange(lo - offset, hi - offset, dtype=np.int64), n - f - 1, p)
            block = np.zeros((hi - lo, n), dtype=np.int64)
            block[:, f] = 1
            block[:, f + 1 :] = tail
            pts.append(block)
        offset += cnt
    if not pts:
        return np.zeros((0, n), dtype=np.int64)
    return np.concatenate(pts)


def _cohomology_batch(tensors, dims, pts: np.ndarray, p: int, i: int) -> np.ndarray:
    """h^i for each row of ``pts``."""

    def rk(j):
        if j < 0 or j >= len(tensors):
            return np.zeros(len(pts), dtype=np.int64)
        T = tensors[j]
        if T.shape[1] == 0 or T.shape[2] == 0:
            return np.zeros(len(pts), dtype=np.int64)
        M = np.einsum("bh,hrk->brk", pts, T) % p
        return batch_rank_mod_p(M, p)

    return dims[i] - rk(i) - rk(i - 1)


def _enum_worker(args):
    tensors, dims, n, p, i, d, lo, hi, projective = args
    if projective:
        pts = _projective_chunk(lo, hi, n, p)
    else:
        pts = _points_from_indices(np.arange(lo, hi, dtype=np.int64), n, p)
    h = _cohomology_batch(tensors, dims, pts, p, i)
    return pts[h >= d]


@dataclass
class Enumeration:
    p: int
    i: int
    d: int
    projective: bool
    points: list  # tuples over range(p); projective representatives when projective
    origin: bool = False  # whether 0 itself lies in the variety

    def full_set(self) -> set:
        """All points (expanding projective classes by nonzero scalars; 0 included when resonant)."""
        if not self.projective:
            return set(self.points)
        out = set()
        if self.origin and self.points:
            out.add((0,) * len(self.points[0]))
        for v in self.points:
            for s in range(1, self.p):
                out.add(tuple((s * x) % self.p for x in v))
        return out


def enumerate_Fp(
    A: OSAlgebra,
    p: int,
    i: int = 1,
    d: int = 1,
    budget: int = DEFAULT_BUDGET,
    projective: bool = False,
    workers: int = 1,
    chunk: int = 20_000,
) -> Enumeration:
    """Every a in GF(p)^n with h^i(A, a) >= d, computed exactly.

    With ``projective=True`` only one representative per scalar class is
    listed (first nonzero coordinate 1); the origin is then omitted.
    """
    GF(p)  # validates primality
    n = A.n
    total = (p**n - 1) // (p - 1) if projective else p**n
    if total > budget:
        hint = "" if projective else "; retry with the projective option"
        raise BudgetExceeded(f"{total} points exceed the budget of {budget}{hint}")
    tensors = [A.left_mult_tensor(j) for j in range(A.rank)]
    dims = A.dims
    jobs = [(tensors, dims, n, p, i, d, lo, min(lo + chunk, total), projective) for lo in range(0, total, chunk)]
    if workers and workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_enum_worker, jobs))
    else:
        results = [_enum_worker(j) for j in jobs]
    pts = [tuple(int(x) for x in row) for res in results for row in res]
    # at a = 0 the differential vanishes, so h^i(0) = dim A^i
    return Enumeration(p, i, d, projective, pts, origin=A.dim(i) >= d)


def _parity_check(basis_mod_p: Sequence[Sequence[int]], n: int, p: int) -> np.ndarray:
    """Matrix N with v in span(basis) iff v @ N == 0 (mod p)."""
    F = GF(p)
    if not basis_mod_p:
        return np.eye(n, dtype=np.int64)
    _, null = rank_nullspace(ExactMatrix.from_rows(basis_mod_p, F, n))
    if not null:
        return np.zeros((n, 0), dtype=np.int64)
    return np.array(null, dtype=np.int64).T


def reduce_component(comp_or_basis, p: int) -> list[list[int]]:
    basis = comp_or_basis.basis if isinstance(comp_or_basis, ResonanceComponent) else comp_or_basis
    return [[int(x) % p for x in v] for v in basis]


def coverage(points: Iterable[tuple], components, p: int, n: int) -> np.ndarray:
    """For each point, the index of the first component containing it (-1 if none)."""
    pts = np.array(list(points), dtype=np.int64).reshape(-1, n)
    owner = np.full(len(pts), -1, dtype=np.int64)
    for k, comp in enumerate(components):
        N = _parity_check(reduce_component(comp, p), n, p)
        inside = ((pts @ N) % p == 0).all(axis=1) if N.shape[1] else np.ones(len(pts), dtype=bool)
        owner[(owner < 0) & inside] = k
    return owner


def census_audit(A: OSAlgebra, components, p: int = 5, budget: int = DEFAULT_BUDGET, workers: int = 1) -> dict:
    """Compare GF(p) enumeration of R^1_1 against reductions of the components."""
    en = enumerate_Fp(A, p, 1, 1, budget=budget, projective=True, workers=workers)
    owner = coverage(en.points, components, p, A.n)
    exceptions = [en.points[k] for k in np.flatnonzero(owner < 0)]
    return {
        "p": p,
        "projective_points": len(en.points),
        "exceptions": len(exceptions),
        "exception_sample": [list(v) for v in exceptions[:10]],
    }


def nonlinearity_witness(points, components=(), p: int | None = None):
    """A pair (u, v) of resonant points with u + v not resonant, neither point
    lying in a given linear component; None when no such pair exists.

    ``points`` is the full point set (closed under scaling).  Components are
    bases over GF(p) (or QQ components, reduced mod p).
    """
    pts = [tuple(int(x) for x in v) for v in points]
    if not pts:
        return None
    n = len(pts[0])
    if p is None:
        raise ResonanceError("the prime p is required")
    S = set(pts)
    nonzero = [v for v in dict.fromkeys(pts) if any(v)]
    if components:
        owner = coverage(nonzero, components, p, n)
        U = [v for v, o in zip(nonzero, owner) if o < 0]
    else:
        U = nonzero
    for a_idx, u in enumerate(U):
        for v in U[a_idx + 1 :]:
            w = tuple((x + y) % p for x, y in zip(u, v))
            if w not in S:
                return u, v
    return None
