"""Neighborly partitions, multinets, pencils of class curves and critical loci."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .arith import QQ, ExactMatrix, MultiPoly, _glex_key, rank_nullspace
from .arrangement import ArrangementError, IntersectionPoset, build_poset

DEFAULT_CEILING = 200_000
MAX_SEARCH_MULT = 4


class PencilError(ArrangementError):
    """Domain failure in the pencil operations; ``kind`` names the failure."""

    def __init__(self, kind: str, msg: str):
        super().__init__(msg)
        self.kind = kind


class SearchCeilingExceeded(RuntimeError):
    def __init__(self, count: int, ceiling: int):
        super().__init__(f"partition search aborted after {count} candidates (ceiling {ceiling})")
        self.count = count
        self.ceiling = ceiling


@dataclass(frozen=True)
class Partition:
    classes: tuple  # tuple of sorted index tuples

    @classmethod
    def make(cls, classes) -> "Partition":
        cl = [tuple(sorted(set(c))) for c in classes]
        if len(cl) < 3:
            raise PencilError("precondition", "a partition needs at least three classes")
        seen: set = set()
        for c in cl:
            if not c:
                raise PencilError("precondition", "empty class")
            if seen & set(c):
                raise PencilError("precondition", "classes must be disjoint")
            seen |= set(c)
        return cls(tuple(cl))

    @property
    def support(self) -> frozenset:
        return frozenset(h for c in self.classes for h in c)

    def class_of(self) -> dict:
        return {h: j for j, c in enumerate(self.classes) for h in c}

    def canonical(self) -> "Partition":
        return Partition(tuple(sorted(self.classes)))

    def format(self, labels: Sequence[str]) -> str:
        return " | ".join(",".join(labels[h] for h in c) for c in self.classes)


@dataclass
class Multinet:
    partition: Partition
    multiplicities: list  # one entry per hyperplane of the arrangement
    degree: int


@dataclass
class MultinetReport:
    ok: bool
    degree: int | None
    class_degrees: list
    violations: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok

    def multinet(self, part: Partition, mults) -> Multinet:
        if not self.ok:
            raise PencilError("not-multinet", "partition does not satisfy the multinet conditions")
        return Multinet(part, list(mults), self.degree)


def _poset(a, poset: IntersectionPoset | None) -> IntersectionPoset:
    return poset if poset is not None else build_poset(a)


def _require_rank3(a, poset):
    if poset.rank != 3:
        raise PencilError("precondition", f"rank-3 arrangement required, got rank {poset.rank}")


def _as_partition(part) -> Partition:
    return part if isinstance(part, Partition) else Partition.make(part)


def _check_support(a, part: Partition):
    if any(not 0 <= h < a.n for h in part.support):
        raise PencilError("precondition", "partition support is not contained in the arrangement")


def _points(poset: IntersectionPoset, support) -> list[frozenset]:
    """Rank-2 flats of the arrangement, intersected with ``support`` (at least two lines)."""
    return poset.multiple_points(support, min_size=2)


# ---------------------------------------------------------------------------
# neighborly partitions


def is_neighborly(a, part, poset: IntersectionPoset | None = None) -> bool:
    """No point of multiplicity >= 3 carries exactly one line of some class
    with all its other lines in a single second class."""
    poset = _poset(a, poset)
    _require_rank3(a, poset)
    part = _as_partition(part)
    _check_support(a, part)
    cls = part.class_of()
    for X in poset.multiple_points(part.support, min_size=3):
        if _point_violates(X, cls):
            return False
    return True


def _point_violates(X, cls) -> bool:
    counts: dict = {}
    for h in X:
        counts[cls[h]] = counts.get(cls[h], 0) + 1
    if len(counts) != 2:
        return False
    return 1 in counts.values()


def incidence_eligible(a, support, poset: IntersectionPoset | None = None) -> bool:
    """Incidence matrix (multiple points x lines of the support) has a
    nullspace of dimension >= 2 with full support."""
    poset = _poset(a, poset)
    S = sorted(support)
    pts = poset.multiple_points(S, min_size=3)
    rows = [[1 if h in X else 0 for h in S] for X in pts]
    m = ExactMatrix.from_rows(rows, QQ, len(S)) if rows else ExactMatrix.zero(0, len(S))
    _, null = rank_nullspace(m)
    if len(null) < 2:
        return False
    return all(any(v[j] for v in null) for j in range(len(S)))


def _restricted_growth(items: list, kmax: int, point_ok):
    """Set partitions of ``items`` (as class index lists) with at most kmax
    classes, pruned by ``point_ok(assign)`` whenever an item is placed."""
    assign: dict = {}

    def rec(i, k):
        if i == len(items):
            yield dict(assign), k
            return
        for c in range(min(k + 1, kmax)):
            assign[items[i]] = c
            if point_ok(assign, items[i]):
                yield from rec(i + 1, max(k, c + 1))
            del assign[items[i]]

    yield from rec(0, 0)


def enumerate_neighborly(
    a,
    max_support: int | None = None,
    max_classes: int | None = None,
    ceiling: int = DEFAULT_CEILING,
    strict: bool = False,
    poset: IntersectionPoset | None = None,
    min_support: int = 3,
) -> list[Partition]:
    """Neighborly partitions (up to relabeling) of eligible subarrangements.

    With ``strict=True`` only multinet-shaped partitions are produced: every
    point meeting two classes meets all of them, and two lines through a
    double point of the support share a class.  The incidence test is
    skipped in that mode (it discards nets whose classes meet at points of
    their own, e.g. ceva(3)); candidates are certified downstream instead.
    Candidate partial assignments are counted against ``ceiling``.
    """
    poset = _poset(a, poset)
    _require_rank3(a, poset)
    n = a.n
    max_support = n if max_support is None else min(max_support, n)
    kcap = max_classes if max_classes is not None else n
    out: list[Partition] = []
    counter = [0]

    def tick():
        counter[0] += 1
        if counter[0] > ceiling:
            raise SearchCeilingExceeded(counter[0], ceiling)

    for size in range(max(3, min_support), max_support + 1):
        for S in combinations(range(n), size):
            Sset = frozenset(S)
            if not strict and not incidence_eligible(a, Sset, poset):
                continue
            pts = _points(poset, Sset)
            if strict:
                out.extend(_strict_partitions(S, pts, kcap, tick))
            else:
                out.extend(_plain_partitions(S, pts, kcap, tick))
    return out


def _plain_partitions(S, pts, kcap, tick):
    multi = [X for X in pts if len(X) >= 3]
    by_last: dict = {}
    order = {h: i for i, h in enumerate(S)}
    for X in multi:
        by_last.setdefault(max(X, key=order.get), []).append(X)

    def ok(assign, h):
        tick()
        return all(not _point_violates(X, assign) for X in by_last.get(h, ()))

    res = []
    for assign, k in _restricted_growth(list(S), kcap, ok):
        if k >= 3:
            res.append(_to_partition(assign, k))
    return res


def _strict_partitions(S, pts, kcap, tick):
    # lines through a double point of the support are merged into blocks
    parent = {h: h for h in S}

    def find(h):
        while parent[h] != h:
            parent[h] = parent[parent[h]]
            h = parent[h]
        return h

    for X in pts:
        if len(X) == 2:
            u, v = sorted(X)
            parent[find(u)] = find(v)
    blocks: dict = {}
    for h in S:
        blocks.setdefault(find(h), []).append(h)
    reps = sorted(blocks, key=lambda r: min(blocks[r]))
    if len(reps) < 3:
        return []
    multi = [X for X in pts if len(X) >= 3]
    point_reps = [frozenset(find(h) for h in X) for X in multi]
    order = {r: i for i, r in enumerate(reps)}
    by_last: dict = {}
    for R in point_reps:
        by_last.setdefault(max(R, key=order.get), []).append(R)
    res = []
    for k in range(3, min(kcap, len(reps)) + 1):

        def ok(assign, r, k=k):
            tick()
            for R in by_last.get(r, ()):
                present = {assign[x] for x in R}
                if 1 < len(present) < k:
                    return False
            return True

        for assign, used in _restricted_growth(reps, k, ok):
            if used != k:
                continue
            # every point now meets one class or all k of them
            full = {h: assign[find(h)] for h in S}
            res.append(_to_partition(full, k))
    return res


def _to_partition(assign: dict, k: int) -> Partition:
    classes = [[] for _ in range(k)]
    for h, c in assign.items():
        classes[c].append(h)
    return Partition(tuple(tuple(sorted(c)) for c in classes))


# ---------------------------------------------------------------------------
# multinets


def _full_mults(a, mults) -> list[int]:
    if mults is None:
        return list(getattr(a, "multiplicities", None) or [1] * a.n)
    mults = [int(m) for m in mults]
    if len(mults) != a.n:
        raise PencilError("precondition", f"expected {a.n} multiplicities")
    if any(m < 1 for m in mults):
        raise PencilError("precondition", "multiplicities must be positive")
    return mults


def check_multinet(a, part, mults=None, poset: IntersectionPoset | None = None) -> MultinetReport:
    """Equal weighted class degrees, and equal weighted class counts at every
    point where lines of different classes meet.

    ``mults`` defaults to the arrangement's stored multiplicities.
    """
    poset = _poset(a, poset)
    _require_rank3(a, poset)
    part = _as_partition(part)
    _check_support(a, part)
    m = _full_mults(a, mults)
    cls = part.class_of()
    degs = [sum(m[h] for h in c) for c in part.classes]
    violations = []
    if len(set(degs)) != 1:
        violations.append({"type": "class-degree", "class_degrees": degs})
    for X in _points(poset, part.support):
        counts = [0] * len(part.classes)
        for h in X:
            counts[cls[h]] += m[h]
        if sum(1 for c in counts if c) >= 2 and len(set(counts)) != 1:
            violations.append({"type": "point", "flat": sorted(X), "counts": counts})
    ok = not violations
    return MultinetReport(ok, degs[0] if ok else None, degs, violations)


def search_multiplicities(a, part, max_mult: int = MAX_SEARCH_MULT, poset: IntersectionPoset | None = None):
    """First multiplicity vector (lexicographic, entries <= max_mult) making
    ``part`` a multinet, or None.  Hyperplanes off the support keep 1."""
    poset = _poset(a, poset)
    part = _as_partition(part)
    S = sorted(part.support)
    cls = part.class_of()
    pts = [X for X in _points(poset, part.support) if len({cls[h] for h in X}) >= 2]
    pos = {h: i for i, h in enumerate(S)}
    by_last: dict = {}
    for X in pts:
        by_last.setdefault(max(X, key=pos.get), []).append(X)
    last_of_class = {max(c, key=pos.get): j for j, c in enumerate(part.classes)}
    m = [1] * a.n

    def rec(i, degree):
        if i == len(S):
            return True
        h = S[i]
        for v in range(1, max_mult + 1):
            m[h] = v
            ok = True
            for X in by_last.get(h, ()):
                counts = [0] * len(part.classes)
                for g in X:
                    counts[cls[g]] += m[g]
                if len(set(counts)) != 1:
                    ok = False
                    break
            d = degree
            if ok and h in last_of_class:
                dj = sum(m[g] for g in part.classes[last_of_class[h]])
                if d is None:
                    d = dj
                elif d != dj:
                    ok = False
            if ok and rec(i + 1, d):
                return True
        m[h] = 1
        return False

    # the degree check needs classes completed in order; it is only applied
    # when a class's last line is placed, so partial states stay consistent
    if rec(0, None) and check_multinet(a, part, m, poset).ok:
        return list(m)
    return None


# ---------------------------------------------------------------------------
# pencils


@dataclass
class PencilCertificate:
    variables: tuple
    class_polys: list  # MultiPoly per class
    relations: list  # basis of {c : sum c_j Q_j = 0}
    span_dim: int
    multiplicities: list
    multinet_ok: bool

    @property
    def dependency(self) -> list:
        return self.relations[0] if len(self.relations) == 1 else None

    def identity(self) -> str:
        """The certified identity sum c_j Q_j = 0, printed term by term."""
        c = self.relations[0]
        parts = [f"({cj})*({q})" for cj, q in zip(c, self.class_polys) if cj]
        return " + ".join(parts) + " = 0"

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "class_polys": [str(q) for q in self.class_polys],
            "relations": [[str(x) for x in r] for r in self.relations],
            "span_dim": self.span_dim,
            "multinet": self.multinet_ok,
            "identity": self.identity(),
        }


def _require_realized(a):
    if not getattr(a, "is_realized", False):
        raise PencilError("precondition", "a rational realization is required (abstract matroid given)")


def _normalize(v):
    lead = next((x for x in v if x), None)
    return [Fraction(x) / lead for x in v] if lead else [Fraction(x) for x in v]


def _coeff_rows(polys):
    monos = sorted({e for p in polys for e in p.terms}, key=_glex_key)
    return monos, [[p.terms.get(mo, Fraction(0)) for p in polys] for mo in monos]


def class_polynomials(a, part, mults=None, variables=None) -> list[MultiPoly]:
    part = _as_partition(part)
    m = _full_mults(a, mults)
    forms = a.linear_forms(variables)
    out = []
    for c in part.classes:
        q = MultiPoly.const(forms[0].vars, 1)
        for h in c:
            q = q * forms[h] ** m[h]
        out.append(q)
    return out


def pencil_certificate(a, part, mults=None, poset: IntersectionPoset | None = None) -> PencilCertificate:
    """Expand the class products and certify that they span a pencil.

    Raises PencilError with kind "degenerate" when the span is a single
    curve and "no-pencil" when it has dimension above two.
    """
    _require_realized(a)
    if isinstance(part, Multinet):
        mults, part = part.multiplicities, part.partition
    part = _as_partition(part)
    _check_support(a, part)
    m = _full_mults(a, mults)
    report = check_multinet(a, part, m, poset)
    Q = class_polynomials(a, part, m)
    _, rows = _coeff_rows(Q)
    mat = ExactMatrix.from_rows(rows, QQ, len(Q))
    rk, null = rank_nullspace(mat)
    if rk == 1:
        raise PencilError("degenerate", "class curves are proportional (span dimension 1)")
    if rk > 2:
        raise PencilError("no-pencil", f"class curves span dimension {rk}, no pencil")
    rels = [_normalize(v) for v in null]
    return PencilCertificate(Q[0].vars, Q, rels, rk, m, report.ok)


def singular_fibers(cert: PencilCertificate) -> list[tuple]:
    """Parameters [a : b] with Q_j = a Q_1 + b Q_2 (up to scale), one per class."""
    Q = cert.class_polys
    out = []
    for q in Q:
        _, rows = _coeff_rows([Q[0], Q[1], q])
        _, null = rank_nullspace(ExactMatrix.from_rows(rows, QQ, 3))
        # a Q1 + b Q2 - c q = 0 with c != 0
        v = next(v for v in null if v[2])
        a_, b_ = v[0] / v[2], v[1] / v[2]
        out.append(tuple(_normalize([a_, b_])))
    return out


def pencil_member(cert: PencilCertificate, a_, b_) -> MultiPoly:
    return cert.class_polys[0] * Fraction(a_) + cert.class_polys[1] * Fraction(b_)


# ---------------------------------------------------------------------------
# critical loci of master functions


def critical_equations(a, weights, family, mults=None) -> list[MultiPoly]:
    """N_v = sum_H w_H m_H (d alpha_H / d v) prod_{H' != H} alpha_H', pulled back
    along ``family`` (one polynomial per coordinate, in a common ring)."""
    _require_realized(a)
    fam = list(family.values()) if isinstance(family, dict) else list(family)
    if len(fam) != a.ambient_dim or not all(isinstance(f, MultiPoly) for f in fam):
        raise PencilError("precondition", f"candidate must be {a.ambient_dim} polynomials in the family parameters")
    ring = fam[0].vars
    if any(f.vars != ring for f in fam):
        raise PencilError("precondition", "candidate coordinates must share one parameter ring")
    m = _full_mults(a, mults)
    w = []
    for x in weights:
        if isinstance(x, MultiPoly):
            if x.vars != ring:
                raise PencilError("precondition", "weights must live in the candidate's ring")
            w.append(x)
        else:
            w.append(MultiPoly.const(ring, x))
    if len(w) != a.n:
        raise PencilError("precondition", f"expected {a.n} weights")
    total = MultiPoly(ring, {})
    for wh, mh in zip(w, m):
        total = total + wh * mh
    if not total.is_zero():
        raise PencilError("precondition", "weights times multiplicities must sum to zero")
    pulled = []
    for v in a.normals:
        acc = MultiPoly(ring, {})
        for c, f in zip(v, fam):
            if c:
                acc = acc + f * c
        pulled.append(acc)
    # prefix/suffix products give prod over H' != H cheaply
    n = a.n
    one = MultiPoly.const(ring, 1)
    pre = [one] * (n + 1)
    for i in range(n):
        pre[i + 1] = pre[i] * pulled[i]
    suf = [one] * (n + 1)
    for i in range(n - 1, -1, -1):
        suf[i] = suf[i + 1] * pulled[i]
    others = [pre[i] * suf[i + 1] for i in range(n)]
    eqs = []
    for coord in range(a.ambient_dim):
        acc = MultiPoly(ring, {})
        for h in range(n):
            c = a.normals[h][coord]
            if c and not w[h].is_zero():
                acc = acc + w[h] * (others[h] * (c * m[h]))
        eqs.append(acc)
    return eqs


def critical_locus_check(a, weights, family, mults=None) -> bool:
    """True iff the parametrized family lies in the critical set of the
    master function prod alpha_H^(w_H m_H), identically in all parameters."""
    return all(e.is_zero() for e in critical_equations(a, weights, family, mults))


def diagonal_conic_family(coeffs: Sequence[MultiPoly], point: Sequence, params: Sequence[str] = ("s", "t")):
    """Rational parametrization of c_1 x^2 + c_2 y^2 + c_3 z^2 = 0 through ``point``.

    Uses projection from the point: v = q(D) P - 2 B(P, D) D with D = (s, t, 0).
    The coefficients are polynomials whose ring must contain ``params``.
    """
    ring = coeffs[0].vars
    s, t = (MultiPoly.var(ring, p) for p in params)
    zero = MultiPoly(ring, {})
    D = [s, t, zero]
    P = [Fraction(x) for x in point]
    qD = zero
    BPD = zero
    for c, d, p in zip(coeffs, D, P):
        qD = qD + c * d * d
        BPD = BPD + c * d * p
    return [qD * p - BPD * d * 2 for p, d in zip(P, D)]


def line_family(p1: Sequence, p2: Sequence, ring: Sequence[str], params: Sequence[str] = ("s", "t")):
    """The projective line through two points, v = s p1 + t p2."""
    s, t = (MultiPoly.var(ring, p) for p in params)
    return [s * Fraction(x) + t * Fraction(y) for x, y in zip(p1, p2)]


def ceva2_master_setup():
    """Weights and critical conic for prod over classes of (class quadric)^weight
    on x +- y, y +- z, z +- x, class weights (alpha, beta, -alpha-beta).

    Returns (arrangement, weights, family) in the ring (s, t, alpha, beta).
    """
    from .catalog import ceva

    a = ceva(2)
    ring = ("s", "t", "alpha", "beta")
    al, be = MultiPoly.var(ring, "alpha"), MultiPoly.var(ring, "beta")
    ga = -al - be
    class_weight = {"x": al, "y": be, "z": ga}
    w = [class_weight[lab[0]] for lab in a.labels]
    # [x^2-y^2 : y^2-z^2 : z^2-x^2] = [alpha : beta : gamma] is the conic
    # beta x^2 + gamma y^2 + alpha z^2 = 0, which passes through (1, 1, 1)
    fam = diagonal_conic_family([be, ga, al], (1, 1, 1))
    return a, w, fam

