"""Exact arithmetic: the rational field, prime fields, dense matrices over them,
and sparse multivariate polynomials with rational coefficients.

No floating point is used anywhere.  Field elements are plain Python values:
``Fraction`` over QQ and ``int`` in ``range(p)`` over GF(p).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Field context.  ``characteristic`` is 0 for QQ."""

    characteristic: int = 0

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, x):
        raise NotImplementedError

    def reduce(self, x):
        return x


class RationalField(Field):
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.characteristic = p
        self.p = p

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no reduction mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def reduce(self, x):
        return x % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(name: str, p: int | None = None) -> Field:
    """``"q"`` gives QQ, ``"fp"`` gives GF(p)."""
    if name in ("q", "Q", "QQ"):
        return QQ
    if name in ("fp", "Fp", "GF"):
        if p is None:
            raise ValueError("prime field requires p")
        return GF(p)
    raise ValueError(f"unknown field {name!r}")


# ---------------------------------------------------------------------------
# sparse row reduction

Row = dict  # column index -> nonzero field element


def _as_sparse(rows: Iterable[Sequence], field: Field) -> list[Row]:
    out = []
    for r in rows:
        d = {}
        for j, x in enumerate(r):
            x = field(x)
            if x:
                d[j] = x
        out.append(d)
    return out


def echelon(rows: Iterable[Row], field: Field, col_order: Sequence[int] | None = None):
    """Fully reduced row echelon form of sparse rows.

    Returns ``pivots`` where ``pivots[c]`` is the reduced row whose pivot
    (coefficient 1) sits in column ``c``; no other pivot row has an entry in
    a pivot column.  ``col_order`` ranks columns for pivot choice
    (earlier = preferred); by default the smallest column index wins.
    """
    rank_of = None
    if col_order is not None:
        rank_of = {c: i for i, c in enumerate(col_order)}
    if field == QQ:
        return _echelon_integral(rows, rank_of)
    pivots: dict[int, Row] = {}
    red = field.reduce
    for r in rows:
        r = {c: v for c, v in r.items() if v}
        # pivot rows carry no other pivot column, so one pass suffices
        for c in [c for c in r if c in pivots]:
            f = r[c]
            for cc, vv in pivots[c].items():
                nv = red(r.get(cc, 0) - f * vv)
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if not r:
            continue
        if rank_of is None:
            c0 = min(r)
        else:
            c0 = min(r, key=lambda c: rank_of.get(c, len(rank_of) + c))
        inv = field.inv(r[c0])
        r = {c: red(v * inv) for c, v in r.items()}
        # back-substitute into existing pivot rows
        for pc, prow in pivots.items():
            f = prow.get(c0)
            if f:
                for cc, vv in r.items():
                    nv = red(prow.get(cc, 0) - f * vv)
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivots[c0] = r
    return pivots


def _primitive(r: dict) -> dict:
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            return r
    if g > 1:
        return {c: v // g for c, v in r.items()}
    return r


def _integral_row(r: Row) -> dict:
    den = 1
    for v in r.values():
        d = getattr(v, "denominator", 1)
        if d != 1:
            den = den * d // gcd(den, d)
    return _primitive({c: int(v * den) for c, v in r.items() if v})


def _combine(r: dict, a: int, p: dict, b: int) -> dict:
    # a*r - b*p, made primitive
    out = {c: a * v for c, v in r.items()} if a != 1 else dict(r)
    for c, v in p.items():
        nv = out.get(c, 0) - b * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return _primitive(out)


def _echelon_integral(rows: Iterable[Row], rank_of, reduce: bool = True) -> dict[int, Row]:
    # fraction-free elimination over ZZ; pivot rows only clear earlier pivots,
    # so eliminating in insertion order never revisits a column
    order: dict[int, int] = {}
    pivots: dict[int, dict] = {}
    for r in rows:
        r = _integral_row(r)
        while r:
            hits = [(order[c], c) for c in r if c in pivots]
            if not hits:
                break
            heapq.heapify(hits)
            seen = set()
            while hits:
                _, c = heapq.heappop(hits)
                if c in seen or c not in r:
                    continue
                seen.add(c)
                p = pivots[c]
                lead, f = p[c], r[c]
                g = gcd(lead, f)
                r = _combine(r, lead // g, p, f // g)
                for cc in p:
                    if cc in pivots and cc not in seen and cc in r:
                        heapq.heappush(hits, (order[cc], cc))
            break
        if not r:
            continue
        if rank_of is None:
            c0 = min(r)
        else:
            c0 = min(r, key=lambda c: rank_of.get(c, len(rank_of) + c))
        order[c0] = len(order)
        pivots[c0] = r
    if not reduce:
        return pivots
    # back substitution, latest pivot first
    seq = sorted(pivots, key=order.__getitem__, reverse=True)
    for i, c in enumerate(seq):
        p = pivots[c]
        for c2 in seq[i + 1:]:
            q = pivots[c2]
            f = q.get(c)
            if f:
                lead = p[c]
                g = gcd(lead, f)
                pivots[c2] = _combine(q, lead // g, p, f // g)
    out: dict[int, Row] = {}
    for c, p in pivots.items():
        lead = p[c]
        out[c] = {cc: Fraction(v, lead) for cc, v in p.items()}
    return out


def sparse_rank(rows: Iterable[Row], field: Field) -> int:
    """Rank only; forward elimination without back substitution."""
    if field == QQ:
        return len(_echelon_integral(rows, None, reduce=False))
    pivots: dict[int, Row] = {}
    red = field.reduce
    for r in rows:
        r = {c: v for c, v in r.items() if v}
        while r:
            c0 = min(r)
            p = pivots.get(c0)
            if p is None:
                inv = field.inv(r[c0])
                pivots[c0] = {c: red(v * inv) for c, v in r.items()}
                break
            f = r[c0]
            for cc, vv in p.items():
                nv = red(r.get(cc, 0) - f * vv)
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
    return len(pivots)


def nullspace_from_pivots(pivots: dict[int, Row], ncols: int, field: Field) -> list[list]:
    """Basis of {v : M v = 0} given the reduced echelon form of M's rows."""
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    one = field.one
    zero = field.zero
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for pc, prow in pivots.items():
            x = prow.get(f)
            if x:
                v[pc] = field.reduce(-x)
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# dense matrices


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple
    ncols: int
    field: Field = QQ

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], field: Field = QQ, ncols: int | None = None):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(rows, ncols, field)

    @classmethod
    def zero(cls, m: int, n: int, field: Field = QQ):
        return cls.from_rows([[0] * n for _ in range(m)], field, n)

    @classmethod
    def identity(cls, n: int, field: Field = QQ):
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], field, n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def __matmul__(self, v):
        if isinstance(v, ExactMatrix):
            cols = list(zip(*v.rows)) if v.rows else [()] * v.ncols
            return ExactMatrix.from_rows(
                [[self.field.reduce(sum(a * b for a, b in zip(r, c))) for c in cols] for r in self.rows],
                self.field,
                v.ncols,
            )
        return [self.field.reduce(sum(a * self.field(b) for a, b in zip(r, v))) for r in self.rows]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(list(zip(*self.rows)) if self.rows else [], self.field, self.nrows)

    def sparse_rows(self) -> list[Row]:
        return [{j: x for j, x in enumerate(r) if x} for r in self.rows]

    def rank(self) -> int:
        return sparse_rank(self.sparse_rows(), self.field)

    def nullspace(self) -> list[list]:
        return nullspace_from_pivots(echelon(self.sparse_rows(), self.field), self.ncols, self.field)


def rank_nullspace(m: ExactMatrix) -> tuple[int, list[list]]:
    """Rank of ``m`` and a basis of its right kernel."""
    piv = echelon(m.sparse_rows(), m.field)
    return len(piv), nullspace_from_pivots(piv, m.ncols, m.field)


def rank(rows: Iterable[Sequence], field: Field = QQ) -> int:
    return sparse_rank(_as_sparse(rows, field), field)


def in_span(vectors: Sequence[Sequence], v: Sequence, field: Field = QQ) -> bool:
    r0 = rank(vectors, field)
    return rank(list(vectors) + [v], field) == r0


def same_span(a: Sequence[Sequence], b: Sequence[Sequence], field: Field = QQ) -> bool:
    ra = rank(a, field)
    return ra == rank(b, field) == rank(list(a) + list(b), field)


def clear_denominators(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (same sign)."""
    from math import gcd, lcm

    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


# ---------------------------------------------------------------------------
# univariate integer polynomials (coefficient lists, constant term first)


def upoly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return upoly_trim(out)


def upoly_trim(a: Sequence) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def upoly_add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return upoly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def upoly_eval(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def upoly_str(a: Sequence, var: str = "t") -> str:
    """Ascending-degree rendering, e.g. ``-6t + 11t^2 - 6t^3 + t^4``."""
    parts = []
    for i, c in enumerate(a):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and abs(c) == 1:
            coef = "-" if c < 0 else ""
        else:
            coef = str(c)
        parts.append(coef + mono)
    if not parts:
        return "0"
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s


# power series truncated at degree N (lists of length N + 1)


def series_mul(a: Sequence, b: Sequence, N: int) -> list:
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def series_inverse(a: Sequence, N: int) -> list:
    if not a or a[0] == 0:
        raise ZeroDivisionError("series not invertible")
    a = list(a) + [0] * (N + 1 - len(a))
    inv = [Fraction(0)] * (N + 1)
    inv[0] = Fraction(1) / a[0]
    for k in range(1, N + 1):
        s = sum(a[j] * inv[k - j] for j in range(1, k + 1))
        inv[k] = -s * inv[0]
    return [int(x) if x.denominator == 1 else x for x in inv]


def series_pow(a: Sequence, e: int, N: int) -> list:
    """``a**e`` mod t^(N+1); negative ``e`` allowed when a[0] is a unit."""
    base = list(a) + [0] * max(0, N + 1 - len(a))
    base = base[: N + 1]
    if e < 0:
        base = series_inverse(base, N)
        e = -e
    out = [1] + [0] * N
    while e:
        if e & 1:
            out = series_mul(out, base, N)
        base = series_mul(base, base, N)
        e >>= 1
    return out


def lcs_product(phi: Sequence[int], N: int, start: int = 1) -> list:
    """prod_{k>=start} (1 - t^k)^{phi_k}, with phi[0] = phi_1, truncated at t^N."""
    out = [1] + [0] * N
    for k in range(start, N + 1):
        e = phi[k - 1] if k - 1 < len(phi) else 0
        if e:
            f = [0] * (N + 1)
            f[0] = 1
            f[k] = -1
            out = series_mul(out, series_pow(f, e, N), N)
    return out


def lcs_exponents(series: Sequence, N: int) -> list[int]:
    """Invert ``series = prod_k (1 - t^k)^{phi_k}`` for phi_1..phi_N.

    Peels off one factor per degree: after dividing out the factors of
    degree < k, the coefficient of t^k is -phi_k.
    """
    s = [Fraction(x) for x in list(series)[: N + 1]] + [Fraction(0)] * max(0, N + 1 - len(series))
    if s[0] != 1:
        raise ValueError("series must have constant term 1")
    phi = []
    for k in range(1, N + 1):
        e = -s[k]
        if e.denominator != 1:
            raise ValueError("series is not of the form prod (1-t^k)^phi_k")
        e = int(e)
        phi.append(e)
        if e:
            f = [0] * (N + 1)
            f[0] = 1
            f[k] = -1
            s = series_mul(s, series_pow(f, -e, N), N)
    return phi


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


def _glex_key(e: tuple) -> tuple:
    return (sum(e), e)


class MultiPoly:
    """Polynomial with rational coefficients in named variables.

    ``terms`` maps exponent tuples to nonzero ``Fraction`` coefficients.
    Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: dict | None = None):
        self.vars = tuple(variables)
        t = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent length does not match variable count")
                c = Fraction(c)
                if c:
                    t[e] = c
        self.terms = t

    # construction -----------------------------------------------------
    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p.vars = variables
        p.terms = terms
        return p

    @classmethod
    def const(cls, variables: Sequence[str], c) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list["MultiPoly"]:
        return [cls.var(variables, v) for v in variables]

    @classmethod
    def linear_form(cls, variables: Sequence[str], coeffs: Sequence) -> "MultiPoly":
        variables = tuple(variables)
        n = len(variables)
        t = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                t[tuple(e)] = c
        return cls(variables, t)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError("variable lists differ")
            return other
        return MultiPoly.const(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MultiPoly._raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            if not c:
                return MultiPoly._raw(self.vars, {})
            return MultiPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return MultiPoly._raw(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = MultiPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        return self == self._coerce(other)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure --------------------------------------------------------
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def diff(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return MultiPoly._raw(self.vars, t)

    def evaluate(self, point: dict | Sequence):
        if not isinstance(point, dict):
            point = dict(zip(self.vars, point))
        vals = [Fraction(point[v]) for v in self.vars]
        acc = Fraction(0)
        for e, c in self.terms.items():
            m = c
            for x, k in zip(vals, e):
                if k:
                    m *= x**k
            acc += m
        return acc

    def substitute(self, images: dict, variables: Sequence[str] | None = None) -> "MultiPoly":
        """Replace each variable by a polynomial in ``variables``.

        Variables missing from ``images`` are kept (and must then exist in
        the target ring).
        """
        if variables is None:
            variables = next(iter(p.vars for p in images.values() if isinstance(p, MultiPoly)), self.vars)
        variables = tuple(variables)
        imgs = []
        for v in self.vars:
            if v in images:
                x = images[v]
                imgs.append(x if isinstance(x, MultiPoly) else MultiPoly.const(variables, x))
            else:
                imgs.append(MultiPoly.var(variables, v))
        powers: list[dict] = [{} for _ in imgs]
        out = MultiPoly._raw(variables, {})
        for e, c in self.terms.items():
            m = MultiPoly.const(variables, c)
            for i, k in enumerate(e):
                if k:
                    pk = powers[i].get(k)
                    if pk is None:
                        pk = imgs[i] ** k
                        powers[i][k] = pk
                    m = m * pk
            out = out + m
        return out

    def coefficient_vector(self, monomials: Sequence[tuple]) -> list[Fraction]:
        return [self.terms.get(m, Fraction(0)) for m in monomials]

    def leading(self) -> tuple:
        e = max(self.terms, key=_glex_key)
        return e, self.terms[e]

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient of an exact division; raises if ``other`` does not divide."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = other.leading()
        rem = self
        q: dict = {}
        while rem.terms:
            e, c = rem.leading()
            d = tuple(a - b for a, b in zip(e, le))
            if min(d) < 0:
                raise ArithmeticError("inexact polynomial division")
            f = c / lc
            q[d] = q.get(d, 0) + f
            rem = rem - MultiPoly._raw(self.vars, {d: f}) * other
        return MultiPoly(self.vars, q)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_glex_key):
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            if mono:
                if c == 1:
                    s = mono
                elif c == -1:
                    s = "-" + mono
                else:
                    s = f"{c}*{mono}"
            else:
                s = str(c)
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def monomials_of_degree(nvars: int, d: int) -> list[tuple]:
    """Exponent vectors of total degree ``d`` in graded-lex order."""
    out = []

    def rec(prefix, left, k):
        if k == nvars - 1:
            out.append(tuple(prefix + [left]))
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a, k + 1)

    if nvars == 0:
        return [()] if d == 0 else []
    rec([], d, 0)
    return out


def poly_linear_dependence(polys: Sequence[MultiPoly]) -> list[Fraction] | None:
    """A nonzero rational ``c`` with ``sum c_j * polys_j == 0``, or None.

    The returned vector is normalised so its first nonzero entry is 1 and
    is re-verified by exact expansion before returning.
    """
    if not polys:
        raise ValueError("empty polynomial list")
    variables = polys[0].vars
    if any(p.vars != variables for p in polys):
        raise ValueError("polynomials must share one variable list")
    monos = sorted({e for p in polys for e in p.terms}, key=_glex_key)
    # columns = polynomials, rows = monomials
    rows = [[p.terms.get(m, Fraction(0)) for p in polys] for m in monos]
    m = ExactMatrix.from_rows(rows, QQ, len(polys)) if rows else ExactMatrix.zero(0, len(polys))
    _, null = rank_nullspace(m)
    if not null:
        return None
    c = null[0]
    lead = next(x for x in c if x)
    c = [x / lead for x in c]
    total = MultiPoly._raw(variables, {})
    for cj, p in zip(c, polys):
        total = total + p * cj
    if not total.is_zero():  # pragma: no cover - guarded by construction
        raise ArithmeticError("dependency failed verification")
    return c


# ---------------------------------------------------------------------------
# rank over the rational function field QQ(params)


def function_field_rank(matrix: Sequence[Sequence[MultiPoly]]) -> int:
    """Rank over the fraction field of the polynomial ring, by Bareiss
    fraction-free elimination (all divisions are exact)."""
    M = [list(r) for r in matrix]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    prev = None
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        best = None
        for i in range(r, nrows):
            if not M[i][c].is_zero():
                size = len(M[i][c].terms)
                if best is None or size < best:
                    piv, best = i, size
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, nrows):
            a = M[i][c]
            for j in range(c + 1, ncols):
                v = p * M[i][j] - a * M[r][j]
                if prev is not None and not v.is_zero():
                    v = v.exact_div(prev)
                M[i][j] = v
            M[i][c] = MultiPoly._raw(p.vars, {})
        prev = p
        r += 1
    return r


def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse ``+ - * ^ **``, parentheses, rationals and the given variable names."""
    import ast

    variables = tuple(variables)
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MultiPoly.const(variables, node.value)
        if isinstance(node, ast.Name):
            if node.id not in variables:
                raise ValueError(f"unknown variable {node.id!r} (expected one of {', '.join(variables)})")
            return MultiPoly.var(variables, node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int) and e.value >= 0):
                    raise ValueError("exponents must be nonnegative integers")
                return ev(node.left) ** e.value
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.degree() > 0 or right.is_zero():
                    raise ValueError("only division by nonzero constants is allowed")
                return left * (1 / right.terms[(0,) * len(variables)])
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return ev(tree)
