"""Orlik-Solomon algebras: NBC bases and exact multiplication.

Monomials are increasing tuples of 0-based hyperplane indices.  Normal forms
are computed once over the integers (the NBC monomials form a Z-basis) and
reduced into the working field on demand, so a single algebra object serves
QQ and every GF(p).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .arith import QQ, Field
from .arrangement import IntersectionPoset, build_poset


def merge_sign(a: Sequence[int], b: Sequence[int]) -> int:
    """Sign of the permutation sorting the concatenation ``a + b`` (disjoint, each sorted)."""
    inv = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inv += j
    return -1 if inv & 1 else 1


def merge(a: Sequence[int], b: Sequence[int]):
    """(sign, sorted union) of e_a * e_b, or None if they overlap."""
    if set(a) & set(b):
        return None
    return merge_sign(a, b), tuple(sorted((*a, *b)))


def boundary(S: Sequence[int]) -> dict:
    """∂e_S = sum_j (-1)^j e_{S minus s_j}."""
    return {S[:j] + S[j + 1 :]: (-1) ** j for j in range(len(S))}


class OSAlgebra:
    """The Orlik-Solomon algebra of an arrangement (or simple matroid).

    The hyperplane order fixed by the input is the order used for broken
    circuits; it is echoed as ``order``.
    """

    def __init__(self, poset: IntersectionPoset, field: Field = QQ):
        self.poset = poset
        self.arrangement = poset.arrangement
        self.n = poset.n
        self.rank = poset.rank
        self.field = field
        self.order = tuple(self.arrangement.labels)
        self._nf: dict = {}
        self.basis = self._nbc_basis()
        self.index = [{S: k for k, S in enumerate(B)} for B in self.basis]

    # structure -------------------------------------------------------
    def _min_closure(self, T) -> int:
        return min(self.arrangement.closure(T))

    def is_independent(self, S) -> bool:
        return self.arrangement.subrank(S) == len(S)

    def is_nbc(self, S: Sequence[int]) -> bool:
        if not self.is_independent(S):
            return False
        return all(self._min_closure(S[i:]) == S[i] for i in range(len(S)))

    def _nbc_basis(self) -> list[list[tuple]]:
        basis = [[()]]
        for k in range(1, self.rank + 1):
            nxt = []
            for S in basis[-1]:
                start = S[-1] + 1 if S else 0
                for x in range(start, self.n):
                    T = S + (x,)
                    if self.is_nbc(T):
                        nxt.append(T)
            if not nxt:
                break
            basis.append(nxt)
        while len(basis) < self.rank + 1:
            basis.append([])
        return basis

    def dim(self, i: int) -> int:
        return len(self.basis[i]) if 0 <= i < len(self.basis) else 0

    @property
    def dims(self) -> list[int]:
        return [len(B) for B in self.basis]

    def hilbert_series(self) -> list[int]:
        return self.dims

    def with_field(self, field: Field) -> "OSAlgebra":
        other = object.__new__(OSAlgebra)
        other.__dict__.update(self.__dict__)
        other.field = field
        # cached matrices are field independent (integer), share them
        return other

    # normal forms ----------------------------------------------------
    def _broken_circuit(self, S: tuple):
        """(B, m): a broken circuit B inside S and the element m completing it."""
        a = self.arrangement
        for i in range(len(S)):
            T = S[i:]
            m = self._min_closure(T)
            if m < S[i]:
                B = list(T)
                for x in list(B):
                    trial = [y for y in B if y != x]
                    if trial and m in a.closure(trial):
                        B = trial
                return tuple(B), m
        return None

    def normal_form(self, S: Sequence[int]) -> dict:
        """Integer coefficients of e_S in the NBC basis of its degree."""
        S = tuple(S)
        got = self._nf.get(S)
        if got is not None:
            return got
        if len(S) > self.rank or not self.is_independent(S):
            out: dict = {}
        elif len(S) <= len(self.basis) - 1 and S in self.index[len(S)]:
            out = {S: 1}
        else:
            B, m = self._broken_circuit(S)
            rest = tuple(x for x in S if x not in B)
            eps = merge_sign(B, rest)
            C = tuple(sorted(B + (m,)))
            out = {}
            # e_B = sum_{j >= 1} (-1)^(j+1) e_{C - c_j}
            for j in range(1, len(C)):
                face = C[:j] + C[j + 1 :]
                mm = merge(face, rest)
                if mm is None:
                    continue
                sgn, U = mm
                coef = eps * (-1) ** (j + 1) * sgn
                for V, c in self.normal_form(U).items():
                    v = out.get(V, 0) + coef * c
                    if v:
                        out[V] = v
                    else:
                        out.pop(V, None)
        self._nf[S] = out
        return out

    def monomial_product(self, S: Sequence[int], T: Sequence[int]) -> dict:
        mm = merge(S, T)
        if mm is None:
            return {}
        sgn, U = mm
        return {V: sgn * c for V, c in self.normal_form(U).items()}

    # multiplication matrices ------------------------------------------
    @cached_property
    def _left_tables(self) -> list:
        """tables[i][h][k] = integer column {row: coeff} of e_h * (basis_i[k])."""
        tables = []
        for i in range(self.rank):
            per_h = []
            target = self.index[i + 1]
            for h in range(self.n):
                cols = []
                for S in self.basis[i]:
                    col = {}
                    for V, c in self.monomial_product((h,), S).items():
                        col[target[V]] = c
                    cols.append(col)
                per_h.append(cols)
            tables.append(per_h)
        return tables

    def left_mult_rows(self, a: Sequence, i: int, field: Field | None = None) -> list[dict]:
        """Sparse rows of mu_a: A^i -> A^(i+1), a = sum a_h e_h."""
        F = field or self.field
        rows: list[dict] = [dict() for _ in range(self.dim(i + 1))]
        if i < 0 or i >= self.rank:
            return rows
        tab = self._left_tables[i]
        for h, ah in enumerate(a):
            # integers stay integers over QQ; the row reducers accept both
            ah = ah if (F == QQ and isinstance(ah, int)) else F(ah)
            if not ah:
                continue
            for k, col in enumerate(tab[h]):
                for r, c in col.items():
                    v = F.reduce(rows[r].get(k, 0) + ah * c)
                    if v:
                        rows[r][k] = v
                    else:
                        rows[r].pop(k, None)
        return rows

    def left_mult_tensor(self, i: int):
        """Integer array T[h, r, k]: coefficient of basis_{i+1}[r] in e_h * basis_i[k]."""
        import numpy as np

        T = np.zeros((self.n, self.dim(i + 1), self.dim(i)), dtype=np.int64)
        if 0 <= i < self.rank:
            for h, cols in enumerate(self._left_tables[i]):
                for k, col in enumerate(cols):
                    for r, c in col.items():
                        T[h, r, k] = c
        return T

    # elements --------------------------------------------------------
    def element(self, degree: int, coeffs: Sequence) -> "OSElement":
        if len(coeffs) != self.dim(degree):
            raise ValueError(f"degree {degree} needs {self.dim(degree)} coefficients")
        return OSElement(self, degree, tuple(self.field(c) for c in coeffs))

    def monomial(self, S: Sequence[int]) -> "OSElement":
        """The class of e_S (indices 0-based), in normal form."""
        S = tuple(S)
        k = len(S)
        srt = tuple(sorted(S))
        if len(set(S)) < k:
            return self.zero(k)
        # sign of sorting S
        sgn = 1
        lst = list(S)
        for i in range(len(lst)):
            for j in range(i + 1, len(lst)):
                if lst[i] > lst[j]:
                    sgn = -sgn
        vec = [self.field.zero] * self.dim(k)
        for V, c in self.normal_form(srt).items():
            vec[self.index[k][V]] = self.field(sgn * c)
        return OSElement(self, k, tuple(vec))

    def gen(self, h: int) -> "OSElement":
        return self.monomial((h,))

    def degree_one(self, a: Sequence) -> "OSElement":
        return self.element(1, a)

    def zero(self, degree: int) -> "OSElement":
        return OSElement(self, degree, tuple([self.field.zero] * self.dim(degree)))

    def one(self) -> "OSElement":
        return OSElement(self, 0, (self.field.one,))


@dataclass(frozen=True)
class OSElement:
    algebra: OSAlgebra
    degree: int
    coeffs: tuple

    def __add__(self, other: "OSElement") -> "OSElement":
        if self.degree != other.degree:
            raise ValueError("only homogeneous elements of equal degree can be added")
        F = self.algebra.field
        return OSElement(self.algebra, self.degree, tuple(F.reduce(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        F = self.algebra.field
        return OSElement(self.algebra, self.degree, tuple(F.reduce(-a) for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "OSElement":
        F = self.algebra.field
        c = F(c)
        return OSElement(self.algebra, self.degree, tuple(F.reduce(c * a) for a in self.coeffs))

    def __mul__(self, other: "OSElement") -> "OSElement":
        return multiply(self, other)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self) -> dict:
        B = self.algebra.basis[self.degree] if self.degree < len(self.algebra.basis) else []
        return {S: c for S, c in zip(B, self.coeffs) if c}

    def __str__(self):
        t = self.terms()
        if not t:
            return "0"
        lab = self.algebra.arrangement.labels
        return " + ".join(f"{c}*e[{','.join(lab[i] for i in S)}]" for S, c in t.items())


def build_os(p: IntersectionPoset | object, field: Field = QQ) -> OSAlgebra:
    if not isinstance(p, IntersectionPoset):
        p = build_poset(p)
    return OSAlgebra(p, field)


def multiply(x: OSElement, y: OSElement) -> OSElement:
    A = x.algebra
    if y.algebra is not A and y.algebra.poset is not A.poset:
        raise ValueError("elements belong to different algebras")
    F = A.field
    deg = x.degree + y.degree
    if deg > A.rank:
        return OSElement(A, deg, ())
    out = [F.zero] * A.dim(deg)
    idx = A.index[deg]
    for S, a in x.terms().items():
        for T, b in y.terms().items():
            ab = F.reduce(a * b)
            for V, c in A.monomial_product(S, T).items():
                k = idx[V]
                out[k] = F.reduce(out[k] + ab * c)
    return OSElement(A, deg, tuple(out))


def hilbert_series(A: OSAlgebra) -> list[int]:
    return A.hilbert_series()
