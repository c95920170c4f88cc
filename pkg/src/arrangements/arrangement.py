"""Central arrangements, their intersection posets and characteristic polynomials.

Two kinds of input are supported.  :class:`Arrangement` carries rational
normal vectors; :class:`AbstractMatroid` carries only a rank function (used
for the Hessian and Ceva configurations, which need roots of unity to be
realized).  Everything in this module, and the Orlik-Solomon, resonance and
Lie-algebra layers built on it, only ever asks for ranks of subsets, so both
kinds are interchangeable there.

Hyperplanes are indexed from 0 internally; labels are what users see.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .arith import QQ, ExactMatrix, rank as mat_rank, rank_nullspace, upoly_eval, upoly_str


class ArrangementError(ValueError):
    """Invalid arrangement data or an operation that needs a realization."""


def _proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    return mat_rank([u, v], QQ) < 2


class _Base:
    n: int
    labels: tuple
    multiplicities: tuple
    is_realized = False

    def subrank(self, subset: Iterable[int]) -> int:
        raise NotImplementedError

    @property
    def rank(self) -> int:
        return self.subrank(range(self.n))

    def closure(self, subset: Iterable[int]) -> frozenset:
        s = frozenset(subset)
        r = self.subrank(s)
        return frozenset(h for h in range(self.n) if h in s or self.subrank(s | {h}) == r)

    def index_of(self, key) -> int:
        """Resolve a label or a 1-based index string/int to a 0-based index."""
        if isinstance(key, int):
            if not 1 <= key <= self.n:
                raise ArrangementError(f"hyperplane index {key} out of range 1..{self.n}")
            return key - 1
        key = str(key).strip()
        if key in self.labels:
            return self.labels.index(key)
        if key.isdigit() and 1 <= int(key) <= self.n:
            return int(key) - 1
        raise ArrangementError(f"unknown hyperplane {key!r}")

    def fingerprint(self) -> dict:
        p = build_poset(self)
        return {
            "n": self.n,
            "ambient_dim": self.ambient_dim,
            "rank": p.rank,
            "flat_census": p.census(),
        }


class Arrangement(_Base):
    """A central arrangement with rational normals.

    ``normals[i]`` is the coefficient vector of the linear form defining
    hyperplane ``i``.  Repeated hyperplanes are never stored twice: use
    ``multiplicities`` instead.
    """

    is_realized = True

    def __init__(
        self,
        ambient_dim: int,
        normals: Sequence[Sequence],
        multiplicities: Sequence[int] | None = None,
        labels: Sequence[str] | None = None,
    ):
        if ambient_dim < 1:
            raise ArrangementError("ambient dimension must be at least 1")
        norms = []
        for v in normals:
            v = tuple(Fraction(x) for x in v)
            if len(v) != ambient_dim:
                raise ArrangementError(f"normal {v} does not have length {ambient_dim}")
            if not any(v):
                raise ArrangementError("zero normal vector")
            norms.append(v)
        for i, j in combinations(range(len(norms)), 2):
            if _proportional(norms[i], norms[j]):
                raise ArrangementError(
                    f"hyperplanes {i + 1} and {j + 1} coincide; use a multiplicity instead"
                )
        n = len(norms)
        if multiplicities is None:
            multiplicities = [1] * n
        if len(multiplicities) != n or any(int(m) < 1 for m in multiplicities):
            raise ArrangementError("multiplicities must be positive integers, one per hyperplane")
        if labels is None:
            labels = [str(i + 1) for i in range(n)]
        if len(labels) != n or len(set(labels)) != n:
            raise ArrangementError("labels must be distinct, one per hyperplane")
        self.ambient_dim = ambient_dim
        self.normals = tuple(norms)
        self.multiplicities = tuple(int(m) for m in multiplicities)
        self.labels = tuple(str(x) for x in labels)
        self.n = n
        self._rank_cache: dict = {}

    def subrank(self, subset: Iterable[int]) -> int:
        key = frozenset(subset)
        r = self._rank_cache.get(key)
        if r is None:
            r = mat_rank([self.normals[i] for i in sorted(key)], QQ) if key else 0
            self._rank_cache[key] = r
        return r

    def subspace_basis(self, subset: Iterable[int]) -> list[list[Fraction]]:
        rows = [self.normals[i] for i in sorted(subset)]
        if not rows:
            return [list(r) for r in ExactMatrix.identity(self.ambient_dim).rows]
        return rank_nullspace(ExactMatrix.from_rows(rows, QQ, self.ambient_dim))[1]

    def deletion(self, h: int) -> "Arrangement":
        keep = [i for i in range(self.n) if i != h]
        return Arrangement(
            self.ambient_dim,
            [self.normals[i] for i in keep],
            [self.multiplicities[i] for i in keep],
            [self.labels[i] for i in keep],
        )

    def restriction(self, h: int) -> "Arrangement":
        """The arrangement {H_h ∩ K} inside H_h, in coordinates of a basis of H_h."""
        basis = self.subspace_basis([h])
        dim = self.ambient_dim - 1
        if dim == 0:
            raise ArrangementError("cannot restrict a 1-dimensional arrangement")
        forms: list[tuple] = []
        labels: list[str] = []
        for i in range(self.n):
            if i == h:
                continue
            v = tuple(sum(a * b for a, b in zip(self.normals[i], col)) for col in basis)
            if not any(v):
                continue
            for k, w in enumerate(forms):
                if _proportional(v, w):
                    labels[k] += "+" + self.labels[i]
                    break
            else:
                forms.append(v)
                labels.append(self.labels[i])
        return Arrangement(dim, forms, None, labels)

    def linear_forms(self, variables: Sequence[str] | None = None):
        from .arith import MultiPoly

        if variables is None:
            variables = default_variables(self.ambient_dim)
        return [MultiPoly.linear_form(variables, v) for v in self.normals]

    def with_multiplicities(self, mults: Sequence[int]) -> "Arrangement":
        return Arrangement(self.ambient_dim, self.normals, mults, self.labels)

    def __repr__(self):
        return f"Arrangement(dim={self.ambient_dim}, n={self.n})"


def default_variables(dim: int) -> tuple[str, ...]:
    if dim <= 3:
        return ("x", "y", "z")[:dim]
    return tuple(f"z{i + 1}" for i in range(dim))


class AbstractMatroid(_Base):
    """A simple matroid given by its rank function only.

    Used in place of a rational realization when none exists.  The pencil
    and critical-locus operations reject it.
    """

    is_realized = False

    def __init__(
        self,
        n: int,
        rank_fn: Callable[[frozenset], int],
        labels: Sequence[str] | None = None,
        multiplicities: Sequence[int] | None = None,
        name: str = "matroid",
    ):
        self.n = n
        self._rank_fn = rank_fn
        self.labels = tuple(labels) if labels is not None else tuple(str(i + 1) for i in range(n))
        if len(self.labels) != n:
            raise ArrangementError("labels must be one per element")
        self.multiplicities = tuple(multiplicities) if multiplicities else (1,) * n
        self.name = name
        self._rank_cache: dict = {}
        self.ambient_dim = self.subrank(range(n)) if n else 0

    def subrank(self, subset: Iterable[int]) -> int:
        key = frozenset(subset)
        r = self._rank_cache.get(key)
        if r is None:
            r = self._rank_fn(key)
            self._rank_cache[key] = r
        return r

    def deletion(self, h: int) -> "AbstractMatroid":
        keep = [i for i in range(self.n) if i != h]
        fn = self._rank_fn
        return AbstractMatroid(
            len(keep),
            lambda s: fn(frozenset(keep[i] for i in s)),
            [self.labels[i] for i in keep],
            [self.multiplicities[i] for i in keep],
            self.name + "-del",
        )

    def restriction(self, h: int) -> "AbstractMatroid":
        """Simple contraction by ``h``: one element per rank-2 flat through h."""
        lines = []
        seen = set()
        for i in range(self.n):
            if i == h:
                continue
            X = self.closure({h, i})
            if X not in seen:
                seen.add(X)
                lines.append(X)
        fn = self._rank_fn
        labels = ["+".join(self.labels[i] for i in sorted(X - {h})) for X in lines]
        return AbstractMatroid(
            len(lines),
            lambda s: (fn(frozenset().union(*(lines[i] for i in s))) - 1) if s else 0,
            labels,
            None,
            self.name + "-res",
        )


def line_matroid(n: int, lines: Iterable[Iterable[int]], labels=None, name="matroid") -> AbstractMatroid:
    """Rank-3 simple matroid on ``n`` points whose nontrivial lines are given.

    Any two listed lines may share at most one point.
    """
    lines = [frozenset(L) for L in lines]
    for L in lines:
        if len(L) < 3:
            raise ArrangementError("listed dependent flats must have at least 3 elements")
        if not all(0 <= i < n for i in L):
            raise ArrangementError("flat element out of range")
    for a, b in combinations(lines, 2):
        if len(a & b) > 1:
            raise ArrangementError("two rank-2 flats share more than one element")

    def rank_fn(s: frozenset) -> int:
        k = len(s)
        if k <= 2:
            return k
        if any(s <= L for L in lines):
            return 2
        return 3

    if n < 3:
        raise ArrangementError("a rank-3 matroid needs at least 3 elements")
    return AbstractMatroid(n, rank_fn, labels, None, name)


# ---------------------------------------------------------------------------
# intersection poset


@dataclass(frozen=True)
class Flat:
    hyperplanes: frozenset
    rank: int
    subspace_basis: tuple | None = None

    def sorted(self) -> tuple:
        return tuple(sorted(self.hyperplanes))


@dataclass
class IntersectionPoset:
    arrangement: object
    flats: list  # sorted by (rank, hyperplane tuple); flats[0] is the bottom
    mobius: dict  # frozenset -> int
    ambient_dim: int
    by_set: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.by_set = {F.hyperplanes: F for F in self.flats}

    @property
    def rank(self) -> int:
        return max(F.rank for F in self.flats)

    @property
    def n(self) -> int:
        return self.arrangement.n

    def flats_of_rank(self, r: int) -> list[Flat]:
        return [F for F in self.flats if F.rank == r]

    def census(self) -> list[int]:
        return [len(self.flats_of_rank(r)) for r in range(self.rank + 1)]

    def top(self) -> Flat:
        return self.flats[-1]

    def mu(self, F) -> int:
        return self.mobius[F.hyperplanes if isinstance(F, Flat) else frozenset(F)]

    def below(self, F: Flat) -> list[Flat]:
        return [G for G in self.flats if G.hyperplanes < F.hyperplanes]

    def multiple_points(self, support: Iterable[int] | None = None, min_size: int = 3) -> list[frozenset]:
        """Rank-2 flats meeting ``support`` in at least ``min_size`` hyperplanes,
        intersected with ``support``."""
        S = frozenset(range(self.n)) if support is None else frozenset(support)
        out = []
        for F in self.flats_of_rank(2):
            X = F.hyperplanes & S
            if len(X) >= min_size:
                out.append(X)
        return out

    def whitney_numbers(self) -> list[int]:
        """sum over rank-i flats of |mu|, i.e. the Poincare polynomial coefficients."""
        out = [0] * (self.rank + 1)
        for F in self.flats:
            out[F.rank] += abs(self.mobius[F.hyperplanes])
        return out


def build_poset(a) -> IntersectionPoset:
    """All flats by breadth-first joins with single hyperplanes, plus Mobius values."""
    n = a.n
    bottom = frozenset()
    levels = [[bottom]]
    seen = {bottom}
    while True:
        nxt = []
        for X in levels[-1]:
            r = a.subrank(X)
            for h in range(n):
                if h in X:
                    continue
                Y = a.closure(X | {h})
                if Y not in seen:
                    seen.add(Y)
                    nxt.append(Y)
        if not nxt:
            break
        levels.append(nxt)
    flats = []
    for r, lev in enumerate(levels):
        for X in sorted(lev, key=lambda s: tuple(sorted(s))):
            basis = None
            if a.is_realized:
                basis = tuple(tuple(v) for v in a.subspace_basis(X))
            flats.append(Flat(X, r, basis))
    mobius: dict = {}
    for F in flats:
        if not F.hyperplanes:
            mobius[F.hyperplanes] = 1
            continue
        mobius[F.hyperplanes] = -sum(mobius[G.hyperplanes] for G in flats if G.hyperplanes < F.hyperplanes)
    return IntersectionPoset(a, flats, mobius, a.ambient_dim)


def characteristic_polynomial(p: IntersectionPoset) -> list[int]:
    """chi(t) = sum_X mu(X) t^(dim X), as ascending integer coefficients."""
    coeffs = [0] * (p.ambient_dim + 1)
    for F in p.flats:
        coeffs[p.ambient_dim - F.rank] += p.mobius[F.hyperplanes]
    return coeffs


def poincare_polynomial(p: IntersectionPoset) -> list[int]:
    return p.whitney_numbers()


def count_regions(a) -> tuple[int, int]:
    """(regions, bounded regions) of the real arrangement via chi(-1), chi(1)."""
    p = build_poset(a)
    chi = characteristic_polynomial(p)
    ell = p.ambient_dim
    regions = (-1) ** ell * upoly_eval(chi, -1)
    r = p.rank
    # essentialization divides chi by t^(ell - r)
    ess = chi[ell - r :]
    bounded = abs(upoly_eval(ess, 1))
    return regions, bounded


def is_modular(p: IntersectionPoset, X: Flat) -> bool:
    a = p.arrangement
    for Y in p.flats:
        meet = X.hyperplanes & Y.hyperplanes
        rm = p.by_set[meet].rank if meet in p.by_set else a.subrank(meet)
        if X.rank + Y.rank != a.subrank(X.hyperplanes | Y.hyperplanes) + rm:
            return False
    return True


def supersolvable(p: IntersectionPoset) -> list[int] | None:
    """Exponents from a maximal chain of modular flats, or None.

    The exponents are the successive differences of hyperplane counts along
    the chain, reported in increasing order.
    """
    modular = {F.hyperplanes for F in p.flats if is_modular(p, F)}
    r = p.rank
    by_rank = {k: [F for F in p.flats_of_rank(k) if F.hyperplanes in modular] for k in range(r + 1)}

    def search(chain):
        k = len(chain)
        if k == r + 1:
            return chain
        for F in by_rank[k]:
            if chain[-1].hyperplanes < F.hyperplanes:
                got = search(chain + [F])
                if got:
                    return got
        return None

    chain = search([p.flats[0]])
    if chain is None:
        return None
    return sorted(len(chain[i + 1].hyperplanes) - len(chain[i].hyperplanes) for i in range(r))


def chi_string(coeffs: Sequence[int]) -> str:
    return upoly_str(coeffs, "t")
