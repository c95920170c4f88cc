"""Named arrangements and graphic arrangements."""

from __future__ import annotations

import re
from itertools import combinations

from .arrangement import AbstractMatroid, Arrangement, ArrangementError, line_matroid


def braid(ell: int) -> Arrangement:
    """Diagonal hyperplanes z_i = z_j, 1 <= i < j <= ell, in lexicographic order."""
    if ell < 2:
        raise ArrangementError("braid arrangement needs ell >= 2")
    normals, labels = [], []
    for i, j in combinations(range(ell), 2):
        v = [0] * ell
        v[i], v[j] = 1, -1
        normals.append(v)
        labels.append(f"{i + 1}{j + 1}" if ell <= 9 else f"{i + 1}.{j + 1}")
    return Arrangement(ell, normals, None, labels)


def graphic(edges, v: int | None = None) -> Arrangement:
    """One hyperplane z_i - z_j per edge {i, j}; vertices are numbered from 1."""
    edges = [tuple(e) for e in edges]
    if v is None:
        v = max((max(e) for e in edges), default=1)
    seen = set()
    normals, labels = [], []
    for e in edges:
        if len(e) != 2:
            raise ArrangementError(f"edge {e} must have two endpoints")
        i, j = e
        if i == j:
            raise ArrangementError(f"loop at vertex {i}")
        if not (1 <= i <= v and 1 <= j <= v):
            raise ArrangementError(f"edge {e} uses a vertex outside 1..{v}")
        key = frozenset(e)
        if key in seen:
            raise ArrangementError(f"duplicate edge {e}")
        seen.add(key)
        i, j = sorted(e)
        w = [0] * v
        w[i - 1], w[j - 1] = 1, -1
        normals.append(w)
        labels.append(f"{i}{j}" if v <= 9 else f"{i}.{j}")
    return Arrangement(v, normals, None, labels)


def complete_graph(k: int):
    return list(combinations(range(1, k + 1), 2))


def cycle_graph(k: int):
    return [(i, i % k + 1) for i in range(1, k + 1)]


def boolean(n: int) -> Arrangement:
    return Arrangement(n, [[int(i == j) for j in range(n)] for i in range(n)], None, [f"x{i + 1}" for i in range(n)])


def generic(n: int, ell: int) -> Arrangement:
    """n hyperplanes in general position: rows (1, t, ..., t^(ell-1)), t = 1..n."""
    if n < 0 or ell < 1:
        raise ArrangementError("generic(n, ell) needs n >= 0, ell >= 1")
    if ell == 1 and n > 1:
        raise ArrangementError("only one distinct hyperplane exists in dimension 1")
    return Arrangement(ell, [[t**k for k in range(ell)] for t in range(1, n + 1)])


def cube_symmetry() -> Arrangement:
    """Reflection planes of the cube [-1, 1]^3; coordinate planes doubled."""
    forms = {
        "x": (1, 0, 0),
        "y": (0, 1, 0),
        "z": (0, 0, 1),
        "x+y": (1, 1, 0),
        "x-y": (1, -1, 0),
        "y+z": (0, 1, 1),
        "y-z": (0, 1, -1),
        "z+x": (1, 0, 1),
        "z-x": (-1, 0, 1),
    }
    mults = [2, 2, 2, 1, 1, 1, 1, 1, 1]
    return Arrangement(3, list(forms.values()), mults, list(forms))


def ceva(n: int):
    """(x^n - y^n)(y^n - z^n)(z^n - x^n): 3n lines, realized over QQ for n <= 2.

    For n >= 3 the roots of unity are not rational and the matroid is
    returned: n^2 triple points plus the three n-fold coordinate points.
    """
    if n < 1:
        raise ArrangementError("ceva(n) needs n >= 1")
    if n == 1:
        return Arrangement(3, [(1, -1, 0), (0, 1, -1), (-1, 0, 1)], None, ["x-y", "y-z", "z-x"])
    if n == 2:
        forms = {
            "x-y": (1, -1, 0),
            "x+y": (1, 1, 0),
            "y-z": (0, 1, -1),
            "y+z": (0, 1, 1),
            "z-x": (-1, 0, 1),
            "z+x": (1, 0, 1),
        }
        return Arrangement(3, list(forms.values()), None, list(forms))

    def idx(f, k):
        return f * n + k % n

    lines = [[idx(0, i), idx(1, j), idx(2, -i - j)] for i in range(n) for j in range(n)]
    lines += [[idx(f, k) for k in range(n)] for f in range(3)]
    fam = ["xy", "yz", "zx"]
    labels = [f"{fam[f]}{k}" for f in range(3) for k in range(n)]
    return line_matroid(3 * n, lines, labels, f"ceva({n})")


def hessian() -> AbstractMatroid:
    """Matroid of the 12 lines through the 9 inflection points of a smooth cubic.

    Elements are the affine lines of AG(2, 3), grouped by direction (four
    classes of three); each of the nine points gives a quadruple point.
    """
    pts = [(a, b) for a in range(3) for b in range(3)]
    dirs = [(1, 0), (0, 1), (1, 1), (1, 2)]
    lines = []
    for d in dirs:
        seen = set()
        for p in pts:
            L = frozenset(((p[0] + t * d[0]) % 3, (p[1] + t * d[1]) % 3) for t in range(3))
            if L not in seen:
                seen.add(L)
                lines.append(L)
    quads = [[i for i, L in enumerate(lines) if p in L] for p in pts]
    labels = [f"h{c + 1}{k + 1}" for c in range(4) for k in range(3)]
    return line_matroid(12, quads, labels, "hessian")


HESSIAN_CLASSES = [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]]


_ALIASES = {
    "cube": "cube_symmetry",
    "k4": "k4",
    "c4": "c4",
    "k4-e": "k4-e",
    "k4_minus_edge": "k4-e",
}


def catalog(name: str, *params: int):
    """Look up a named arrangement.

    Accepts ``catalog("braid", 4)`` as well as the string forms ``braid4``,
    ``braid(4)``, ``generic(4,3)``, ``ceva:3``.
    """
    key = name.strip().lower()
    if not params and key not in _ALIASES:
        m = re.fullmatch(r"([a-z_\-]+?)[\s:(]*([\d,\s]*)\)?", key)
        if m and m.group(2).strip():
            key = m.group(1).rstrip("_")
            params = tuple(int(x) for x in m.group(2).replace(" ", "").split(",") if x)
    key = _ALIASES.get(key, key)
    try:
        if key == "braid":
            (ell,) = params
            return braid(ell)
        if key == "boolean":
            (n,) = params
            return boolean(n)
        if key == "generic":
            n, ell = params
            return generic(n, ell)
        if key == "ceva":
            (n,) = params
            return ceva(n)
        if key == "hessian" and not params:
            return hessian()
        if key == "cube_symmetry" and not params:
            return cube_symmetry()
        if key == "k4" and not params:
            return graphic(complete_graph(4), 4)
        if key == "c4" and not params:
            return graphic(cycle_graph(4), 4)
        if key == "k4-e" and not params:
            return graphic([e for e in complete_graph(4) if e != (2, 4)], 4)
    except ValueError as exc:
        if isinstance(exc, ArrangementError):
            raise
        raise ArrangementError(f"invalid parameters {params} for {key}") from exc
    raise ArrangementError(f"unknown catalog entry {name!r}")


CATALOG_NAMES = [
    "braid(l)",
    "boolean(n)",
    "generic(n,l)",
    "ceva(n)",
    "hessian",
    "cube_symmetry",
    "k4",
    "c4",
    "k4-e",
]
