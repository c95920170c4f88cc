"""Plain-text arrangement files.

Realized arrangements::

    dim 3
    # label  c1 c2 c3  [mult]
    x    1 0 0  2
    x+y  1 1 0

Abstract rank-3 matroids list one dependent rank-2 flat per line, by 1-based
element number (or by label, when a ``labels`` line follows the header)::

    matroid 6
    1 2 3
    1 4 5
"""

from __future__ import annotations

from fractions import Fraction

from .arrangement import AbstractMatroid, Arrangement, ArrangementError, line_matroid


class ParseError(ArrangementError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = []
        pos = 0
        for tok in body.split():
            col = body.index(tok, pos) + 1
            pos = col - 1 + len(tok)
            toks.append((tok, col))
        if toks:
            yield lineno, toks


def _rational(tok: str, lineno: int, col: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, col, f"not a rational number: {tok!r}") from None


def parse_arrangement(text: str):
    lines = list(_tokens(text))
    if not lines:
        raise ParseError(1, 1, "empty arrangement file")
    lineno, head = lines[0]
    kind = head[0][0].lower()
    if kind == "dim":
        return _parse_realized(lineno, head, lines[1:])
    if kind == "matroid":
        return _parse_matroid(lineno, head, lines[1:])
    raise ParseError(lineno, head[0][1], "header must be 'dim <l>' or 'matroid <n>'")


def _int_token(toks, i, lineno, what):
    if len(toks) <= i:
        raise ParseError(lineno, toks[-1][1] + len(toks[-1][0]), f"missing {what}")
    tok, col = toks[i]
    if not tok.isdigit():
        raise ParseError(lineno, col, f"{what} must be a positive integer, got {tok!r}")
    return int(tok)


def _parse_realized(lineno, head, body):
    ell = _int_token(head, 1, lineno, "dimension")
    if ell < 1:
        raise ParseError(lineno, head[1][1], "dimension must be at least 1")
    normals, mults, labels = [], [], []
    for ln, toks in body:
        if len(toks) not in (ell + 1, ell + 2):
            raise ParseError(ln, toks[0][1], f"expected 'label' then {ell} coefficients and an optional multiplicity")
        labels.append(toks[0][0])
        normals.append([_rational(t, ln, c) for t, c in toks[1 : ell + 1]])
        if len(toks) == ell + 2:
            tok, col = toks[-1]
            if not tok.isdigit() or int(tok) < 1:
                raise ParseError(ln, col, f"multiplicity must be a positive integer, got {tok!r}")
            mults.append(int(tok))
        else:
            mults.append(1)
        if not any(normals[-1]):
            raise ParseError(ln, toks[1][1], "zero linear form")
    try:
        return Arrangement(ell, normals, mults, labels)
    except ArrangementError as exc:
        raise ParseError(body[-1][0] if body else lineno, 1, str(exc)) from None


def _parse_matroid(lineno, head, body):
    n = _int_token(head, 1, lineno, "element count")
    labels = None
    if body and body[0][1][0][0].lower() == "labels":
        ln, toks = body[0]
        labels = [t for t, _ in toks[1:]]
        if len(labels) != n:
            raise ParseError(ln, toks[0][1], f"expected {n} labels")
        body = body[1:]
    flats = []
    for ln, toks in body:
        flat = []
        for tok, col in toks:
            if labels and tok in labels:
                flat.append(labels.index(tok))
            elif tok.isdigit() and 1 <= int(tok) <= n:
                flat.append(int(tok) - 1)
            else:
                raise ParseError(ln, col, f"unknown element {tok!r}")
        flats.append(flat)
    try:
        return line_matroid(n, flats, labels)
    except ArrangementError as exc:
        raise ParseError(lineno, 1, str(exc)) from None


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dump_arrangement(a) -> str:
    """Serialize; abstract matroids must be rank 3 (dependent lines listed)."""
    if isinstance(a, Arrangement):
        out = [f"dim {a.ambient_dim}"]
        for lab, v, m in zip(a.labels, a.normals, a.multiplicities):
            row = [lab] + [_fmt(x) for x in v]
            if m != 1:
                row.append(str(m))
            out.append("  ".join(row))
        return "\n".join(out) + "\n"
    if isinstance(a, AbstractMatroid):
        from .arrangement import build_poset

        if a.rank != 3:
            raise ArrangementError("only rank-3 abstract matroids can be serialized")
        p = build_poset(a)
        out = [f"matroid {a.n}", "labels " + " ".join(a.labels)]
        for F in p.flats_of_rank(2):
            if len(F.hyperplanes) >= 3:
                out.append(" ".join(str(i + 1) for i in sorted(F.hyperplanes)))
        return "\n".join(out) + "\n"
    raise TypeError(f"cannot serialize {type(a).__name__}")
