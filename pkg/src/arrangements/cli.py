"""Command-line front end.

Every subcommand builds one RunReport and prints it, as aligned text or as
JSON with ``--json``.  Exit codes: 0 success, 1 domain error, 2 resource
guard.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .arith import GF, QQ, MultiPoly, parse_poly, upoly_str
from .arrangement import (
    ArrangementError,
    build_poset,
    characteristic_polynomial,
    chi_string,
    count_regions,
    poincare_polynomial,
    supersolvable,
)
from .catalog import CATALOG_NAMES, catalog
from .fileformat import dump_arrangement, parse_arrangement
from .orlik_solomon import build_os

DEFAULT_SEED = 0

SUBCOMMANDS = [
    "poset",
    "charpoly",
    "regions",
    "os",
    "resonance",
    "neighborly",
    "multinet",
    "pencil",
    "critical",
    "lcs",
    "chen",
    "formulas",
    "catalog",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(y) for y in x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, MultiPoly):
        return str(x)
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return x


class RunReport:
    def __init__(self, argv):
        self.command = list(argv)
        self.fingerprint: dict | None = None
        self.results: dict = {}
        self.verdicts: list = []
        self.timing = 0.0

    def to_dict(self) -> dict:
        d = {"command": self.command, "fingerprint": self.fingerprint, "results": self.results, "verdicts": self.verdicts}
        d["timing"] = {"seconds": round(self.timing, 3)}
        return _jsonable(d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def to_text(self) -> str:
        d = self.to_dict()
        lines = ["command: " + " ".join(d["command"])]
        if d["fingerprint"]:
            fp = d["fingerprint"]
            lines.append(f"arrangement: n={fp['n']} dim={fp['ambient_dim']} rank={fp['rank']} flats={fp['flat_census']}")
        for k, v in d["results"].items():
            lines.extend(_text_block(k, v, 0))
        if d["verdicts"]:
            lines.append("verdicts:")
            w = max(len(v["name"]) for v in d["verdicts"])
            for v in d["verdicts"]:
                lines.append(f"  {v['name']:<{w}}  {v['verdict']:<18}  {v.get('note', '')}".rstrip())
        lines.append(f"timing: {d['timing']['seconds']}s")
        return "\n".join(lines) + "\n"


def _text_block(key, value, indent):
    pad = "  " * indent
    if isinstance(value, dict):
        out = [f"{pad}{key}:"]
        for k, v in value.items():
            out.extend(_text_block(k, v, indent + 1))
        return out
    if isinstance(value, list) and value and isinstance(value[0], dict):
        out = [f"{pad}{key}:"]
        for i, v in enumerate(value):
            out.extend(_text_block(f"[{i}]", v, indent + 1))
        return out
    if isinstance(value, list):
        value = "[" + ", ".join(str(x) for x in value) + "]"
    return [f"{pad}{key}: {value}"]


# ---------------------------------------------------------------------------
# argument handling


def _common(p: argparse.ArgumentParser):
    p.add_argument("file", nargs="?", help="arrangement file (see README for the format)")
    p.add_argument("--catalog", help="named arrangement, e.g. braid4, hessian, cube, ceva(2), generic(4,3)")
    p.add_argument("--field", choices=["q", "fp"], default="q")
    p.add_argument("--p", type=int, default=None, help="prime for --field fp")
    p.add_argument("--classes", help='partition, e.g. "12,34|13,24|14,23" (labels or 1-based indices)')
    p.add_argument("--mults", help='multiplicities, one per hyperplane, e.g. "2,2,2,1,1,1,1,1,1"')
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--threads", type=int, default=None, help="worker processes (default: available cores)")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(
        prog="arrangements",
        description="Invariants of central hyperplane arrangements. Multiplicities are ignored "
        "by poset/charpoly/regions/os and used by multinet/pencil/critical.",
    )
    sub = ap.add_subparsers(dest="cmd", parser_class=_Parser)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        _common(p)
        if name == "resonance":
            p.add_argument("--weights", help="compute h^i for one weight vector, comma separated")
            p.add_argument("--affine", action="store_true", help="enumerate all of GF(p)^n instead of projectively")
            p.add_argument("--audit-prime", type=int, default=None, help="GF(p) completeness audit of the QQ census")
        if name == "neighborly":
            p.add_argument("--strict", action="store_true", help="multinet-shaped partitions only")
            p.add_argument("--max-classes", type=int, default=None)
            p.add_argument("--max-support", type=int, default=None)
        if name == "critical":
            p.add_argument("--weights", help="weight per hyperplane; polynomials in the family ring allowed")
            p.add_argument("--family", help='coordinates of the candidate, e.g. "s;t;s+t"')
            p.add_argument("--params", default="s,t", help="family parameters (comma separated)")
    return ap


def _load(args):
    if args.catalog and args.file:
        raise UsageError("give either a file or --catalog, not both")
    if args.catalog:
        return catalog(args.catalog)
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return parse_arrangement(fh.read())
    raise UsageError("an arrangement file or --catalog is required")


def _field(args):
    if args.field == "fp":
        if args.p is None:
            raise UsageError("--field fp needs --p")
        return GF(args.p)
    return QQ


def _parse_classes(a, text):
    if not text:
        raise UsageError("--classes is required")
    classes = []
    for chunk in text.split("|"):
        cls = []
        for tok in chunk.split(","):
            tok = tok.strip()
            if tok:
                cls.append(a.index_of(tok))
        classes.append(cls)
    return classes


def _parse_mults(a, text):
    if not text:
        return None
    vals = [int(x) for x in text.split(",") if x.strip()]
    if len(vals) != a.n:
        raise ArrangementError(f"--mults needs {a.n} entries")
    return vals


def _threads(args) -> int:
    return args.threads if args.threads else (os.cpu_count() or 1)


# ---------------------------------------------------------------------------
# subcommands


def cmd_poset(a, args, rep):
    P = build_poset(a)
    rep.results["flats"] = {
        str(r): [{"hyperplanes": [a.labels[i] for i in F.sorted()], "mu": P.mu(F)} for F in P.flats_of_rank(r)]
        for r in range(P.rank + 1)
    }
    rep.results["census"] = P.census()


def cmd_charpoly(a, args, rep):
    P = build_poset(a)
    chi = characteristic_polynomial(P)
    rep.results["chi"] = chi_string(chi)
    rep.results["coefficients_ascending"] = chi
    rep.results["poincare"] = upoly_str(poincare_polynomial(P))


def cmd_regions(a, args, rep):
    if not getattr(a, "is_realized", False):
        raise ArrangementError("region counting needs real defining forms; an abstract matroid was given")
    r, b = count_regions(a)
    rep.results["regions"] = r
    rep.results["bounded"] = b


def cmd_os(a, args, rep):
    A = build_os(a, _field(args))
    rep.results["order"] = list(A.order)
    rep.results["dims"] = A.dims
    rep.results["nbc_basis"] = {str(i): [" ".join(a.labels[h] for h in S) or "1" for S in B] for i, B in enumerate(A.basis)}


def cmd_resonance(a, args, rep):
    from .resonance import (
        DEFAULT_BUDGET,
        aomoto_cohomology,
        census_audit,
        coverage,
        enumerate_Fp,
        nonlinearity_witness,
        resonance_census_Q,
    )

    F = _field(args)
    A = build_os(a)
    if args.weights:
        w = [Fraction(x) for x in args.weights.split(",")]
        if F != QQ:
            w = [F(x) for x in w]
        rep.results["h"] = aomoto_cohomology(A, w, F)
        return
    if F == QQ:
        comps = resonance_census_Q(A, seed=args.seed)
        rep.results["seed"] = args.seed
        rep.results["components"] = [c.to_dict(a.labels) for c in comps]
        rep.results["dimensions"] = sorted(c.dimension for c in comps)
        if args.audit_prime:
            audit = census_audit(A, comps, args.audit_prime, budget=args.budget or DEFAULT_BUDGET, workers=_threads(args))
            rep.results["audit"] = audit
            rep.verdicts.append(
                {"name": f"census covers GF({args.audit_prime})", "verdict": "holds" if audit["exceptions"] == 0 else "fails", "note": f"{audit['exceptions']} exceptions"}
            )
        return
    en = enumerate_Fp(A, F.p, 1, 1, budget=args.budget or DEFAULT_BUDGET, projective=not args.affine, workers=_threads(args))
    rep.results["p"] = F.p
    rep.results["projective"] = en.projective
    rep.results["resonant_points"] = len(en.points)
    if A.rank <= 3:
        comps = resonance_census_Q(A, seed=args.seed)
        owner = coverage(en.points, comps, F.p, A.n) if en.points else []
        rep.results["outside_QQ_components"] = int(sum(1 for o in owner if o < 0))
        full = sorted(en.full_set())
        w = nonlinearity_witness(full, comps, F.p)
        rep.results["nonlinearity_witness"] = None if w is None else {"u": list(w[0]), "v": list(w[1]), "u+v": [(x + y) % F.p for x, y in zip(*w)]}


def cmd_neighborly(a, args, rep):
    from .pencils import enumerate_neighborly, is_neighborly

    if args.classes:
        cl = _parse_classes(a, args.classes)
        rep.results["neighborly"] = is_neighborly(a, cl)
        return
    parts = enumerate_neighborly(
        a,
        max_support=args.max_support,
        max_classes=args.max_classes,
        ceiling=args.budget or 200_000,
        strict=args.strict,
    )
    rep.results["count"] = len(parts)
    rep.results["partitions"] = [p.format(a.labels) for p in parts]


def cmd_multinet(a, args, rep):
    from .pencils import check_multinet, search_multiplicities

    cl = _parse_classes(a, args.classes)
    m = _parse_mults(a, args.mults)
    r = check_multinet(a, cl, m)
    rep.results["multinet"] = r.ok
    rep.results["class_degrees"] = r.class_degrees
    rep.results["violations"] = r.violations
    if r.ok:
        rep.results["degree"] = r.degree
    elif m is None:
        found = search_multiplicities(a, cl)
        rep.results["searched_multiplicities"] = found


def cmd_pencil(a, args, rep):
    from .pencils import pencil_certificate, singular_fibers

    cl = _parse_classes(a, args.classes)
    cert = pencil_certificate(a, cl, _parse_mults(a, args.mults))
    rep.results["certificate"] = cert.to_dict()
    rep.results["singular_fibers"] = [f"[{x} : {y}]" for x, y in singular_fibers(cert)]


def cmd_critical(a, args, rep):
    from .pencils import ceva2_master_setup, critical_equations

    if args.weights is None and args.family is None:
        if a is not None:
            raise UsageError("give --weights and --family, or omit the arrangement for the built-in conic example")
        a, w, fam = ceva2_master_setup()
        rep.fingerprint = a.fingerprint()
        rep.results["setup"] = "class weights (alpha, beta, -alpha-beta) on x+-y, y+-z, z+-x; candidate conic beta x^2 + gamma y^2 + alpha z^2 = 0"
    else:
        if not (args.weights and args.family):
            raise UsageError("--weights and --family go together")
        params = tuple(p.strip() for p in args.params.split(",") if p.strip())
        fam = [parse_poly(s, params) for s in args.family.split(";")]
        w = [parse_poly(s, params) for s in args.weights.split(",")]
    eqs = critical_equations(a, w, fam, _parse_mults(a, args.mults))
    rep.results["family"] = [str(f) for f in fam]
    rep.results["residuals"] = [str(e) for e in eqs]
    ok = all(e.is_zero() for e in eqs)
    rep.results["on_critical_locus"] = ok


def _max_degree(args, default):
    return args.max_degree if args.max_degree is not None else default


def cmd_lcs(a, args, rep):
    from .lie import FormulaError, holonomy_ranks, lcs_formula_supersolvable

    N = _max_degree(args, 6)
    phi = holonomy_ranks(a, N)
    rep.results["phi"] = phi
    rep.results["source"] = "holonomy"
    try:
        chk = lcs_formula_supersolvable(a, N, phi)
        rep.results["supersolvable"] = chk.to_dict()
        rep.verdicts.append({"name": "lcs-supersolvable", "verdict": chk.verdict, "note": f"through degree {N}"})
    except FormulaError as exc:
        rep.results["supersolvable"] = str(exc)


def cmd_chen(a, args, rep):
    from .lie import chen_formula_check, holonomy_lie, chen_ranks_holonomy
    from .resonance import resonance_census_Q

    N = _max_degree(args, 5)
    L = holonomy_lie(a, N)
    theta = chen_ranks_holonomy(a, N, L)
    rep.results["phi"] = L.phi
    rep.results["theta"] = theta
    if build_poset(a).rank <= 3:
        dims = [c.dimension for c in resonance_census_Q(build_os(a), seed=args.seed)]
        chk = chen_formula_check(a, N, dims, theta)
        rep.results["chen_formula"] = chk.to_dict()


def cmd_formulas(a, args, rep):
    from .lie import (
        chen_formula_check,
        chen_ranks_holonomy,
        holonomy_lie,
        lcs_formula_supersolvable,
        resonance_lcs_formula,
        strand_formula_check,
        tor_formula_check,
    )
    from .resonance import resonance_census_Q

    N = _max_degree(args, 5)
    P = build_poset(a)
    L = holonomy_lie(P, max(N, 4))
    phi = L.phi
    theta = chen_ranks_holonomy(P, max(N, 4), L)
    rep.results["phi"] = phi[:N]
    rep.results["theta"] = theta[:N]
    Ns = min(N, 4)
    s = strand_formula_check(P, Ns, theta)
    rep.verdicts.append({"name": "linear strand over E = theta_k", "verdict": s.verdict, "note": f"k = 2..{Ns}"})
    t = tor_formula_check(P, N, phi)
    rep.verdicts.append({"name": "diagonal Tor over A", "verdict": t.verdict, "note": f"through degree {N}"})
    if supersolvable(P) is not None:
        c = lcs_formula_supersolvable(P, N, phi)
        rep.verdicts.append({"name": "LCS formula (supersolvable)", "verdict": c.verdict, "note": f"through degree {N}"})
    else:
        rep.verdicts.append({"name": "LCS formula (supersolvable)", "verdict": "hypothesis-not-met", "note": "not supersolvable"})
    if P.rank <= 3:
        dims = [c.dimension for c in resonance_census_Q(build_os(P), seed=args.seed)]
        rep.results["component_dims"] = sorted(dims)
        r = resonance_lcs_formula(P, N, dims, phi, theta)
        note = f"phi4={r.detail['phi4']} theta4={r.detail['theta4']}; series agree: {r.detail['series_agree']}"
        rep.verdicts.append({"name": "resonance LCS formula", "verdict": r.verdict, "note": note})
        kmin = 3 if N >= 3 else 2
        ch = chen_formula_check(P, N, dims, theta, kmin=kmin)
        low = chen_formula_check(P, N, dims, theta, kmin=2)
        rep.verdicts.append(
            {"name": "Chen rank formula", "verdict": ch.verdict, "note": f"k = {kmin}..{N}; equality from k = {low.detail['onset']}"}
        )
    else:
        rep.verdicts.append({"name": "resonance LCS formula", "verdict": "unavailable", "note": "census needs rank <= 3"})
        rep.verdicts.append({"name": "Chen rank formula", "verdict": "unavailable", "note": "census needs rank <= 3"})


def cmd_catalog(a, args, rep):
    if a is None:
        rep.results["names"] = CATALOG_NAMES
    else:
        rep.results["file"] = dump_arrangement(a)


HANDLERS = {name: globals()[f"cmd_{name}"] for name in SUBCOMMANDS}


def run(argv) -> tuple[int, RunReport | None, str]:
    """Execute one command; returns (exit code, report, error message)."""
    from .lie import FormulaError, ResourceError
    from .pencils import SearchCeilingExceeded
    from .resonance import BudgetExceeded

    t0 = time.perf_counter()
    rep = RunReport(argv)
    try:
        args = build_parser().parse_args(argv)
        if args.cmd is None:
            raise UsageError(f"a subcommand is required: {', '.join(SUBCOMMANDS)}")
        if args.cmd == "catalog" and not (args.catalog or args.file):
            a = None
        elif args.cmd == "critical" and not (args.catalog or args.file):
            if args.weights or args.family:
                raise UsageError("--weights/--family need an arrangement")
            a = None
        else:
            a = _load(args)
        if a is not None:
            rep.fingerprint = a.fingerprint()
        HANDLERS[args.cmd](a, args, rep)
    except (BudgetExceeded, ResourceError, SearchCeilingExceeded, MemoryError) as exc:
        return 2, None, f"resource limit: {exc}"
    except (UsageError, ArrangementError, FormulaError, ValueError, OSError) as exc:
        return 1, None, f"error: {exc}"
    rep.timing = time.perf_counter() - t0
    return 0, rep, ""


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, rep, msg = run(argv)
    if rep is None:
        print(msg, file=sys.stderr)
        return code
    want_json = "--json" in argv
    sys.stdout.write(rep.to_json() + "\n" if want_json else rep.to_text())
    return code


if __name__ == "__main__":
    raise SystemExit(main())
