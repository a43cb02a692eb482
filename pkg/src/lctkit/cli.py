"""Command-line front end.

Commands::

    lctkit lct POLY [--vars x,y] [--point P]
    lctkit classify {quartic,sextic,quintic} POLY [--point P]
    lctkit tables {quartic,sextic} [--corpus PATH] [--parallel N]
    lctkit ledger {check,critical} [--paper quartic|quintic] [--lambda Q]

Without ``--vars`` the ring is the variables of the input in order of first
appearance.  The ring fixes the ambient space: it decides how ``--point`` is
read and which classifier a polynomial is valid for, so pass ``--vars`` when
the input does not mention every coordinate.

Exit codes: 0 success, 1 input error, 2 verification mismatch, 3 bound-only.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .classify import (
    NonNormalError,
    NotSquarefreeError,
    PartialResultError,
    DEFAULT_TRUNCATION,
    choose_chart,
    classify_quartic_germ,
    classify_quartic_point,
    classify_quintic_double_point,
    classify_sextic_curve,
    format_point,
    global_lct_surface,
    load_corpus,
    parse_point,
)
from .dcover import section_curve_lct
from .lct_core import DEFAULT_BUDGET, EXACT, LOWER, UPPER, LctCertificate, LctError, isolated_at_origin, lct_germ
from .ledger import (
    DEFAULT_LAMBDA,
    GROUPS,
    LedgerError,
    critical_report,
    load_case_ledger,
    verify_case,
)
from .poly import (
    Poly,
    PolyError,
    dehomogenize,
    format_fraction,
    infer_ring,
    mult_at_origin,
    parse_fraction,
    parse_poly,
)

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_BOUND = 0, 1, 2, 3
QUARTIC_RING = ("x", "y", "z", "w")
SEXTIC_RING = ("x", "y", "z")

CERT_MODES = (EXACT, LOWER, UPPER)
CERT_SCHEMA = {
    "input": str,
    "value": str,
    "mode": str,
    "weight": list,
    "leading_term": str,
    "trace": list,
    "flags": list,
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    sub: Optional[str]
    output: str
    truncation: int
    budget: int
    parallel: int
    decimal: bool


def validate_certificate_json(obj: dict) -> dict:
    """Raise ValueError unless ``obj`` has exactly the certificate fields and types."""
    if set(obj) != set(CERT_SCHEMA):
        raise ValueError(f"certificate keys {sorted(obj)} != {sorted(CERT_SCHEMA)}")
    for k, t in CERT_SCHEMA.items():
        if not isinstance(obj[k], t):
            raise ValueError(f"field {k!r} should be {t.__name__}")
    if obj["mode"] not in CERT_MODES:
        raise ValueError(f"bad mode {obj['mode']!r}")
    v = parse_fraction(obj["value"])
    if not 0 < v <= 1:
        raise ValueError("value out of range")
    for w in obj["weight"]:
        parse_fraction(w)
    return obj


def _fmt(q: Fraction, decimal: bool) -> str:
    s = format_fraction(q)
    return f"{s} (~{float(q):.6f})" if decimal else s


def _cert_json(c: LctCertificate) -> dict:
    d = c.to_json()
    d["flags"] = list(c.flags)
    return d


def _print_cert(c: LctCertificate, cfg: RunConfig) -> None:
    if cfg.output == "json":
        print(json.dumps(_cert_json(c), sort_keys=True))
        return
    print(f"value: {_fmt(c.value, cfg.decimal)}")
    print(f"mode: {c.mode}")
    if c.weight:
        print("weight: (" + ",".join(format_fraction(v) for v in c.weight) + ")")
    if c.leading is not None:
        print(f"leading term: {c.leading}")
    if c.tag:
        print(f"rule: {c.tag}")
    for t in c.trace:
        print(f"  {t}")
    for f in c.flags:
        print(f"flag: {f}")


def _ring(text: str, vars_opt: Optional[str], default: Optional[Sequence[str]] = None) -> Tuple[str, ...]:
    if vars_opt:
        return tuple(v.strip() for v in vars_opt.split(",") if v.strip())
    return tuple(default) if default else infer_ring(text)


def _at_point(f: Poly, point: Optional[str]) -> Poly:
    """Move ``point`` to the origin: projective ``[a:b:c]`` on a form, or affine ``a,b,c``."""
    if not point:
        return f
    if point.strip().startswith("["):
        P = parse_point(point)
        return dehomogenize(f, f.ring[choose_chart(P)], P)
    P = tuple(parse_fraction(t) for t in point.split(","))
    if len(P) != f.nvars:
        raise PolyError(f"point has {len(P)} coordinates, ring has {f.nvars}")
    shift = {v: Poly.var(f.ring, v) + c for v, c in zip(f.ring, P)}
    return f.subs(shift)


def _exit_for(c: LctCertificate) -> int:
    return EXIT_OK if c.exact else EXIT_BOUND


def cmd_lct(args, cfg: RunConfig) -> int:
    f = parse_poly(args.poly, _ring(args.poly, args.vars))
    g = _at_point(f, args.point)
    c = lct_germ(g, cfg.budget)
    if g.constant_term() == 0 and g.nvars >= 2 and mult_at_origin(g) >= 2 and not isolated_at_origin(g):
        c = c.with_trace(flags=c.flags + ("non-isolated",))
    _print_cert(c, cfg)
    return _exit_for(c)


def cmd_classify(args, cfg: RunConfig) -> int:
    which = args.which
    if which == "quartic":
        F = parse_poly(args.poly, _ring(args.poly, args.vars, QUARTIC_RING))
        if F.nvars == 4 and F.is_homogeneous():
            c = (classify_quartic_point(F, parse_point(args.point), cfg.truncation) if args.point
                 else global_lct_surface(F, None, cfg.truncation))
        else:
            c = classify_quartic_germ(_at_point(F, args.point), cfg.truncation)
    elif which == "sextic":
        C = parse_poly(args.poly, _ring(args.poly, args.vars, None))
        if C.nvars == 3 and C.is_homogeneous():
            pts = [parse_point(args.point)] if args.point else None
            c = section_curve_lct(C, pts)
        else:
            c = classify_sextic_curve(_at_point(C, args.point))
    else:
        f = parse_poly(args.poly, _ring(args.poly, args.vars, None))
        c = classify_quintic_double_point(_at_point(f, args.point), cfg.truncation)
    _print_cert(c, cfg)
    return _exit_for(c)


# ----------------------------------------------------------------- tables

@lru_cache(maxsize=None)
def _rows(which: str, corpus: str):
    return tuple(load_corpus(corpus, QUARTIC_RING if which == "quartic" else SEXTIC_RING))


def _row_report(job) -> dict:
    which, corpus, k, N = job
    r = _rows(which, corpus)[k]
    out = {"row": r.index, "expected": format_fraction(r.mu), "points": []}
    try:
        if which == "quartic":
            pts = list(r.points) or None
            cert = global_lct_surface(r.poly, pts, N)
            if r.points:
                out["points"] = [[format_point(P), format_fraction(classify_quartic_point(r.poly, P, N).value)]
                                 for P in r.points]
        else:
            cert = section_curve_lct(r.poly, list(r.points) or None)
        out["computed"] = format_fraction(cert.value)
        out["mode"] = cert.mode
        out["case"] = next((t for t in cert.trace if t[:1].isupper() and "." in t[:4]), cert.tag)
        out["ok"] = cert.exact and cert.value == r.mu
        if which == "quartic" and len(r.points) > 1:
            # secondary listed points must not lower the value
            out["ok"] = out["ok"] and all(parse_fraction(v) >= r.mu for _, v in out["points"][1:])
    except (LctError, PolyError, NonNormalError, NotSquarefreeError, PartialResultError, ValueError) as exc:
        out.update(computed=None, mode="error", case=type(exc).__name__ + ": " + str(exc), ok=False)
    return out


def run_table(which: str, corpus: Optional[str] = None, parallel: int = 1,
              truncation: int = DEFAULT_TRUNCATION) -> List[dict]:
    corpus = corpus or which
    n = len(_rows(which, corpus))
    jobs = [(which, corpus, k, truncation) for k in range(n)]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as ex:
            return list(ex.map(_row_report, jobs))
    return [_row_report(j) for j in jobs]


def cmd_tables(args, cfg: RunConfig) -> int:
    try:
        reports = run_table(args.which, args.corpus, cfg.parallel, cfg.truncation)
    except (PolyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    bad = [r for r in reports if not r["ok"]]
    if cfg.output == "json":
        print(json.dumps({"rows": reports, "matched": len(reports) - len(bad), "total": len(reports)},
                         sort_keys=True))
    else:
        for r in reports:
            got = r["computed"] if r["computed"] is not None else "-"
            pts = "".join(f"  {p}={v}" for p, v in r["points"])
            print(f"{r['row']:>3} expected {r['expected']:>6}  computed {got:>6}  "
                  f"{'ok' if r['ok'] else 'MISMATCH'}  {r['case']}{pts}")
        print(f"{len(reports) - len(bad)}/{len(reports)} rows match")
        if bad:
            print("mismatched rows: " + ", ".join(str(r["row"]) for r in bad))
    return EXIT_MISMATCH if bad else EXIT_OK


# ----------------------------------------------------------------- ledger

def cmd_ledger(args, cfg: RunConfig) -> int:
    recs = load_case_ledger(args.paper)
    if args.action == "critical":
        rep = critical_report(recs)
        if cfg.output == "json":
            print(json.dumps(rep.to_json(), sort_keys=True))
        else:
            for label, v in rep.per_case:
                print(f"{label:>8}  lambda* = {'always' if v is None else _fmt(v, cfg.decimal)}")
            if rep.value is None:
                print("critical lambda: none (every case contradictory for all lambda)")
            else:
                print(f"critical lambda: {_fmt(rep.value, cfg.decimal)}  binding: {', '.join(rep.binding)}")
        return EXIT_OK
    lam = parse_fraction(args.lam) if args.lam else DEFAULT_LAMBDA[args.paper]
    verdicts = [verify_case(r, lam) for r in recs]
    if cfg.output == "json":
        print(json.dumps({"lambda": format_fraction(lam), "cases": [v.to_json() for v in verdicts]},
                         sort_keys=True))
    else:
        for v in verdicts:
            print(f"{v.label:>8}  {v.kind}")
        n = sum(v.contradiction for v in verdicts)
        print(f"lambda = {_fmt(lam, cfg.decimal)}: {n}/{len(verdicts)} cases contradictory")
    return EXIT_OK if all(v.contradiction for v in verdicts) else EXIT_MISMATCH


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--decimal", action="store_true", help="append 6-digit approximations")
    common.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION, metavar="N")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="B")
    common.add_argument("--parallel", type=int, default=1, metavar="N")

    p = argparse.ArgumentParser(prog="lctkit", description="Exact log canonical thresholds.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("lct", parents=[common], help="threshold of a germ")
    q.add_argument("poly")
    q.add_argument("--vars")
    q.add_argument("--point")

    q = sub.add_parser("classify", parents=[common], help="run a case-tree classifier")
    q.add_argument("which", choices=("quartic", "sextic", "quintic"))
    q.add_argument("poly")
    q.add_argument("--vars")
    q.add_argument("--point")

    q = sub.add_parser("tables", parents=[common], help="verify a corpus of table rows")
    q.add_argument("which", choices=("quartic", "sextic"))
    q.add_argument("--corpus", help="corpus name in the data directory or a file path")

    q = sub.add_parser("ledger", parents=[common], help="check the linear case ledgers")
    q.add_argument("action", choices=("check", "critical"))
    q.add_argument("--paper", choices=GROUPS, default="quartic")
    q.add_argument("--lambda", dest="lam")
    return p


COMMANDS = {"lct": cmd_lct, "classify": cmd_classify, "tables": cmd_tables, "ledger": cmd_ledger}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    cfg = RunConfig(args.command, getattr(args, "which", getattr(args, "action", None)),
                    "json" if args.json else "text", args.truncation, args.budget,
                    max(1, args.parallel), args.decimal)
    if cfg.truncation < 3 or cfg.budget < 1:
        print("error: truncation must be >= 3 and budget >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args, cfg)
    except (PolyError, LctError, LedgerError, NonNormalError, NotSquarefreeError,
            PartialResultError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
