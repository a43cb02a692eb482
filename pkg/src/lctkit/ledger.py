"""Exact Fourier-Motzkin verification of linear case analyses.

Each case of a proof by cases is a :class:`LinSystem` over rational
unknowns, one of which is ``inv_lambda`` (standing for 1/lambda).  A case
is *contradictory* at a given lambda when the system, with ``inv_lambda``
fixed, has no rational solution.  Refutations are recorded as nonnegative
multipliers on the original constraints so they can be replayed
independently of the elimination code.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .poly import format_fraction

__all__ = [
    "LedgerError",
    "Constraint",
    "LinSystem",
    "Refutation",
    "FMResult",
    "CaseRecord",
    "Verdict",
    "CriticalReport",
    "INV_LAMBDA",
    "MAX_VARS",
    "MAX_CONSTRAINTS",
    "parse_constraint",
    "fm_feasible",
    "replay",
    "vertex_feasible",
    "load_case_ledger",
    "verify_case",
    "critical_report",
    "critical_lambda",
]

INV_LAMBDA = "inv_lambda"
MAX_VARS = 12
MAX_CONSTRAINTS = 64
ORACLE_MAX_VARS = 8
GE, GT, EQ = ">=", ">", "="

DATA_DIR = Path(__file__).with_name("data")


class LedgerError(ValueError):
    pass


# --------------------------------------------------------------- constraints

@dataclass(frozen=True)
class Constraint:
    """``sum(coeffs[v] * v) + const  rel  0`` with ``rel`` in {>=, >, =}."""

    coeffs: Tuple[Tuple[str, Fraction], ...]
    const: Fraction
    rel: str
    text: str = field(default="", compare=False)

    def __post_init__(self):
        if self.rel not in (GE, GT, EQ):
            raise LedgerError(f"unknown relation {self.rel!r}")

    @property
    def strict(self) -> bool:
        return self.rel == GT

    def coeff(self, v: str) -> Fraction:
        return dict(self.coeffs).get(v, Fraction(0))

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        return sum((c * Fraction(point[v]) for v, c in self.coeffs), self.const)

    def holds(self, point: Mapping[str, Fraction]) -> bool:
        val = self.evaluate(point)
        return val > 0 if self.rel == GT else (val >= 0 if self.rel == GE else val == 0)

    def __str__(self) -> str:
        return self.text or _format_affine(dict(self.coeffs), self.const) + f" {self.rel} 0"


def _format_affine(coeffs: Mapping[str, Fraction], const: Fraction) -> str:
    parts = []
    for v, c in coeffs.items():
        if c == 0:
            continue
        if c == 1:
            parts.append(f"+ {v}")
        elif c == -1:
            parts.append(f"- {v}")
        elif c > 0:
            parts.append(f"+ {format_fraction(c)}*{v}")
        else:
            parts.append(f"- {format_fraction(-c)}*{v}")
    if const or not parts:
        parts.append(f"+ {format_fraction(const)}" if const >= 0 else f"- {format_fraction(-const)}")
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


_REL_RE = re.compile(r"(>=|<=|>|<|=)")


_TERM_RE = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*(\*)?\s*)?([A-Za-z_][A-Za-z_0-9]*)?\s*")


def _affine(text: str, names: Sequence[str]) -> Tuple[Dict[str, Fraction], Fraction]:
    """Parse ``[+-] [c[*]] [name]`` terms; every term needs a coefficient or a name."""
    coeffs: Dict[str, Fraction] = {}
    const = Fraction(0)
    pos, first = 0, True
    text = text.strip()
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        sign, num, star, name = m.groups()
        if m.end() == pos or (num is None and name is None) or (not sign and not first) \
                or (star and name is None):
            raise LedgerError(f"cannot read affine expression {text!r} at position {pos}")
        c = Fraction(num) if num else Fraction(1)
        if sign == "-":
            c = -c
        if name is None:
            const += c
        elif name not in names:
            raise LedgerError(f"unknown variable {name!r} in {text!r}")
        else:
            coeffs[name] = coeffs.get(name, Fraction(0)) + c
        pos, first = m.end(), False
    if first:
        raise LedgerError("empty affine expression")
    return coeffs, const


def parse_constraint(text: str, names: Sequence[str]) -> Constraint:
    """Read ``<affine> <rel> <affine>`` with rel one of >=, <=, >, <, =."""
    pieces = _REL_RE.split(text)
    if len(pieces) != 3:
        raise LedgerError(f"expected exactly one relation in {text!r}")
    lhs, rel, rhs = (s.strip() for s in pieces)
    if not lhs or not rhs:
        raise LedgerError(f"missing side in {text!r}")
    a, ca = _affine(lhs, names)
    b, cb = _affine(rhs, names)
    if rel in ("<=", "<"):
        a, ca, b, cb = b, cb, a, ca
        rel = GE if rel == "<=" else GT
    diff = {v: a.get(v, 0) - b.get(v, 0) for v in names}
    diff = {v: c for v, c in diff.items() if c != 0}
    return Constraint(tuple(sorted(diff.items(), key=lambda t: names.index(t[0]))),
                      Fraction(ca - cb), rel, text.strip())


@dataclass(frozen=True)
class LinSystem:
    vars: Tuple[str, ...]
    constraints: Tuple[Constraint, ...]
    nonneg: FrozenSet[str] = frozenset()

    def __post_init__(self):
        if len(set(self.vars)) != len(self.vars):
            raise LedgerError("duplicate variable names")
        known = set(self.vars)
        for c in self.constraints:
            for v, _ in c.coeffs:
                if v not in known:
                    raise LedgerError(f"constraint {c} uses undeclared variable {v!r}")
        if not set(self.nonneg) <= known:
            raise LedgerError("nonnegativity declared for unknown variables")

    @classmethod
    def from_text(cls, vars: Sequence[str], lines: Iterable[str],
                  nonneg: Optional[Iterable[str]] = None) -> "LinSystem":
        names = tuple(vars)
        cons = tuple(parse_constraint(s, names) for s in lines)
        return cls(names, cons, frozenset(names if nonneg is None else nonneg))

    def all_constraints(self) -> Tuple[Constraint, ...]:
        """Explicit constraints followed by one ``v >= 0`` per nonnegative variable."""
        extra = tuple(Constraint(((v, Fraction(1)),), Fraction(0), GE, f"{v} >= 0")
                      for v in self.vars if v in self.nonneg)
        return self.constraints + extra

    def has_strict(self) -> bool:
        return any(c.strict for c in self.constraints)

    def fix(self, name: str, value) -> "LinSystem":
        """Substitute a rational value for one variable (the variable is dropped)."""
        if name not in self.vars:
            raise LedgerError(f"unknown variable {name!r}")
        val = Fraction(value)
        cons = list(self.constraints)
        if name in self.nonneg:
            cons.append(Constraint(((name, Fraction(1)),), Fraction(0), GE, f"{name} >= 0"))
        out = []
        for c in cons:
            d = dict(c.coeffs)
            k = d.pop(name, Fraction(0))
            text = f"{c.text or c} [{name} = {format_fraction(val)}]"
            out.append(Constraint(tuple(d.items()), c.const + k * val, c.rel, text))
        return LinSystem(tuple(v for v in self.vars if v != name), tuple(out),
                         frozenset(v for v in self.nonneg if v != name))


# ------------------------------------------------------------- elimination

@dataclass(frozen=True)
class Refutation:
    """Multipliers on ``system.all_constraints()`` summing to an impossible constant relation.

    Multipliers of inequalities are nonnegative; equalities may take either sign.
    ``steps`` lists the combined constraints in the order elimination produced them.
    """

    multipliers: Tuple[Tuple[int, Fraction], ...]
    constant: Fraction
    strict: bool
    steps: Tuple[str, ...] = ()

    @property
    def zero_slack(self) -> bool:
        return self.constant == 0

    def to_json(self) -> dict:
        return {"multipliers": [[i, format_fraction(y)] for i, y in self.multipliers],
                "constant": format_fraction(self.constant), "strict": self.strict,
                "steps": list(self.steps)}


@dataclass(frozen=True)
class FMResult:
    feasible: bool
    witness: Optional[Dict[str, Fraction]] = None
    refutation: Optional[Refutation] = None

    def __bool__(self) -> bool:
        return self.feasible


@dataclass
class _Row:
    coeffs: Dict[str, Fraction]
    const: Fraction
    rel: str
    mult: Dict[int, Fraction]

    def key(self):
        return tuple(sorted(self.coeffs.items()))


def _combine(a: _Row, ka: Fraction, b: _Row, kb: Fraction) -> _Row:
    coeffs = dict()
    for v in set(a.coeffs) | set(b.coeffs):
        c = ka * a.coeffs.get(v, 0) + kb * b.coeffs.get(v, 0)
        if c:
            coeffs[v] = c
    mult = dict()
    for i in set(a.mult) | set(b.mult):
        y = ka * a.mult.get(i, 0) + kb * b.mult.get(i, 0)
        if y:
            mult[i] = y
    rel = GT if GT in (a.rel, b.rel) else GE
    if a.rel == EQ and b.rel == EQ:
        rel = EQ
    return _Row(coeffs, ka * a.const + kb * b.const, rel, mult)


def _normalize(r: _Row) -> _Row:
    if not r.coeffs:
        return r
    s = max(abs(c) for c in r.coeffs.values())
    return _Row({v: c / s for v, c in r.coeffs.items()}, r.const / s, r.rel,
                {i: y / s for i, y in r.mult.items()})


def _trivial(r: _Row) -> Optional[bool]:
    """For a row without variables: True if it is satisfied, False if contradictory."""
    if r.coeffs:
        return None
    if r.rel == GT:
        return r.const > 0
    if r.rel == GE:
        return r.const >= 0
    return r.const == 0


def _prune(rows: List[_Row]) -> List[_Row]:
    best: Dict[tuple, _Row] = {}
    for r in rows:
        r = _normalize(r)
        k = (r.key(), r.const if r.rel == EQ else None)
        old = best.get(k)
        if old is None:
            best[k] = r
        elif r.rel == EQ:
            continue
        elif r.const < old.const or (r.const == old.const and r.rel == GT):
            best[k] = r
    return list(best.values())


def _refutation(r: _Row, steps: List[str]) -> Refutation:
    if r.rel == EQ:
        # c = 0 with c != 0: scale so the constant is negative and read it as >=
        k = Fraction(-1) if r.const > 0 else Fraction(1)
        r = _Row({}, r.const * k, GE, {i: y * k for i, y in r.mult.items()})
    mult = tuple(sorted((i, y) for i, y in r.mult.items() if y))
    return Refutation(mult, r.const, r.rel == GT, tuple(steps))


def _check_size(sys: LinSystem) -> None:
    if len(sys.vars) > MAX_VARS:
        raise LedgerError(f"{len(sys.vars)} variables exceed the limit {MAX_VARS}")
    if len(sys.all_constraints()) > MAX_CONSTRAINTS:
        raise LedgerError(f"{len(sys.all_constraints())} constraints exceed the limit {MAX_CONSTRAINTS}")


def _eliminate(sys: LinSystem, keep: Sequence[str] = ()):
    """Run elimination; returns (rows over ``keep``, history, refutation or None)."""
    cons = sys.all_constraints()
    rows = [_Row(dict(c.coeffs), c.const, c.rel, {i: Fraction(1)}) for i, c in enumerate(cons)]
    history: List[Tuple[str, str, list]] = []  # (var, kind, rows at that stage)
    steps: List[str] = []
    todo = [v for v in sys.vars if v not in keep]
    while True:
        for r in rows:
            if _trivial(r) is False:
                return rows, history, _refutation(r, steps)
        rows = [r for r in rows if _trivial(r) is not True]
        live = [v for v in todo if any(v in r.coeffs for r in rows)]
        if not live:
            break
        eq = next(((v, r) for v in live for r in rows if r.rel == EQ and v in r.coeffs), None)
        if eq is not None:
            v, e = eq
            history.append((v, "eq", [e]))
            new = []
            for r in rows:
                if r is e:
                    continue
                b = r.coeffs.get(v)
                if b:
                    r = _combine(r, Fraction(1), e, -b / e.coeffs[v])
                    steps.append(f"substitute {v}: {_format_affine(r.coeffs, r.const)} {r.rel} 0")
                new.append(r)
            rows = _prune(new)
            todo.remove(v)
            continue

        def cost(v):
            p = sum(1 for r in rows if r.coeffs.get(v, 0) > 0)
            n = sum(1 for r in rows if r.coeffs.get(v, 0) < 0)
            return (p * n - p - n, sys.vars.index(v))

        v = min(live, key=cost)
        pos = [r for r in rows if r.coeffs.get(v, 0) > 0]
        neg = [r for r in rows if r.coeffs.get(v, 0) < 0]
        rest = [r for r in rows if v not in r.coeffs]
        history.append((v, "fm", pos + neg))
        for p, n in itertools.product(pos, neg):
            r = _combine(p, -n.coeffs[v], n, p.coeffs[v])
            r.coeffs.pop(v, None)
            rest.append(r)
            steps.append(f"eliminate {v}: {_format_affine(r.coeffs, r.const)} {r.rel} 0")
        rows = _prune(rest)
        todo.remove(v)
    return rows, history, None


def _bounds(rows: Sequence[_Row], v: str, point: Mapping[str, Fraction]):
    lo = hi = None  # (value, strict)
    for r in rows:
        a = r.coeffs.get(v, 0)
        if not a:
            continue
        rest = r.const + sum(c * point[u] for u, c in r.coeffs.items() if u != v)
        val = -rest / a
        strict = r.rel == GT
        if a > 0:
            if lo is None or val > lo[0] or (val == lo[0] and strict):
                lo = (val, strict)
        else:
            if hi is None or val < hi[0] or (val == hi[0] and strict):
                hi = (val, strict)
    return lo, hi


def _pick(lo, hi) -> Fraction:
    if lo and hi:
        return lo[0] if lo[0] == hi[0] else (lo[0] + hi[0]) / 2
    if lo:
        return lo[0] + 1 if lo[1] else lo[0]
    if hi:
        return hi[0] - 1 if hi[1] else hi[0]
    return Fraction(0)


def fm_feasible(sys: LinSystem) -> FMResult:
    """Decide feasibility exactly; returns a witness or a replayable refutation."""
    _check_size(sys)
    rows, history, ref = _eliminate(sys)
    if ref is not None:
        return FMResult(False, refutation=ref)
    point: Dict[str, Fraction] = {}
    for v, kind, stage in reversed(history):
        if kind == "eq":
            e = stage[0]
            rest = e.const + sum(c * point.get(u, Fraction(0)) for u, c in e.coeffs.items() if u != v)
            point[v] = -rest / e.coeffs[v]
        else:
            full = {u: point.get(u, Fraction(0)) for u in sys.vars}
            point[v] = _pick(*_bounds(stage, v, full))
    for v in sys.vars:
        point.setdefault(v, Fraction(0))
    bad = [c for c in sys.all_constraints() if not c.holds(point)]
    if bad:
        raise LedgerError(f"internal error: witness violates {bad[0]}")
    return FMResult(True, witness=point)


def replay(sys: LinSystem, ref: Refutation) -> bool:
    """Check a refutation using only the original constraints."""
    cons = sys.all_constraints()
    total: Dict[str, Fraction] = {}
    const = Fraction(0)
    strict = False
    for i, y in ref.multipliers:
        if not 0 <= i < len(cons):
            return False
        c = cons[i]
        if c.rel != EQ and y < 0:
            return False
        if y == 0:
            continue
        for v, a in c.coeffs:
            total[v] = total.get(v, Fraction(0)) + y * a
        const += y * c.const
        strict = strict or (c.rel == GT and y > 0)
    if any(a != 0 for a in total.values()):
        return False
    if const != ref.constant or strict != ref.strict:
        return False
    return const < 0 or (const == 0 and strict)


# ------------------------------------------------------ independent oracle

def _solve_square(A: List[List[Fraction]], b: List[Fraction]) -> Optional[List[Fraction]]:
    n = len(A)
    M = [row[:] + [bi] for row, bi in zip(A, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                t = M[r][c]
                M[r] = [x - t * y for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


def _independent_rows(eqs):
    """Row-reduce ``A z = b``; None if inconsistent, else an independent subset."""
    rows = [(list(r), b) for r, b in eqs]
    basis: List[Tuple[List[Fraction], Fraction]] = []
    echelon: List[Tuple[int, List[Fraction], Fraction]] = []
    for r, b in rows:
        red, rb = list(r), b
        for piv, er, eb in echelon:
            if red[piv]:
                f = red[piv] / er[piv]
                red = [x - f * y for x, y in zip(red, er)]
                rb -= f * eb
        nz = next((j for j, x in enumerate(red) if x), None)
        if nz is None:
            if rb:
                return None
            continue
        echelon.append((nz, red, rb))
        basis.append((r, b))
    return basis


def vertex_feasible(sys: LinSystem) -> bool:
    """Naive feasibility oracle by vertex enumeration (at most eight variables).

    Free variables are split into nonnegative parts so the polyhedron is
    pointed; strict rows get a common margin ``e`` in [0, 1] that is
    maximized over the vertices.
    """
    if len(sys.vars) > ORACLE_MAX_VARS:
        raise LedgerError(f"vertex oracle supports at most {ORACLE_MAX_VARS} variables")
    cols: List[Tuple[str, int]] = []
    for v in sys.vars:
        cols.append((v, 1))
        if v not in sys.nonneg:
            cols.append((v, -1))
    n = len(cols) + 1  # last column is the margin e
    ineq: List[Tuple[List[Fraction], Fraction]] = []  # row . z >= rhs
    eqs: List[Tuple[List[Fraction], Fraction]] = []
    for c in sys.constraints:
        d = dict(c.coeffs)
        row = [d.get(v, Fraction(0)) * s for v, s in cols]
        if c.rel == EQ:
            eqs.append((row + [Fraction(0)], -c.const))
        else:
            ineq.append((row + [Fraction(-1 if c.strict else 0)], -c.const))
    for j in range(n):
        ineq.append(([Fraction(int(k == j)) for k in range(n)], Fraction(0)))
    ineq.append(([Fraction(0)] * (n - 1) + [Fraction(-1)], Fraction(-1)))
    eqs = _independent_rows(eqs)
    if eqs is None:
        return False
    best = None
    for pick in itertools.combinations(range(len(ineq)), n - len(eqs)):
        if len(eqs) > n:
            break
        A = [r for r, _ in eqs] + [ineq[i][0] for i in pick]
        b = [r for _, r in eqs] + [ineq[i][1] for i in pick]
        z = _solve_square(A, b)
        if z is None:
            continue
        if all(sum(a * x for a, x in zip(r, z)) == rhs for r, rhs in eqs) and \
                all(sum(a * x for a, x in zip(r, z)) >= rhs for r, rhs in ineq):
            best = z[-1] if best is None else max(best, z[-1])
    if best is None:
        return False
    return best > 0 or not sys.has_strict()


# ------------------------------------------------------------------ ledger

@dataclass(frozen=True)
class CaseRecord:
    label: str
    system: LinSystem
    source: str
    group: str = ""


def _parse_ledger(path: Path, group: str) -> List[CaseRecord]:
    records: List[CaseRecord] = []
    cur = None
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{path.name}:{lineno}"
        if line.startswith("case "):
            parts = [p.strip() for p in line[5:].split(";")]
            if len(parts) != 3 or not parts[1].startswith("cite ") or not parts[2].startswith("vars "):
                raise LedgerError(f"{where}: expected 'case <label> ; cite \"...\" ; vars a,b,...'")
            cite = parts[1][5:].strip()
            if not (cite.startswith('"') and cite.endswith('"')):
                raise LedgerError(f"{where}: citation must be quoted")
            names = [v.strip() for v in parts[2][5:].split(",") if v.strip()]
            cur = {"label": parts[0], "cite": cite[1:-1], "vars": names, "lines": []}
            records.append(cur)  # type: ignore[arg-type]
        elif line.startswith("c:"):
            if cur is None:
                raise LedgerError(f"{where}: constraint before any case")
            cur["lines"].append((where, line[2:].strip()))
        else:
            raise LedgerError(f"{where}: unrecognized line")
    out = []
    seen = set()
    for r in records:
        label = r["label"]  # type: ignore[index]
        if label in seen:
            raise LedgerError(f"duplicate case label {label!r}")
        seen.add(label)
        names = r["vars"]  # type: ignore[index]
        cons = []
        for where, text in r["lines"]:  # type: ignore[index]
            try:
                cons.append(parse_constraint(text, names))
            except LedgerError as exc:
                raise LedgerError(f"{where}: {exc}") from exc
        sys = LinSystem(tuple(names), tuple(cons), frozenset(names))
        if not sys.has_strict():
            raise LedgerError(f"case {label}: a contradictory system needs a strict relation")
        if INV_LAMBDA not in names:
            raise LedgerError(f"case {label}: missing variable {INV_LAMBDA}")
        out.append(CaseRecord(label, sys, r["cite"], group))  # type: ignore[index]
    return out


GROUPS = ("quartic", "quintic")
DEFAULT_LAMBDA = {"quartic": Fraction(16, 21), "quintic": Fraction(22, 25)}


def load_case_ledger(group: Optional[str] = None, path: Union[str, Path, None] = None) -> List[CaseRecord]:
    """Case records for ``group`` ("quartic", "quintic"), or both when omitted."""
    if path is not None:
        return _parse_ledger(Path(path), group or Path(path).stem)
    groups = GROUPS if group is None else (group,)
    out: List[CaseRecord] = []
    for g in groups:
        if g not in GROUPS:
            raise LedgerError(f"unknown ledger {g!r}; expected one of {GROUPS}")
        out.extend(_parse_ledger(DATA_DIR / f"ledger_{g}.txt", g))
    return out


@dataclass(frozen=True)
class Verdict:
    label: str
    lam: Fraction
    contradiction: bool
    zero_slack: Optional[bool] = None
    refutation: Optional[Refutation] = None
    witness: Optional[Dict[str, Fraction]] = None

    @property
    def kind(self) -> str:
        if not self.contradiction:
            return "consistent"
        return "contradiction (zero terminal slack)" if self.zero_slack else "contradiction"

    def to_json(self) -> dict:
        d = {"label": self.label, "lambda": format_fraction(self.lam), "verdict": self.kind}
        if self.refutation is not None:
            d["refutation"] = self.refutation.to_json()
        if self.witness is not None:
            d["witness"] = {k: format_fraction(v) for k, v in self.witness.items()}
        return d


def verify_case(rec: CaseRecord, lam) -> Verdict:
    lam = Fraction(lam)
    if not 0 < lam <= 1:
        raise LedgerError(f"lambda must lie in (0, 1], got {lam}")
    fixed = rec.system.fix(INV_LAMBDA, 1 / lam)
    res = fm_feasible(fixed)
    if res.feasible:
        return Verdict(rec.label, lam, False, witness=res.witness)
    ref = res.refutation
    assert ref is not None
    if not replay(fixed, ref):
        raise LedgerError(f"case {rec.label}: refutation failed to replay")
    return Verdict(rec.label, lam, True, ref.zero_slack, ref)


@dataclass(frozen=True)
class CriticalReport:
    value: Optional[Fraction]
    binding: Tuple[str, ...]
    per_case: Tuple[Tuple[str, Optional[Fraction]], ...]

    def to_json(self) -> dict:
        fmt = lambda v: None if v is None else format_fraction(v)  # noqa: E731
        return {"critical_lambda": fmt(self.value), "binding": list(self.binding),
                "cases": {k: fmt(v) for k, v in self.per_case}}


def _case_critical(rec: CaseRecord) -> Optional[Fraction]:
    """Largest lambda at which the case is contradictory (None: contradictory at every lambda)."""
    sys = rec.system
    _check_size(sys)
    rows, _, ref = _eliminate(sys, keep=(INV_LAMBDA,))
    if ref is not None:
        return None
    ups = []
    lows = []
    for r in rows:
        a = r.coeffs.get(INV_LAMBDA, 0)
        if r.rel == EQ:
            raise LedgerError(f"case {rec.label}: inv_lambda is pinned by an equality")
        if a < 0:
            ups.append(r.const / -a)
        elif a > 0:
            lows.append((-r.const / a, r.rel == GT))
    if not ups:
        raise LedgerError(f"case {rec.label}: no contradiction for any lambda (non-monotone)")
    sup = min(ups)
    # the case must stay consistent on [1, sup): no lower bound may cut into it
    floor = min(Fraction(1), sup)
    for lo, strict in lows:
        if lo > floor or (lo == floor and strict and sup > floor) or lo >= sup:
            raise LedgerError(f"case {rec.label}: non-monotone in inv_lambda (lower bound {lo})")
    return 1 / sup


def critical_report(recs: Union[CaseRecord, Sequence[CaseRecord]]) -> CriticalReport:
    if isinstance(recs, CaseRecord):
        recs = [recs]
    per = tuple((r.label, _case_critical(r)) for r in recs)
    vals = [v for _, v in per if v is not None]
    if not vals:
        return CriticalReport(None, (), per)
    best = min(vals)
    return CriticalReport(best, tuple(k for k, v in per if v == best), per)


def critical_lambda(recs: Union[CaseRecord, Sequence[CaseRecord]]) -> Optional[Fraction]:
    return critical_report(recs).value
