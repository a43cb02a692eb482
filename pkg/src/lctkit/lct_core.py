"""Threshold engines for hypersurface germs.

Closed forms, the basic bounds, quasi-homogeneous evaluation, an embedded
resolution oracle for plane curves and the sum rule for functions in
disjoint sets of variables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from . import upoly
from .newton import (
    Weight,
    _lower_chain_2d,
    diagonal_weight,
    is_weighted_homogeneous,
    leading_term,
    optimal_weight_nd,
    weighted_mult,
)
from .poly import Poly, PolyError, ZeroPolynomialError, format_fraction, mult_at_origin

__all__ = [
    "LctCertificate",
    "LctError",
    "BudgetExceeded",
    "UnsupportedCenter",
    "lct_bounds",
    "lct_binomial",
    "binomial_formula_printed",
    "lct_curve_resolution",
    "lct_adapted_coordinates",
    "lct_sum_split_vars",
    "lct_quasihomog",
    "isolated_singularity_check",
    "isolated_at_origin",
    "lct_plane_curve",
    "lct_germ",
    "qh_max_multiplicity",
]

EXACT, LOWER, UPPER = "exact", "lower_bound", "upper_bound"
DEFAULT_BUDGET = 64


class LctError(ValueError):
    pass


class BudgetExceeded(LctError):
    pass


class UnsupportedCenter(LctError):
    """A blowup center is an irrational point carrying a multiple tangent."""


@dataclass(frozen=True)
class LctCertificate:
    value: Fraction
    mode: str
    weight: Optional[Weight] = None
    leading: Optional[Poly] = None
    tag: str = ""
    trace: Tuple[str, ...] = ()
    input: str = ""
    flags: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not (0 < self.value <= 1):
            raise LctError(f"threshold out of range: {self.value}")
        if self.mode not in (EXACT, LOWER, UPPER):
            raise LctError(f"bad mode {self.mode!r}")
        if self.mode == EXACT and self.weight is None and not self.trace and not self.tag:
            raise LctError("exact certificate without witness")

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def with_trace(self, *labels: str, **changes) -> "LctCertificate":
        data = dict(self.__dict__)
        data.update(changes)
        data["trace"] = tuple(labels) + tuple(self.trace)
        return LctCertificate(**data)

    def to_json(self) -> dict:
        return {
            "input": self.input,
            "value": format_fraction(self.value),
            "mode": self.mode,
            "weight": [format_fraction(v) for v in self.weight] if self.weight else [],
            "leading_term": str(self.leading) if self.leading is not None else "",
            "trace": list(self.trace) + ([f"tag:{self.tag}"] if self.tag else []),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# ------------------------------------------------------------------ bounds

def lct_bounds(f: Poly) -> Tuple[Fraction, Fraction]:
    """``1/d <= lct <= min(1, n/d)`` with ``d`` the multiplicity."""
    if f.is_zero():
        raise ZeroPolynomialError("lct of the zero polynomial")
    d = mult_at_origin(f)
    if d <= 1:
        return Fraction(1), Fraction(1)
    return Fraction(1, d), min(Fraction(1), Fraction(f.nvars, d))


def lct_sum_split_vars(c1: Fraction, c2: Fraction) -> Fraction:
    return min(Fraction(1), Fraction(c1) + Fraction(c2))


# ---------------------------------------------------------------- binomials

def _check_binomial(m1, n1, m2, n2):
    if min(m1, n1, m2, n2) < 0:
        raise LctError("exponents must be nonnegative")
    if (m1, n1) == (m2, n2):
        raise LctError("the two monomials coincide")
    if m1 * n2 == m2 * n1:
        raise LctError("degenerate binomial: proportional exponent vectors")


def binomial_formula_printed(m1: int, n1: int, m2: int, n2: int) -> Fraction:
    """The textbook two-monomial formula with gcd terms, zero-exponent convention.

    Kept for comparison only; :func:`lct_binomial` is the engine value.
    """
    _check_binomial(m1, n1, m2, n2)
    cands = [Fraction(m1 - n1 - m2 + n2, m1 * n2 - m2 * n1)]
    if min(m1, m2) > 0:
        cands.append(Fraction(1, gcd(m1, m2)))
    if min(n1, n2) > 0:
        cands.append(Fraction(1, gcd(n1, n2)))
    return min(Fraction(1), min(cands))


def lct_binomial(m1: int, n1: int, m2: int, n2: int) -> Fraction:
    """lct of ``x^m1 y^n1 + x^m2 y^n2`` at the origin.

    Edge term ``(m1-n1-m2+n2)/(m1 n2 - m2 n1)`` together with the reduced
    coordinate-axis components ``x^min(m1,m2)`` and ``y^min(n1,n2)``; a zero
    minimum contributes nothing.  If one monomial divides the other the germ
    is a monomial times a unit.
    """
    _check_binomial(m1, n1, m2, n2)
    a, b = min(m1, m2), min(n1, n2)
    cands = [Fraction(1)]
    if a:
        cands.append(Fraction(1, a))
    if b:
        cands.append(Fraction(1, b))
    dominated = (m1 <= m2 and n1 <= n2) or (m2 <= m1 and n2 <= n1)
    if not dominated:
        cands.append(Fraction(m1 - n1 - m2 + n2, m1 * n2 - m2 * n1))
    return min(cands)


# -------------------------------------------------------- resolution oracle

Dict2 = Dict[Tuple[int, int], Fraction]


def _mult(c: Dict2) -> int:
    return min(i + j for i, j in c)


def _chart_u(c: Dict2, m: int, t0: Fraction) -> Dict2:
    """Strict transform in the chart v = u*t, then t -> t + t0."""
    by_i: Dict[int, Dict[int, Fraction]] = {}
    for (i, j), a in c.items():
        by_i.setdefault(i + j - m, {})[j] = a
    out: Dict2 = {}
    for i, col in by_i.items():
        coeffs = [Fraction(0)] * (max(col) + 1)
        for j, a in col.items():
            coeffs[j] = a
        if t0:
            coeffs = upoly.taylor_shift(coeffs, t0)
        for j, a in enumerate(coeffs):
            if a:
                out[(i, j)] = a
    return out


def _chart_v(c: Dict2, m: int) -> Dict2:
    """Strict transform in the chart u = s*v (coordinates (s, v))."""
    return {(i, i + j - m): a for (i, j), a in c.items()}


def _tangent(c: Dict2, m: int) -> List[Fraction]:
    """Tangent cone dehomogenized at u = 1: coefficients in t (v = t u)."""
    coeffs = [Fraction(0)] * (m + 1)
    for (i, j), a in c.items():
        if i + j == m:
            coeffs[j] = a
    return upoly.trim(coeffs)


def _is_snc(comps, axes) -> bool:
    ne = sum(1 for a in axes if a is not None)
    mults = [_mult(c) for c, _ in comps]
    tot = sum(mults)
    if tot == 0:
        return True
    if ne == 2:
        return False
    if ne == 1:
        if tot != 1:
            return False
        (c, _), = comps
        a, b = c.get((1, 0), 0), c.get((0, 1), 0)
        return (axes[0] is not None and b != 0) or (axes[1] is not None and a != 0)
    if tot == 1:
        return True
    if tot != 2:
        return False
    if len(comps) == 1:
        c, _ = comps[0]
        A, B, C = c.get((2, 0), 0), c.get((1, 1), 0), c.get((0, 2), 0)
        return B * B - 4 * A * C != 0
    (c1, _), (c2, _) = comps
    return c1.get((1, 0), 0) * c2.get((0, 1), 0) - c1.get((0, 1), 0) * c2.get((1, 0), 0) != 0


def _sqf_components(f: Poly) -> List[Tuple[Dict2, int]]:
    import sympy

    _, parts = f.to_sympy().sqf_list()
    out = []
    for p, e in parts:
        q = Poly.from_sympy(p, f.ring)
        out.append((dict(q.terms), e))
    return out


def lct_curve_resolution(f: Poly, budget: int = DEFAULT_BUDGET) -> LctCertificate:
    """Exact lct of a plane-curve germ by iterated point blowups."""
    if f.nvars != 2:
        raise PolyError("curve resolution needs exactly two variables")
    if f.is_zero():
        raise ZeroPolynomialError("lct of the zero polynomial")
    if f.constant_term() != 0:
        return LctCertificate(Fraction(1), EXACT, tag="nonvanishing", trace=("unit",), input=str(f))
    comps = [(c, e) for c, e in _sqf_components(f) if c.get((0, 0), 0) == 0]
    cands: List[Tuple[Fraction, str]] = []
    for c, e in comps:
        cands.append((Fraction(1, e), f"branch multiplicity {e}"))
    work = [(comps, (None, None))]
    blowups = 0
    while work:
        comps, axes = work.pop()
        comps = [(c, e) for c, e in comps if c.get((0, 0), 0) == 0]
        if not comps or _is_snc(comps, axes):
            continue
        blowups += 1
        if blowups > budget:
            raise BudgetExceeded(f"resolution exceeded {budget} blowups")
        mults = [_mult(c) for c, _ in comps]
        N = sum(a[0] for a in axes if a) + sum(e * m for (_, e), m in zip(comps, mults))
        k = sum(a[1] for a in axes if a) + 1
        new = (N, k)
        cands.append((Fraction(k + 1, N), f"E{blowups}: N={N} k={k}"))
        prod: List[Fraction] = [Fraction(1)]
        at_inf = 0
        for (c, _), m in zip(comps, mults):
            t = _tangent(c, m)
            at_inf += m - (len(t) - 1)
            prod = upoly.mul(prod, t)
        for fac, r in upoly.factor_rational(prod):
            if len(fac) == 2:
                t0 = -fac[0]
                nc = [(_chart_u(c, m, t0), e) for (c, e), m in zip(comps, mults)]
                work.append((nc, (new, axes[1] if t0 == 0 else None)))
            elif r > 1:
                raise UnsupportedCenter("multiple tangent direction over an irrational point")
        if at_inf:
            nc = [(_chart_v(c, m), e) for (c, e), m in zip(comps, mults)]
            work.append((nc, (axes[0], new)))
    value = min([Fraction(1)] + [c for c, _ in cands])
    trace = [f"blowups={blowups}"] + [lab for c, lab in cands if c == value][:1]
    return LctCertificate(value, EXACT, tag="resolution", trace=tuple(trace), input=str(f))


# ---------------------------------------------------- adapted coordinates

def _chain(f: Poly):
    return _lower_chain_2d(f.support())


def lct_adapted_coordinates(f: Poly, budget: int = DEFAULT_BUDGET) -> LctCertificate:
    """lct = min(1, 1/t) with t the Newton distance in adapted coordinates.

    Coordinates are adapted unless the principal edge carries a root of
    multiplicity above t; such a root is unique, hence rational, and is
    removed by ``y -> y + c x^k`` (or the symmetric change).
    """
    if f.nvars != 2:
        raise PolyError("adapted coordinates need exactly two variables")
    if f.constant_term() != 0:
        return LctCertificate(Fraction(1), EXACT, tag="nonvanishing", trace=("unit",), input=str(f))
    x, y = f.ring
    g = f
    steps = []
    for _ in range(budget):
        wb = diagonal_weight(g)
        t = 1 / wb.bound
        if wb.weight is None:
            break
        wx, wy = wb.weight.as_ints()
        fw = leading_term(g, wb.weight)
        change = None
        if wx == 1:
            root = _high_root(fw, 1, t)
            if root is not None:
                change = {y: Poly.var(g.ring, y) + Poly.var(g.ring, x) ** wy * root}
                steps.append(f"{y}->{y}+({root})*{x}^{wy}")
        if change is None and wy == 1:
            root = _high_root(fw, 0, t)
            if root is not None:
                change = {x: Poly.var(g.ring, x) + Poly.var(g.ring, y) ** wx * root}
                steps.append(f"{x}->{x}+({root})*{y}^{wx}")
        if change is None:
            break
        g = g.subs(change)
    else:
        raise BudgetExceeded("adapted coordinates not reached within budget")
    value = min(Fraction(1), 1 / t)
    return LctCertificate(value, EXACT, tag="adapted coordinates",
                          trace=tuple(["newton distance " + format_fraction(t)] + steps), input=str(f))


def _high_root(fw: Poly, var: int, t: Fraction) -> Optional[Fraction]:
    """Nonzero root of fw restricted to the other variable = 1 with multiplicity > t."""
    coeffs: Dict[int, Fraction] = {}
    for e, c in fw.terms.items():
        coeffs[e[var]] = coeffs.get(e[var], 0) + c
    lst = [coeffs.get(k, Fraction(0)) for k in range(max(coeffs) + 1)]
    while lst and lst[0] == 0:
        lst.pop(0)
    for fac, r in upoly.factor_rational(lst):
        if r > t:
            if len(fac) != 2:
                raise LctError("irrational high-multiplicity root on the principal edge")
            return -fac[0]
    return None


# ------------------------------------------------------- quasi-homogeneous

def qh_max_multiplicity(fw: Poly) -> int:
    """Largest multiplicity of a component of a quasi-homogeneous plane curve."""
    if fw.nvars != 2:
        raise PolyError("two variables expected")
    alpha = min(e[0] for e in fw.terms)
    beta = min(e[1] for e in fw.terms)
    h: Dict[int, Fraction] = {}
    for (i, j), c in fw.terms.items():
        h[j - beta] = h.get(j - beta, 0) + c
    lst = [h.get(k, Fraction(0)) for k in range(max(h) + 1)]
    return max(alpha, beta, upoly.max_root_multiplicity(lst))


def _components(f: Poly) -> List[List[int]]:
    """Variable groups that never share a monomial (connected components)."""
    n = f.nvars
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in f.terms:
        idx = [i for i, k in enumerate(e) if k]
        for a in idx[1:]:
            parent[find(a)] = find(idx[0])
    used = [i for i in range(n) if any(e[i] for e in f.terms)]
    groups: Dict[int, List[int]] = {}
    for i in used:
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _restrict(f: Poly, idx: Sequence[int]) -> Poly:
    ring = tuple(f.ring[i] for i in idx)
    terms = {}
    for e, c in f.terms.items():
        if any(e[i] for i in idx):
            terms[tuple(e[i] for i in idx)] = c
    return Poly(ring, terms)


def lct_quasihomog(fw: Poly, w: Sequence, trusted: Optional[str] = None) -> LctCertificate:
    """Threshold of a weighted-homogeneous germ.

    Exact ``min(1, sum(w)/w(f))`` when the zero locus is log canonical away
    from the origin at that level: an isolated singularity, or a supplied
    ``trusted`` justification.  Otherwise an upper bound.
    """
    if fw.is_zero():
        raise ZeroPolynomialError("lct of the zero polynomial")
    if not is_weighted_homogeneous(fw, w):
        raise LctError("polynomial is not weighted homogeneous for the given weight")
    w = Weight(w)
    q = w.total() / weighted_mult(fw, w)
    val = min(Fraction(1), q)
    src = str(fw)
    groups = _components(fw)
    unused = fw.nvars - sum(len(g) for g in groups)
    if fw.nvars == 2 and not unused:
        e = qh_max_multiplicity(fw)
        if val * e <= 1:
            return LctCertificate(val, EXACT, w, fw, "lc outside origin", ("quasi-homogeneous",), src)
        v = min(val, Fraction(1, e))
        return LctCertificate(v, EXACT, w, fw, "weighted blowup",
                              (f"component multiplicity {e}",), src)
    if len(groups) == 1 and unused:
        sub = _restrict(fw, groups[0])
        c = lct_quasihomog(sub, [w[i] for i in groups[0]], trusted)
        return c.with_trace(f"cylinder over {','.join(sub.ring)}", weight=w, leading=fw, input=src)
    if len(groups) > 1 or unused:
        total = Fraction(0)
        exact = True
        for g in groups:
            sub = _restrict(fw, g)
            if len(g) == 1:
                total += Fraction(1, mult_at_origin(sub))
                continue
            c = lct_quasihomog(sub, [w[i] for i in g], trusted)
            exact = exact and c.exact
            total += c.value
        total = min(Fraction(1), total)
        return LctCertificate(total, EXACT if exact else UPPER, w, fw, "sum rule",
                              ("disjoint variables",), src)
    if trusted:
        return LctCertificate(val, EXACT, w, fw, trusted, ("trusted",), src)
    if fw.nvars <= 3 and isolated_singularity_check(fw):
        return LctCertificate(val, EXACT, w, fw, "isolated singularity", ("quasi-homogeneous",), src)
    return LctCertificate(val, UPPER, w, fw, "weight bound", ("not certified",), src, ("non-isolated",))


def isolated_singularity_check(f: Poly, max_vars: int = 3) -> bool:
    """True iff the only common zero of ``f`` and its partials is the origin."""
    import sympy

    if f.is_zero():
        raise ZeroPolynomialError("isolated-singularity check of the zero polynomial")
    if f.nvars > max_vars:
        raise PolyError(f"isolated-singularity check supports at most {max_vars} variables")
    if f.constant_term() != 0:
        return False
    gens = [sympy.Symbol(n) for n in f.ring]
    t = sympy.Dummy("t")
    polys = [p.to_sympy().as_expr() for p in [f] + f.gradient() if not p.is_zero()]
    # no singular point with x_i != 0, for every i
    for v in gens:
        G = sympy.groebner(polys + [1 - t * v], t, *gens, order="grevlex")
        if list(G.exprs) != [1]:
            return False
    return True


def isolated_at_origin(f: Poly) -> bool:
    """True iff the origin is an isolated point of the singular locus of ``f = 0``.

    The origin is isolated iff it avoids the closure of the locus minus the
    origin, which is the union over coordinates of ``V(J : x_i^oo)``.
    """
    import sympy

    if f.is_zero():
        raise ZeroPolynomialError("isolated-singularity check of the zero polynomial")
    if f.constant_term() != 0:
        return True
    gens = [sympy.Symbol(n) for n in f.ring]
    t = sympy.Dummy("t")
    polys = [p.to_sympy().as_expr() for p in [f] + f.gradient() if not p.is_zero()]
    if sympy.groebner(polys, *gens, order="grevlex").is_zero_dimensional:
        return True
    for v in gens:
        G = sympy.groebner(polys + [1 - t * v], t, *gens, order="lex")
        sat = [g for g in G.exprs if t not in g.free_symbols]
        at_zero = [g.subs({u: 0 for u in gens}) for g in sat]
        if all(val == 0 for val in at_zero):
            return False
    return True


# --------------------------------------------------------- plane curves

def lct_plane_curve(f: Poly, budget: int = DEFAULT_BUDGET) -> LctCertificate:
    """Exact lct of a plane-curve germ at the origin."""
    if f.nvars != 2:
        raise PolyError("plane curve engine needs exactly two variables")
    if f.is_zero():
        raise ZeroPolynomialError("lct of the zero polynomial")
    src = str(f)
    if f.constant_term() != 0:
        return LctCertificate(Fraction(1), EXACT, tag="nonvanishing", trace=("unit",), input=src)
    if mult_at_origin(f) == 1:
        return LctCertificate(Fraction(1), EXACT, tag="smooth", trace=("smooth point",), input=src)
    wb = diagonal_weight(f)
    if wb.flag == "monomial":
        (i, j), = _chain(f)
        v = min([Fraction(1)] + [Fraction(1, k) for k in (i, j) if k])
        return LctCertificate(v, EXACT, tag="monomial", trace=("monomial",), input=src)
    if wb.weight is not None:
        fw = leading_term(f, wb.weight)
        q = min(Fraction(1), wb.bound)
        if q * qh_max_multiplicity(fw) <= 1:
            return LctCertificate(q, EXACT, wb.weight, fw, "diagonal weight",
                                  ("leading term lc outside origin",), src)
    if len(f) == 2:
        (e1, _), (e2, _) = f.items()
        if e1[0] * e2[1] != e2[0] * e1[1]:
            v = lct_binomial(e1[0], e1[1], e2[0], e2[1])
            return LctCertificate(v, EXACT, wb.weight, None, "binomial", ("two-monomial formula",), src)
    try:
        return lct_curve_resolution(f, budget)
    except UnsupportedCenter:
        return lct_adapted_coordinates(f, budget).with_trace("irrational center")


# -------------------------------------------------------------- general germs

def lct_germ(f: Poly, budget: int = DEFAULT_BUDGET) -> LctCertificate:
    """Best available certificate for a germ at the origin in any number of variables."""
    if f.is_zero():
        raise ZeroPolynomialError("lct of the zero polynomial")
    src = str(f)
    if f.constant_term() != 0:
        return LctCertificate(Fraction(1), EXACT, tag="nonvanishing", trace=("unit",), input=src)
    if mult_at_origin(f) == 1:
        return LctCertificate(Fraction(1), EXACT, tag="smooth", trace=("smooth point",), input=src)
    used = [i for i in range(f.nvars) if any(e[i] for e in f.terms)]
    if len(used) < f.nvars:
        sub = _restrict(f, used)
        return lct_germ(sub, budget).with_trace(f"cylinder over {','.join(sub.ring)}", input=src)
    if f.nvars == 1:
        d = mult_at_origin(f)
        return LctCertificate(Fraction(1, d), EXACT, tag="one variable", trace=(f"order {d}",), input=src)
    if f.nvars == 2:
        return lct_plane_curve(f, budget)
    groups = _components(f)
    if len(groups) > 1:
        parts = [lct_germ(_restrict(f, g), budget) for g in groups]
        total = Fraction(0)
        for c in parts:
            total += c.value
        exact = all(c.exact for c in parts)
        total = min(Fraction(1), total)
        mode = EXACT if exact else (LOWER if all(c.mode != UPPER for c in parts) else UPPER)
        return LctCertificate(total, mode, tag="sum rule",
                              trace=tuple(f"{c.input}: {format_fraction(c.value)}" for c in parts), input=src)
    lo, hi = lct_bounds(f)
    wb = optimal_weight_nd(f)
    if wb.weight is not None:
        fw = leading_term(f, wb.weight)
        cert = lct_quasihomog(fw, wb.weight)
        if cert.exact and cert.value == min(Fraction(1), wb.bound):
            return LctCertificate(cert.value, EXACT, wb.weight, fw, "weight method",
                                  ("leading term lc outside origin",) + cert.trace, src)
        ub = min(hi, min(Fraction(1), wb.bound))
        return LctCertificate(ub, UPPER, wb.weight, fw, "weight bound", ("not certified",), src, ("bound-only",))
    ub = min(hi, min(Fraction(1), wb.bound))
    return LctCertificate(ub, UPPER, tag="weight bound", trace=(wb.flag or "",), input=src, flags=("non-isolated",))
