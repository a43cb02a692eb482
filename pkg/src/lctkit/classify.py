"""Decision procedures for quartic-surface points, sextic curves and quintic double points.

Each classifier normalizes coordinates, follows a fixed case tree and
returns an :class:`~lctkit.lct_core.LctCertificate` whose trace starts with
the case labels (``A.1(b)``, ``B.4(d)``, ``S.5(a)``, ``Q.(2)`` ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .lct_core import (
    EXACT,
    LOWER,
    UPPER,
    LctCertificate,
    LctError,
    isolated_at_origin,
    isolated_singularity_check,
    lct_plane_curve,
    lct_quasihomog,
    lct_sum_split_vars,
)
from .newton import Weight, diagonal_weight, leading_term, newton_data, weighted_mult
from .poly import (
    Poly,
    PolyError,
    dehomogenize,
    format_fraction,
    homogeneous_part,
    linear_change,
    mult_at_origin,
    parse_fraction,
    parse_poly,
)

__all__ = [
    "CaseTrace",
    "ReducedGerm",
    "NonNormalError",
    "NotSquarefreeError",
    "PartialResultError",
    "SingularLocus",
    "CorpusRow",
    "LABELS",
    "normalize_tangent_cone",
    "reduce_double_point",
    "classify_quartic_germ",
    "classify_quartic_point",
    "classify_sextic_curve",
    "classify_quintic_double_point",
    "singular_points",
    "global_lct_surface",
    "choose_chart",
    "parse_point",
    "format_point",
    "load_corpus",
    "case_labels",
]

DEFAULT_TRUNCATION = 9

ONE = Fraction(1)
HALF = Fraction(1, 2)


class NonNormalError(LctError):
    """The germ is singular along a curve, so the surface is not normal."""


class NotSquarefreeError(PolyError):
    pass


class PartialResultError(LctError):
    """Singular points could not all be found over the rationals."""


# Case labels and what each one means.
LABELS: Dict[str, str] = {
    "smooth": "point of multiplicity one",
    "A": "double point, tangent cone a double plane",
    "A.0": "double point, tangent cone not a double plane",
    "A.0(g3)": "double point, cubic part on x=0 not a cube",
    "A.1": "double point, cubic part on x=0 a cube",
    "A.1(y2z2)": "cube case with y^2z^2 in psi4",
    "A.1(a)": "cube case, z^2 not in g2",
    "A.1(b)": "cube case, z^2 in g2",
    "A.2": "double point, cubic part on x=0 vanishes",
    "A.2(h4 reduced)": "vanishing cubic part, reduced quartic part",
    "A.2(a)": "vanishing cubic part, z^2 not in g2",
    "A.2(a)(1)": "y^3z in psi4",
    "A.2(a)(2)": "y^4 in psi4, y^3z not",
    "A.2(a)(3)": "psi4 vanishes",
    "A.2(a)(3)(i)": "psi4 vanishes, g2 with distinct factors",
    "A.2(a)(3)(ii)": "psi4 vanishes, g2 a square",
    "A.2(b)": "vanishing cubic part, z^2 in g2",
    "A.2(b)(1)": "h4 a fourth power",
    "A.2(b)(2)": "h4 with a double or triple factor",
    "B": "triple point",
    "B.0": "triple point, tangent cubic log canonical",
    "B.1": "tangent cubic: three concurrent lines",
    "B.1(a)": "z^4 in f4", "B.1(b)": "z^4 not in f4",
    "B.2": "tangent cubic: conic and tangent line",
    "B.2(a)": "z^4 in f4", "B.2(b)": "no z^4, no xz^3", "B.2(c)": "no z^4, xz^3 present",
    "B.3": "tangent cubic: cuspidal cubic",
    "B.3(a)": "z^4 in f4", "B.3(b)": "no z^4, no yz^3", "B.3(c)": "no z^4, yz^3 present",
    "B.4": "tangent cubic: double line and line",
    "B.4(a)": "g = z^4", "B.4(b)": "g = z^3(y+az)", "B.4(c)": "g = y^2z^2+ayz^3+bz^4",
    "B.4(d)": "g = y^2z^2", "B.4(e)": "g = z^2(y+az)^2", "B.4(f)": "g = y^2z^2+ayz^3",
    "B.4(g)": "g = y^2z^2+az^4", "B.4(h)": "g = y^4", "B.4(i)": "g = y^3z",
    "B.4(j)": "g = y^2z(z+ay)",
    "B.5": "tangent cubic: triple line",
    "B.5(a)": "g = z^4", "B.5(b)": "g = yz^3", "B.5(c)": "g = y^2z^2", "B.5(d)": "g = yz^2(y+z)",
    "M4": "point of multiplicity four: cone over a quartic curve",
    "S.d<=2": "curve of multiplicity at most two",
    "S.mild": "tangent cone without a triple factor",
    "S.d=6": "ordinary sextuple point",
    "S.1(a)": "x^3, y^n first", "S.1(b)": "x^3, xy^m with m<=4 first", "S.1(c)": "x^3, xy^5 first",
    "S.2(a)": "x^4, y^n first", "S.2(b)": "x^4, xy^4 first", "S.2(c)": "x^4, xy^5 first",
    "S.3(a)": "x^3y, y^n first", "S.3(b)": "x^3y, xy^4 first", "S.3(c)": "x^3y, xy^5 first",
    "S.4(a)": "x^5, y^6", "S.4(b)": "x^5, xy^5 without y^6",
    "S.5(a)": "x^4y, y^6", "S.5(b)": "x^4y, xy^5 without y^6",
    "S.6(a)": "x^3y(ax+by), y^6", "S.6(b)": "x^3y(ax+by), xy^5 without y^6",
    "Q": "quintic double point",
    "Q.0": "quadratic part not a square",
    "Q.0(g3)": "cubic part on x=0 not a triple line",
    "Q.(1)": "psi4' nonzero", "Q.(2)": "psi4' zero, psi4-hat nonzero",
    "Q.(3)": "psi5' or psi6' nonzero", "Q.(4)": "only psi5-hat nonzero",
}


def case_labels(cert: LctCertificate) -> List[str]:
    return [t for t in cert.trace if t in LABELS]


@dataclass(frozen=True)
class CaseTrace:
    labels: Tuple[str, ...]
    lc_cone: bool = False

    def __post_init__(self):
        if not self.labels:
            raise ValueError("empty case trace")
        for lab in self.labels:
            if lab not in LABELS:
                raise ValueError(f"undocumented case label {lab!r}")


@dataclass(frozen=True)
class ReducedGerm:
    g: Poly
    N: int
    psi: Dict[int, Poly]

    def __post_init__(self):
        total = Poly.zero(self.g.ring)
        for m, p in self.psi.items():
            if not p.is_zero() and not all(sum(e) == m for e in p.terms):
                raise ValueError(f"psi[{m}] is not homogeneous of degree {m}")
            total = total + p
        if total != self.g:
            raise ValueError("g is not the sum of the psi terms")


# ----------------------------------------------------------- linear algebra

def _var_exp(n: int, i: int, k: int = 1) -> Tuple[int, ...]:
    return tuple(k if j == i else 0 for j in range(n))


def _linear_coeffs(l: Poly) -> List[Fraction]:
    return [l.coeff(_var_exp(l.nvars, i)) for i in range(l.nvars)]


def _adapt(f: Poly, coeffs: Sequence[Fraction], target: int,
           pivots: Optional[Sequence[int]] = None) -> Poly:
    """New coordinates in which variable ``target`` is the linear form ``coeffs``.

    Only one old variable (the pivot) is replaced, so variables outside the
    pivot and the target keep their meaning.
    """
    n = f.nvars
    a = [Fraction(c) for c in coeffs]
    cand = list(pivots) if pivots is not None else list(range(n))
    if target in cand and a[target] != 0:
        p = target
    else:
        p = next((i for i in cand if a[i] != 0), None)
        if p is None:
            raise PolyError("linear form does not involve an allowed pivot")
    if p != target:
        perm = [[Fraction(int(j == (p if i == target else target if i == p else i))) for j in range(n)]
                for i in range(n)]
        f = linear_change(f, perm)
        a[p], a[target] = a[target], a[p]
    M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    M[target] = [(-a[j] / a[target]) if j != target else 1 / a[target] for j in range(n)]
    return linear_change(f, M)


def _shift(f: Poly, var: int, combo: Dict[int, Fraction]) -> Poly:
    """Substitute ``x_var -> x_var + sum combo[j] x_j``."""
    n = f.nvars
    M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for j, c in combo.items():
        M[var][j] += c
    return linear_change(f, M)


def _move_to_axis(f: Poly, v: Sequence[Fraction], axis: int) -> Poly:
    """Linear change sending the point ``v`` to the coordinate point of ``axis``."""
    n = f.nvars
    cols = [None] * n
    cols[axis] = [Fraction(c) for c in v]
    basis = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    chosen = [cols[axis]]
    rest = [k for k in range(n) if k != axis]
    for k in rest:
        for e in basis:
            if _rank(chosen + [e]) == len(chosen) + 1:
                cols[k] = e
                chosen.append(e)
                basis.remove(e)
                break
    M = [[cols[j][i] for j in range(n)] for i in range(n)]
    return linear_change(f, M)


def _rank(rows: Sequence[Sequence[Fraction]]) -> int:
    A = [list(map(Fraction, r)) for r in rows]
    if not A:
        return 0
    r = 0
    for c in range(len(A[0])):
        p = next((k for k in range(r, len(A)) if A[k][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for k in range(len(A)):
            if k != r and A[k][c]:
                t = A[k][c] / A[r][c]
                A[k] = [x - t * y for x, y in zip(A[k], A[r])]
        r += 1
        if r == len(A):
            break
    return r


def _quadric_matrix(q: Poly) -> List[List[Fraction]]:
    n = q.nvars
    A = [[Fraction(0)] * n for _ in range(n)]
    for e, c in q.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            A[i][i] += c
        else:
            A[i][j] += c / 2
            A[j][i] += c / 2
    return A


def _factor(form: Poly) -> List[Tuple[Poly, int]]:
    """Irreducible factors over Q (constant dropped)."""
    import sympy

    if form.is_zero():
        return []
    _, facs = form.to_sympy().factor_list()
    out = []
    for fac, k in facs:
        p = Poly.from_sympy(fac, form.ring)
        if p.total_degree() > 0:
            out.append((p, k))
    out.sort(key=lambda t: (-t[1], t[0].total_degree(), str(t[0])))
    return out


def _pattern(facs: Sequence[Tuple[Poly, int]]) -> List[int]:
    """Root multiplicities over the algebraic closure of a product of binary forms."""
    out = []
    for p, k in facs:
        out.extend([k] * p.total_degree())
    return sorted(out, reverse=True)


def _pure(f: Poly, var: int) -> Poly:
    """Restriction ``var = 0`` kept in the same ring."""
    return Poly._raw(f.ring, {e: c for e, c in f.terms.items() if e[var] == 0})


def _x_coefficient(f: Poly, var: int, k: int) -> Poly:
    """Coefficient of ``x_var^k`` as a polynomial in the other variables."""
    out = {}
    for e, c in f.terms.items():
        if e[var] == k:
            ee = list(e)
            ee[var] = 0
            out[tuple(ee)] = c
    return Poly._raw(f.ring, out)


def _has(f: Poly, exp: Sequence[int]) -> bool:
    return f.coeff(tuple(exp)) != 0


def _drop_var(f: Poly, var: int) -> Poly:
    if any(e[var] for e in f.terms):
        raise PolyError("polynomial still involves the variable")
    ring = tuple(v for i, v in enumerate(f.ring) if i != var)
    return Poly._raw(ring, {tuple(k for i, k in enumerate(e) if i != var): c for e, c in f.terms.items()})


# ------------------------------------------------------------- reduction

def reduce_double_point(f: Poly, N: int = DEFAULT_TRUNCATION) -> ReducedGerm:
    """Complete the square in the first variable up to order ``N``.

    Repeats ``x -> x - phi_m/2`` with ``phi_m`` the lowest part of the
    cofactor of ``x`` until ``f = x^2 + g(rest) + O(N)``.
    """
    if N < 9:
        raise PolyError("truncation order must be at least 9")
    if f.nvars < 2:
        raise PolyError("need at least two variables")
    n = f.nvars
    x2 = _var_exp(n, 0, 2)
    if homogeneous_part(f, 2) != Poly.monomial(f.ring, x2) or f.constant_term() != 0 \
            or any(sum(e) == 1 for e in f.terms):
        raise PolyError("degree-2 part must be exactly x^2 with no lower terms")
    X = Poly.var(f.ring, f.ring[0])
    h = f.truncate(N)
    for _ in range(N + 1):
        mixed = {}
        for e, c in h.terms.items():
            if e[0] >= 1 and e != x2:
                mixed[(e[0] - 1,) + e[1:]] = c
        phi = Poly._raw(h.ring, mixed)
        if phi.is_zero() or phi.min_degree() >= N - 1:
            break
        low = homogeneous_part(phi, phi.min_degree())
        h = h.subs({f.ring[0]: X - low / 2}, truncate=N)
    else:  # pragma: no cover - each pass raises the order of the mixed part
        raise LctError("reduction did not terminate")
    rest = _drop_var(_pure(h, 0), 0)
    psi = {m: homogeneous_part(rest, m) for m in range(3, N)}
    g = Poly.zero(rest.ring)
    for p in psi.values():
        g = g + p
    return ReducedGerm(g, N, psi)


# --------------------------------------------------- tangent-cone normal forms

def normalize_tangent_cone(f: Poly, d: int) -> Tuple[Poly, CaseTrace]:
    """Linear change bringing the degree-``d`` part to a listed normal form.

    ``d = 2``: a double plane becomes ``x^2`` (the germ is rescaled).
    ``d = 3``: the tangent cubic becomes one of x^3+y^3 (any binary cubic),
    x^2y+y^2z, x^2z+y^3, x^2y, x^3 up to nonzero scalars.  A log canonical
    tangent cone short-circuits with ``lc_cone=True``.
    """
    if d not in (2, 3):
        raise PolyError("tangent cone normalization handles degrees 2 and 3")
    if f.nvars != 3 and d == 3:
        raise PolyError("cubic normalization needs three variables")
    if mult_at_origin(f) != d:
        raise PolyError(f"multiplicity at the origin is not {d}")
    fd = homogeneous_part(f, d)
    if d == 2:
        A = _quadric_matrix(fd)
        if _rank(A) >= 2:
            return f, CaseTrace(("A.0",), True)
        row = next(r for r in A if any(r))
        g = _adapt(f, row, 0)
        c = homogeneous_part(g, 2).coeff(_var_exp(g.nvars, 0, 2))
        return g / c, CaseTrace(("A",))
    facs = _factor(fd)
    if len(facs) == 1 and facs[0][1] == 3:
        return _adapt(f, _linear_coeffs(facs[0][0]), 0), CaseTrace(("B", "B.5"))
    if len(facs) == 2 and facs[0][1] == 2:
        g = _adapt(f, _linear_coeffs(facs[0][0]), 0)
        m = _factor(homogeneous_part(g, 3))[1][0]
        g = _adapt(g, _linear_coeffs(m), 1, pivots=(1, 2))
        return g, CaseTrace(("B", "B.4"))
    vertex = _cone_vertex(fd)
    if vertex is not None:
        return _move_to_axis(f, vertex, 2), CaseTrace(("B", "B.1"))
    worst = None
    for p in _projective_rational_zeros(fd.gradient(), fd.ring)[0]:
        i = next(k for k in range(3) if p[k] != 0)
        loc = dehomogenize(fd, fd.ring[i], p)
        c = lct_plane_curve(loc).value
        if c < 1 and (worst is None or c < worst[0]):
            worst = (c, p)
    if worst is None:
        return f, CaseTrace(("B", "B.0"), True)
    c, p = worst
    g = _move_to_axis(f, p, 2)
    g3 = homogeneous_part(g, 3)
    n = 3
    q = _x_coefficient(g3, 2, 1)  # cubic = z*q(x,y) + c(x,y)
    ql = _factor(q)
    if len(ql) != 1 or ql[0][1] != 2:
        raise LctError("unexpected tangent cone at the singular point of the cubic")
    l = _linear_coeffs(ql[0][0])
    if c == Fraction(5, 6):
        g = _adapt(g, l, 0, pivots=(0, 1))
        g3 = homogeneous_part(g, 3)
        a = g3.coeff((2, 0, 1))
        c0, c1 = g3.coeff((0, 3, 0)), g3.coeff((1, 2, 0))
        if c0 == 0:
            raise LctError("cuspidal cubic without y^3")
        g = _shift(g, 1, {0: -c1 / (3 * c0)})
        g3 = homogeneous_part(g, 3)
        g = _shift(g, 2, {1: -g3.coeff((2, 1, 0)) / a, 0: -g3.coeff((3, 0, 0)) / a})
        return g, CaseTrace(("B", "B.3"))
    if c == Fraction(3, 4):
        g = _adapt(g, l, 1, pivots=(0, 1))
        g3 = homogeneous_part(g, 3)
        a = g3.coeff((0, 2, 1))
        g = _shift(g, 2, {0: -g3.coeff((1, 2, 0)) / a, 1: -g3.coeff((0, 3, 0)) / a})
        return g, CaseTrace(("B", "B.2"))
    raise LctError(f"unexpected local threshold {c} of the tangent cubic")  # pragma: no cover


def _cone_vertex(form: Poly) -> Optional[List[Fraction]]:
    """A point v with directional derivative of ``form`` along v identically zero."""
    import sympy

    n = form.nvars
    derivs = [form.derivative(v) for v in form.ring]
    monos = sorted({e for d in derivs for e in d.terms})
    M = sympy.Matrix([[sympy.Rational(str(d.coeff(m))) for d in derivs] for m in monos])
    ns = M.nullspace()
    if len(ns) != 1:
        return None
    v = [Fraction(str(sympy.Rational(c))) for c in ns[0]]
    return v


# ------------------------------------------------------ singular points

@dataclass(frozen=True)
class SingularLocus:
    points: Tuple[Tuple[Fraction, ...], ...]
    complete: bool

    def __iter__(self):
        return iter((list(self.points), self.complete))


def _affine_rational_zeros(exprs, gens) -> Tuple[List[Tuple], bool]:
    import sympy

    exprs = [sympy.expand(e) for e in exprs]
    exprs = [e for e in exprs if e != 0]
    if not gens:
        return ([()] if not exprs else []), True
    if not exprs:
        return [], False
    G = sympy.groebner(exprs, *gens, order="lex")
    if list(G.exprs) == [1]:
        return [], True
    if not G.is_zero_dimensional:
        return [], False
    last = gens[-1]
    uni = [g for g in G.exprs if g.free_symbols <= {last}]
    complete = True
    roots = []
    for fac, _ in sympy.Poly(uni[0], last, domain="QQ").factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            roots.append(-b / a)
        else:
            complete = False
    out = []
    for r in sorted(roots):
        sub = [e.subs(last, r) for e in G.exprs]
        pts, ok = _affine_rational_zeros(sub, gens[:-1])
        complete = complete and ok
        out.extend(p + (r,) for p in pts)
    return out, complete


def _projective_rational_zeros(polys: Sequence[Poly], ring: Sequence[str]):
    """Rational zeros in projective space of homogeneous polynomials."""
    import sympy

    gens = sympy.symbols(tuple(ring))
    exprs = [p.to_sympy().as_expr() for p in polys if not p.is_zero()]
    n = len(ring)
    found = []
    complete = True
    for i in range(n):
        sub = {gens[k]: 0 for k in range(i)}
        sub[gens[i]] = 1
        es = [e.subs(sub) for e in exprs]
        pts, ok = _affine_rational_zeros(es, tuple(gens[i + 1:]))
        complete = complete and ok
        for p in pts:
            found.append(tuple([Fraction(0)] * i + [Fraction(1)] +
                               [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in p]))
    return found, complete


def singular_points(F: Poly) -> SingularLocus:
    """Rational singular points of a projective hypersurface (at most 4 variables)."""
    if not F.is_homogeneous() or F.is_zero():
        raise PolyError("singular_points needs a nonzero homogeneous polynomial")
    if F.nvars > 4:
        raise PolyError("singular_points supports at most 4 variables")
    pts, complete = _projective_rational_zeros(F.gradient() + [F], F.ring)
    return SingularLocus(tuple(pts), complete)


def parse_point(text: str) -> Tuple[Fraction, ...]:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise PolyError(f"point must look like [a:b:...]: {text!r}")
    coords = tuple(parse_fraction(t) for t in s[1:-1].split(":"))
    if all(c == 0 for c in coords):
        raise PolyError("the zero vector is not a projective point")
    return coords


def format_point(p: Sequence[Fraction]) -> str:
    return "[" + ":".join(format_fraction(Fraction(c)) for c in p) + "]"


def choose_chart(P: Sequence[Fraction]) -> int:
    """Index of the coordinate of largest magnitude after clearing denominators (last on ties)."""
    from math import gcd, lcm

    P = [Fraction(c) for c in P]
    den = lcm(*(c.denominator for c in P))
    ints = [int(c * den) for c in P]
    g = gcd(*ints)
    ints = [k // g for k in ints]
    best = max(abs(k) for k in ints)
    return max(i for i, k in enumerate(ints) if abs(k) == best)


# ------------------------------------------------------- quartic surfaces

def _cert(value, mode, labels, *, weight=None, leading=None, tag="", detail=(), src="", flags=()):
    return LctCertificate(Fraction(value), mode, weight, leading, tag,
                          tuple(labels) + tuple(detail), src, tuple(flags))


def classify_quartic_point(F: Poly, P: Sequence, N: int = DEFAULT_TRUNCATION) -> LctCertificate:
    """Local threshold of the surface ``F = 0`` at the projective point ``P``."""
    if F.nvars != 4 or not F.is_homogeneous() or F.total_degree() != 4:
        raise PolyError("expected a homogeneous quartic in four variables")
    P = tuple(Fraction(c) for c in P)
    i = choose_chart(P)
    f = dehomogenize(F, F.ring[i], P)
    cert = classify_quartic_germ(f, N)
    return cert.with_trace(input=f"{F} at {format_point(P)}")


def classify_quartic_germ(f: Poly, N: int = DEFAULT_TRUNCATION) -> LctCertificate:
    if f.nvars != 3:
        raise PolyError("surface germs live in three variables")
    if f.is_zero():
        raise PolyError("zero germ")
    if f.constant_term() != 0:
        raise PolyError("point not on the surface")
    m = mult_at_origin(f)
    src = str(f)
    if m == 1:
        return _cert(1, EXACT, ("smooth",), tag="smooth", src=src)
    if m in (2, 3) and not isolated_at_origin(f):
        raise NonNormalError("surface is singular along a curve through the point")
    if m == 2:
        return _case_a(f, N).with_trace(input=src)
    if m == 3:
        return _case_b(f).with_trace(input=src)
    fm = homogeneous_part(f, m)
    if f == fm and m == 4:
        if isolated_singularity_check(f):
            return _cert(Fraction(3, 4), EXACT, ("M4",), weight=Weight((1, 1, 1)), leading=f,
                         tag="cone over a smooth quartic curve", src=src)
        raise NonNormalError("cone over a singular quartic curve is singular along a line")
    raise LctError(f"multiplicity {m} germ is not a quartic cone")


def _lemma_sei_ok(g: Poly) -> Optional[bool]:
    """Newton polygon of g contains (1,6) whenever the leading term has y^3 z^k (k <= 2).

    Returns None when the hypothesis does not apply.
    """
    wb = diagonal_weight(g)
    if wb.weight is None:
        return None
    lt = leading_term(g, wb.weight)
    if not any(lt.coeff((3, k)) for k in range(3)):
        return None
    nd = newton_data(g)
    p = (1, 6)
    verts = nd.lower_vertices
    if p[0] < verts[0][0] or p[1] < verts[-1][1]:
        return False
    return all(a * p[0] + b * p[1] >= deg for (a, b), deg, _ in nd.faces)


def _case_a(f: Poly, N: int) -> LctCertificate:
    g0, tr = normalize_tangent_cone(f, 2)
    if tr.lc_cone:
        return _cert(1, EXACT, tr.labels, tag="tangent cone log canonical",
                     detail=("quadratic part of rank >= 2",))
    labels = ["A"]
    f = g0
    g3 = _pure(homogeneous_part(f, 3), 0)
    h4 = _pure(homogeneous_part(f, 4), 0)
    rational_frame = True
    if not g3.is_zero():
        facs = _factor(g3)
        if len(facs) == 1 and facs[0][1] == 3:
            f = _adapt(f, _linear_coeffs(facs[0][0]), 1, pivots=(1, 2))
            labels.append("A.1")
        else:
            labels.append("A.0(g3)")
    else:
        labels.append("A.2")
        facs = _factor(h4)
        lin = [(p, k) for p, k in facs if p.total_degree() == 1 and k >= 2]
        if h4.is_zero():
            rational_frame = False
        elif max(_pattern(facs)) == 1:
            labels.append("A.2(h4 reduced)")
        elif lin:
            f = _adapt(f, _linear_coeffs(lin[0][0]), 1, pivots=(1, 2))
        else:
            rational_frame = False
    f3 = homogeneous_part(f, 3)
    g2 = _x_coefficient(f3, 0, 1)
    h4 = _pure(homogeneous_part(f, 4), 0)
    red = reduce_double_point(f, N)
    if red.g.is_zero():
        raise NonNormalError(f"reduced germ vanishes to order {N}: singular along a curve")
    z2 = g2.coeff((0, 0, 2)) != 0
    psi4 = red.psi.get(4, Poly.zero(red.g.ring))
    if labels[1] == "A.1":
        if psi4.coeff((2, 2)):
            labels.append("A.1(y2z2)")
        else:
            labels.append("A.1(b)" if z2 else "A.1(a)")
    elif labels[1] == "A.2" and rational_frame and len(labels) == 2:
        if not z2:
            labels.append("A.2(a)")
            if psi4.coeff((3, 1)):
                labels.append("A.2(a)(1)")
            elif psi4.coeff((4, 0)):
                labels.append("A.2(a)(2)")
            elif psi4.is_zero():
                labels.append("A.2(a)(3)")
                pat = _pattern(_factor(_drop_var(g2, 0))) if not g2.is_zero() else []
                if pat == [1, 1]:
                    labels.append("A.2(a)(3)(i)")
                elif pat == [2]:
                    labels.append("A.2(a)(3)(ii)")
        else:
            labels.append("A.2(b)")
            pat = _pattern(_factor(h4))
            labels.append("A.2(b)(1)" if pat == [4] else "A.2(b)(2)")
    detail = []
    if z2 and rational_frame and labels[1] in ("A.1", "A.2"):
        ok = _lemma_sei_ok(red.g)
        if ok is False:
            raise NonNormalError("Newton polygon of the reduced germ misses y z^6")
        if ok:
            detail.append("yz^6 check passed")
    c = lct_plane_curve(red.g)
    value = lct_sum_split_vars(HALF, c.value)
    weight = leading = None
    if c.weight is not None:
        wy, wz = c.weight
        d = weighted_mult(red.g, c.weight)
        weight = Weight((d / 2, wy, wz))
        lt = leading_term(red.g, c.weight)
        X = Poly.var(f.ring, f.ring[0])
        leading = X * X + lt.reembed(f.ring)
    detail.append(f"g = {red.g}")
    detail.append(f"c0(g) = {format_fraction(c.value)} via {c.tag}")
    mode = c.mode if value < 1 else (EXACT if c.mode != UPPER else UPPER)
    return _cert(value, mode, labels, weight=weight, leading=leading, tag="double point reduction",
                 detail=detail)


# trusted outside-origin arguments for non-isolated leading terms
_TRUSTED = {
    "B.1(b)": "reducible leading term, sheets meet transversally off the origin",
    "B.2(b)": "leading term lc outside the origin (reducible, checked by hand)",
    "B.4": "leading term lc outside the origin (reduced g, deformation argument)",
    "B.4(b)": "deformation along the cuspidal singular curve",
    "B.4(c)": "deformation along the line x=z=0",
    "B.4(d)": "leading term lc outside the origin",
    "B.4(e)": "deformation along the line x=z=0",
    "B.4(f)": "deformations along both singular curves",
    "B.4(g)": "deformation along the line x=z=0",
    "B.4(j)": "deformation along the line x=z=0",
    "B.5(c)": "deformations along both singular lines at level 5/6",
    "B.5(d)": "deformation along the singular line at level 5/6",
}


def _weight_leaf(f: Poly, labels: List[str], w: Sequence[int], required: Sequence[Tuple[int, ...]] = ()):
    leaf = labels[-1]
    if required and not any(_has(f, e) for e in required):
        raise NonNormalError(f"case {leaf}: a monomial forced by normality is missing")
    fw = leading_term(f, w)
    cert = lct_quasihomog(fw, w)
    if not cert.exact and leaf in _TRUSTED:
        cert = lct_quasihomog(fw, w, trusted=_TRUSTED[leaf])
    if not cert.exact:
        if required:
            raise NonNormalError(f"case {leaf}: leading term {fw} is not log canonical outside the origin")
        return _cert(cert.value, UPPER, labels, weight=cert.weight, leading=fw, tag="weight bound",
                     detail=cert.trace, flags=("bound-only",))
    return _cert(cert.value, EXACT, labels, weight=cert.weight, leading=fw, tag=cert.tag,
                 detail=cert.trace)


def _case_b(f: Poly) -> LctCertificate:
    f, tr = normalize_tangent_cone(f, 3)
    labels = list(tr.labels)
    if tr.lc_cone:
        return _cert(1, EXACT, labels, tag="tangent cone log canonical", detail=("cubic curve lc",))
    kind = labels[-1]
    has = lambda *e: _has(f, e)  # noqa: E731
    if kind == "B.1":
        if has(0, 0, 4):
            return _weight_leaf(f, labels + ["B.1(a)"], (4, 4, 3))
        return _weight_leaf(f, labels + ["B.1(b)"], (3, 3, 2), [(1, 0, 3), (0, 1, 3)])
    if kind == "B.2":
        if has(0, 0, 4):
            return _weight_leaf(f, labels + ["B.2(a)"], (5, 6, 4))
        if not has(1, 0, 3):
            return _weight_leaf(f, labels + ["B.2(b)"], (3, 4, 2), [(0, 1, 3)])
        return _weight_leaf(f, labels + ["B.2(c)"], (4, 5, 3))
    if kind == "B.3":
        if has(0, 0, 4):
            return _weight_leaf(f, labels + ["B.3(a)"], (9, 8, 6))
        if not has(0, 1, 3):
            return _weight_leaf(f, labels + ["B.3(b)"], (6, 5, 3), [(1, 0, 3)])
        return _weight_leaf(f, labels + ["B.3(c)"], (7, 6, 4))
    g = _pure(homogeneous_part(f, 4), 0)
    if kind == "B.4":
        return _case_b4(f, g, labels)
    return _case_b5(f, g, labels)


def _case_b4(f: Poly, g: Poly, labels: List[str]) -> LctCertificate:
    if g.is_zero():
        raise NonNormalError("g = f4(0,y,z) vanishes")
    k = min(e[1] for e in g.terms)  # power of y dividing g
    rest = Poly._raw(g.ring, {(0, e[1] - k, e[2]): c for e, c in g.terms.items()})
    facs = _factor(rest) if rest.total_degree() > 0 else []
    pat = _pattern(facs)
    xy3, xz3 = (1, 3, 0), (1, 0, 3)
    if k <= 1 and all(m == 1 for m in pat):
        return _weight_leaf(f, labels, (3, 2, 2))

    def move(fac: Poly) -> Poly:
        return _adapt(f, _linear_coeffs(fac), 2, pivots=(2,))

    multiple = [(p, m) for p, m in facs if m >= 2]
    if k == 0:
        if pat == [4]:
            f2 = move(multiple[0][0])
            return _weight_leaf(f2, labels + ["B.4(a)"], (8, 4, 5), [xy3])
        if pat == [3, 1]:
            f2 = move(multiple[0][0])
            return _weight_leaf(f2, labels + ["B.4(b)"], (6, 3, 4), [xy3])
        if pat == [2, 2]:
            return _weight_leaf(f, labels + ["B.4(e)"], (3, 2, 2))
        # one double root and two simple ones, none at y = 0
        dbl = multiple[0][0]
        r = -dbl.coeff((0, 1, 0)) / dbl.coeff((0, 0, 1))  # z = r y
        simple = Poly.const(g.ring, 1)
        for p, m in facs:
            if m == 1:
                simple = simple * p
        lead = simple.coeff((0, 0, 2))
        mid = -simple.coeff((0, 1, 1)) / (2 * lead)
        leaf = "B.4(g)" if mid == r else "B.4(c)"
        return _weight_leaf(f, labels + [leaf], (3, 2, 2))
    if k == 1:
        if pat == [3]:
            f2 = move(multiple[0][0])
            return _weight_leaf(f2, labels + ["B.4(b)"], (6, 3, 4), [xy3])
        return _weight_leaf(f, labels + ["B.4(f)"], (3, 2, 2))
    if k == 2:
        if pat == [2]:
            if multiple and multiple[0][0].total_degree() == 1:
                f2 = move(multiple[0][0])
            else:
                f2 = f
            return _weight_leaf(f2, labels + ["B.4(d)"], (5, 4, 3), [xz3])
        return _weight_leaf(f, labels + ["B.4(j)"], (5, 4, 3), [xz3])
    if k == 3:
        f2 = move(facs[0][0])
        return _weight_leaf(f2, labels + ["B.4(i)"], (7, 5, 4), [xz3])
    return _weight_leaf(f, labels + ["B.4(h)"], (9, 6, 5), [xz3])


def _case_b5(f: Poly, g: Poly, labels: List[str]) -> LctCertificate:
    if g.is_zero():
        raise NonNormalError("g = f4(0,y,z) vanishes")
    facs = _factor(g)
    pat = _pattern(facs)
    xy3 = (1, 3, 0)
    if all(m == 1 for m in pat):
        return _weight_leaf(f, labels, (4, 3, 3))
    if pat == [4]:
        f2 = _adapt(f, _linear_coeffs(facs[0][0]), 2, pivots=(1, 2))
        return _weight_leaf(f2, labels + ["B.5(a)"], (12, 8, 9), [xy3])
    if pat == [3, 1]:
        f2 = _adapt(f, _linear_coeffs(facs[0][0]), 2, pivots=(1, 2))
        simple = _factor(_pure(homogeneous_part(f2, 4), 0))[1][0]
        f2 = _adapt(f2, _linear_coeffs(simple), 1, pivots=(1,))
        return _weight_leaf(f2, labels + ["B.5(b)"], (9, 6, 7), [xy3])
    if pat == [2, 2]:
        return _weight_leaf(f, labels + ["B.5(c)"], (4, 3, 3))
    return _weight_leaf(f, labels + ["B.5(d)"], (4, 3, 3))


def global_lct_surface(F: Poly, points: Optional[Sequence[Sequence]] = None,
                       N: int = DEFAULT_TRUNCATION) -> LctCertificate:
    """Minimum of the local thresholds over the singular points of ``F = 0``."""
    if points is None:
        locus = singular_points(F)
        if not locus.complete:
            raise PartialResultError("singular locus not fully rational; supply the points")
        points = locus.points
    if not points:
        return _cert(1, EXACT, ("smooth",), tag="no singular points", src=str(F))
    certs = [classify_quartic_point(F, P, N) for P in points]
    best = min(certs, key=lambda c: c.value)
    mode = EXACT if all(c.exact for c in certs) else UPPER
    detail = tuple(f"{format_point(P)}: {format_fraction(c.value)}" for P, c in zip(points, certs))
    return LctCertificate(best.value, mode, best.weight, best.leading, "minimum over singular points",
                          best.trace + detail, str(F), best.flags)


# ---------------------------------------------------------- sextic curves

def _is_squarefree(f: Poly) -> bool:
    _, facs = f.to_sympy().sqf_list()
    return all(k == 1 for _, k in facs)


def classify_sextic_curve(f: Poly) -> LctCertificate:
    """Threshold at the origin of a reduced plane curve of degree at most six."""
    if f.nvars != 2:
        raise PolyError("sextic classifier needs two variables")
    if f.is_zero() or f.constant_term() != 0:
        raise PolyError("curve must pass through the origin")
    if f.total_degree() > 6:
        raise PolyError("degree exceeds six")
    if not _is_squarefree(f):
        raise NotSquarefreeError("curve is not reduced")
    src = str(f)
    d = mult_at_origin(f)
    if d <= 2:
        return lct_plane_curve(f).with_trace("S.d<=2", input=src)
    fd = homogeneous_part(f, d)
    if d == 6:
        return _cert(Fraction(1, 3), EXACT, ("S.d=6",), weight=Weight((1, 1)), leading=fd,
                     tag="homogeneous with reduced tangent cone", src=src)
    facs = _factor(fd)
    high = [(p, k) for p, k in facs if k >= 3]
    if not high:
        return lct_plane_curve(f).with_trace("S.mild", input=src)
    l, k = high[0]
    f = _adapt(f, _linear_coeffs(l), 0)
    n_s = [s for s in range(4, 7) if _has(f, (0, s))]
    m_t = [t for t in range(3, 6) if _has(f, (1, t))]
    n = n_s[0] if n_s else None
    m = m_t[0] if m_t else None
    if d == 3:
        kind = 1
    elif d == 4:
        kind = 2 if k == 4 else 3
    else:
        kind = 4 if k == 5 else (5 if k == 4 else 6)
    if kind in (1, 2, 3):
        if n is not None and (m is None or m + 1 >= n):
            sub = "a"
            w = {1: (n, 3), 2: (n, 4), 3: (n - 1, 3)}[kind]
        elif m is not None and m <= 4:
            sub = "b"
            w = {1: (m, 2), 2: (4, 3), 3: (3, 2)}[kind]
        elif m == 5:
            sub = "c"
            if kind == 1:
                w = (2, 1) if _has(f, (2, 2)) else (5, 2)
            elif kind == 2:
                w = (3, 2) if _has(f, (2, 3)) else (5, 3)
            else:
                w = (2, 1)
        else:
            raise NotSquarefreeError("no y^s or xy^t monomial: curve contains a multiple line")
    else:
        if _has(f, (0, 6)):
            sub = "a"
        elif _has(f, (1, 5)):
            sub = "b"
        else:
            raise NotSquarefreeError("no y^6 or xy^5 monomial")
        w = {(4, "a"): (6, 5), (4, "b"): (5, 4), (5, "a"): (5, 4), (5, "b"): (4, 3),
             (6, "a"): (4, 3), (6, "b"): (3, 2)}[(kind, sub)]
    label = f"S.{kind}({sub})"
    fw = leading_term(f, w)
    q = Weight(w).total() / weighted_mult(f, w)
    cert = lct_quasihomog(fw, w)
    if cert.exact and cert.value == min(ONE, q):
        return _cert(cert.value, EXACT, (label,), weight=Weight(w), leading=fw, tag=cert.tag,
                     detail=cert.trace, src=src)
    exact = lct_plane_curve(f)
    return exact.with_trace(label, "degenerate leading term", input=src)


# ---------------------------------------------------------- quintic germs

def classify_quintic_double_point(f: Poly, N: int = DEFAULT_TRUNCATION) -> LctCertificate:
    """Threshold of a double point of a quintic threefold section (four variables)."""
    if f.nvars != 4:
        raise PolyError("quintic double points live in four variables")
    if f.constant_term() != 0 or mult_at_origin(f) != 2:
        raise PolyError("expected a double point at the origin")
    src = str(f)
    f2 = homogeneous_part(f, 2)
    A = _quadric_matrix(f2)
    if _rank(A) >= 2:
        return _cert(1, EXACT, ("Q", "Q.0"), tag="quadratic part of rank >= 2", src=src)
    row = next(r for r in A if any(r))
    f = _adapt(f, row, 0)
    f = f / homogeneous_part(f, 2).coeff((2, 0, 0, 0))
    g3 = _pure(homogeneous_part(f, 3), 0)
    facs = _factor(g3)
    if not (len(facs) == 1 and facs[0][1] == 3):
        if g3.is_zero():
            raise NonNormalError("cubic part on x=0 vanishes")
        return _cert(1, EXACT, ("Q", "Q.0(g3)"), tag="x^2 + g3 with g3 not a triple line", src=src)
    f = _adapt(f, _linear_coeffs(facs[0][0]), 1, pivots=(1, 2, 3))
    red = reduce_double_point(f, N)
    zero = Poly.zero(red.g.ring)
    psi = {m: red.psi.get(m, zero) for m in (4, 5, 6)}
    prime = {m: _x_coefficient(p, 0, 0) for m, p in psi.items()}
    hat = {m: _x_coefficient(p, 0, 1) for m, p in psi.items()}
    if not prime[4].is_zero():
        leaf, w = "Q.(1)", (12, 8, 6, 6)
    elif not hat[4].is_zero():
        leaf, w = "Q.(2)", (9, 6, 4, 4)
    elif not prime[5].is_zero():
        leaf, w = "Q.(3)", (15, 10, 6, 6)
    elif not prime[6].is_zero():
        leaf, w = "Q.(3)", (3, 2, 1, 1)
    elif not hat[5].is_zero():
        leaf, w = "Q.(4)", (3, 2, 1, 1)
    else:
        raise NonNormalError("psi4', psi4-hat, psi5', psi6', psi5-hat all vanish: non-isolated")
    X = Poly.var(f.ring, f.ring[0])
    h = X * X + red.g.reembed(f.ring)
    hw = leading_term(h, w)
    try:
        cert = lct_quasihomog(hw, w)
    except PolyError:
        cert = None
    labels = ("Q", leaf)
    branch = "w=(" + ",".join(map(str, w)) + ")"
    if cert is not None and cert.exact and cert.value == 1:
        return _cert(1, EXACT, labels, weight=Weight(w), leading=hw, tag="c0(f) >= c0(h_w) = 1",
                     detail=(branch,) + cert.trace, src=src)
    if cert is not None and cert.exact:
        return _cert(cert.value, LOWER, labels, weight=Weight(w), leading=hw, tag="c0(f) >= c0(h_w)",
                     detail=(branch,) + cert.trace, src=src)
    return _cert(1, EXACT, labels, weight=Weight(w), leading=hw,
                 tag="trusted: h_w lc at level one for this branch", detail=(branch, "trusted"), src=src)


# ------------------------------------------------------------------ corpora

DATA_DIR = Path(__file__).with_name("data")


@dataclass(frozen=True)
class CorpusRow:
    index: int
    mu: Fraction
    poly: Poly
    points: Tuple[Tuple[Fraction, ...], ...]
    line: int
    text: str = field(default="", compare=False)


def load_corpus(name_or_path, ring: Sequence[str]) -> List[CorpusRow]:
    """Read ``<mu> ; <polynomial> [; <point> ...]`` records (``#`` starts a comment)."""
    p = Path(name_or_path)
    if not p.exists():
        p = DATA_DIR / f"{name_or_path}.txt"
    rows = []
    for lineno, raw in enumerate(p.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [s.strip() for s in line.split(";")]
        if len(parts) < 2:
            raise PolyError(f"{p.name}:{lineno}: expected '<mu> ; <poly> [; <point> ...]'")
        try:
            mu = parse_fraction(parts[0])
            poly = parse_poly(parts[1], ring)
            pts = tuple(parse_point(s) for s in parts[2:])
        except (PolyError, ValueError, ZeroDivisionError) as exc:
            raise PolyError(f"{p.name}:{lineno}: {exc}") from exc
        rows.append(CorpusRow(len(rows) + 1, mu, poly, pts, lineno, line))
    return rows

