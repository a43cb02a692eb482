"""Univariate helpers over the rationals (coefficient lists, low degree first)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

UPoly = List[Fraction]


def trim(p: Sequence) -> UPoly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p: Sequence) -> int:
    return len(trim(p)) - 1


def derivative(p: Sequence) -> UPoly:
    return trim([k * c for k, c in enumerate(p)][1:])


def mul(a: Sequence, b: Sequence) -> UPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_(a: Sequence, b: Sequence) -> Tuple[UPoly, UPoly]:
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = a[:]
    lb = b[-1]
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / lb
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] -= c * y
        r = trim(r)
    return trim(q), r


def monic(p: Sequence) -> UPoly:
    p = trim(p)
    if not p:
        return p
    lc = p[-1]
    return [c / lc for c in p]


def gcd(a: Sequence, b: Sequence) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def squarefree_decomposition(p: Sequence) -> List[Tuple[UPoly, int]]:
    """Yun's algorithm: returns [(s_k, k)] with p = c * prod s_k^k."""
    p = monic(p)
    if len(p) <= 1:
        return []
    out = []
    a = gcd(p, derivative(p))
    b = divmod_(p, a)[0]
    c = divmod_(derivative(p), a)[0]
    d = trim([x - y for x, y in _pad(c, derivative(b))])
    k = 1
    while len(b) > 1:
        a = gcd(b, d)
        if len(a) > 1:
            out.append((a, k))
        b = divmod_(b, a)[0]
        c = divmod_(d, a)[0]
        d = trim([x - y for x, y in _pad(c, derivative(b))])
        k += 1
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [Fraction(0)] * (n - len(a)), list(b) + [Fraction(0)] * (n - len(b)))


def max_root_multiplicity(p: Sequence) -> int:
    """Largest multiplicity of a complex root (0 for constants)."""
    parts = squarefree_decomposition(p)
    return max((k for _, k in parts), default=0)


def factor_rational(p: Sequence) -> List[Tuple[UPoly, int]]:
    """Irreducible factorization over Q as monic factors with multiplicities."""
    import sympy

    p = trim(p)
    if len(p) <= 1:
        return []
    t = sympy.Symbol("t")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p)], t, domain="QQ")
    _, facs = sp.factor_list()
    out = []
    for fac, k in facs:
        coeffs = [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in reversed(fac.all_coeffs())]
        out.append((monic(coeffs), k))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def rational_roots(p: Sequence) -> List[Tuple[Fraction, int]]:
    roots = []
    for fac, k in factor_rational(p):
        if len(fac) == 2:
            roots.append((-fac[0], k))
    return sorted(roots)


def taylor_shift(p: Sequence, c: Fraction) -> UPoly:
    """Coefficients of p(t + c)."""
    out: UPoly = []
    for coeff in reversed(trim(p)):
        # Horner: out = out*(t + c) + coeff
        new = [Fraction(0)] * (len(out) + 1)
        for i, x in enumerate(out):
            new[i + 1] += x
            new[i] += x * c
        new[0] += coeff
        out = new
    return trim(out)
