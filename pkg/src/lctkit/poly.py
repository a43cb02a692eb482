"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients, tagged with an ordered variable
list.  Everything here is exact; there is no floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Coeff = Union[int, Fraction]

__all__ = [
    "Exponent",
    "Poly",
    "PolyError",
    "PolySyntaxError",
    "ZeroPolynomialError",
    "parse_poly",
    "infer_ring",
    "mult_at_origin",
    "homogeneous_part",
    "dehomogenize",
    "substitute_truncated",
    "linear_change",
    "format_fraction",
    "parse_fraction",
]


class PolyError(ValueError):
    """Base error for polynomial operations."""


class PolySyntaxError(PolyError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ZeroPolynomialError(PolyError):
    """Raised where an operation is undefined on the zero polynomial."""


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PolyError(f"not a rational number: {text!r}") from exc


class Poly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Sequence[str], terms: Mapping[Exponent, Coeff] | None = None):
        ring = tuple(ring)
        if len(set(ring)) != len(ring):
            raise PolyError(f"repeated variable in ring {ring}")
        clean: Dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != len(ring) or any(k < 0 for k in e):
                raise PolyError(f"bad exponent {e} for ring {ring}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def _raw(cls, ring: Tuple[str, ...], terms: Dict[Exponent, Fraction]) -> "Poly":
        p = object.__new__(cls)
        object.__setattr__(p, "ring", ring)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    @classmethod
    def zero(cls, ring: Sequence[str]) -> "Poly":
        return cls._raw(tuple(ring), {})

    @classmethod
    def const(cls, ring: Sequence[str], c: Coeff) -> "Poly":
        ring = tuple(ring)
        c = Fraction(c)
        return cls._raw(ring, {(0,) * len(ring): c} if c else {})

    @classmethod
    def var(cls, ring: Sequence[str], name: str) -> "Poly":
        ring = tuple(ring)
        if name not in ring:
            raise PolyError(f"unknown variable {name!r}")
        e = tuple(1 if v == name else 0 for v in ring)
        return cls._raw(ring, {e: Fraction(1)})

    @classmethod
    def monomial(cls, ring: Sequence[str], exp: Sequence[int], c: Coeff = 1) -> "Poly":
        return cls(ring, {tuple(exp): c})

    # basic protocol
    @property
    def nvars(self) -> int:
        return len(self.ring)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self.items())

    def items(self) -> list:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * self.nvars: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring, frozenset(self.terms.items()))))
        return self._hash

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise PolyError(f"ring mismatch {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.ring, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Poly.zero(self.ring)
            return Poly._raw(self.ring, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)) and other:
            return self * (1 / Fraction(other))
        raise TypeError("Poly division only by nonzero rationals")

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise PolyError("negative power")
        result = Poly.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, ring={self.ring})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.ring, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = format_fraction(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_fraction(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # invariants
    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("degree of the zero polynomial")
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("multiplicity of the zero polynomial")
        return min(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        i = self.index(var)
        return max((e[i] for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def index(self, var: str) -> int:
        try:
            return self.ring.index(var)
        except ValueError:
            raise PolyError(f"unknown variable {var!r}") from None

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff((0,) * self.nvars)

    def support(self) -> list:
        return sorted(self.terms, key=_grlex_key, reverse=True)

    def used_vars(self) -> Tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.ring) if any(e[i] for e in self.terms))

    # transformations
    def derivative(self, var: str) -> "Poly":
        i = self.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ee = list(e)
                ee[i] -= 1
                out[tuple(ee)] = c * e[i]
        return Poly._raw(self.ring, out)

    def gradient(self) -> list:
        return [self.derivative(v) for v in self.ring]

    def evaluate(self, values: Sequence[Coeff]):
        """Evaluate at a point; values may be any ring elements supporting + and *."""
        if len(values) != self.nvars:
            raise PolyError("wrong number of values")
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def subs(self, mapping: Mapping[str, "Poly"], ring: Sequence[str] | None = None,
             truncate: int | None = None) -> "Poly":
        """Simultaneous substitution of variables by polynomials.

        Unmapped variables map to themselves if present in the target ring.
        Terms of total degree >= ``truncate`` are discarded when given.
        """
        target = tuple(ring) if ring is not None else self.ring
        images = []
        for v in self.ring:
            if v in mapping:
                img = mapping[v]
                if img.ring != target:
                    img = img.reembed(target)
            else:
                img = Poly.var(target, v)
            images.append(img)
        cache: list = [dict() for _ in self.ring]
        total: Dict[Exponent, Fraction] = {}

        def power(i: int, k: int) -> Poly:
            d = cache[i]
            if k not in d:
                if k == 0:
                    d[k] = Poly.const(target, 1)
                else:
                    d[k] = _trunc(power(i, k - 1) * images[i], truncate)
            return d[k]

        for e, c in self.terms.items():
            t = Poly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    t = _trunc(t * power(i, k), truncate)
            for ee, cc in t.terms.items():
                v = total.get(ee, 0) + cc
                if v:
                    total[ee] = v
                else:
                    total.pop(ee, None)
        return Poly._raw(target, total)

    def reembed(self, ring: Sequence[str]) -> "Poly":
        """Re-express in another ring containing all used variables."""
        ring = tuple(ring)
        pos = []
        for i, v in enumerate(self.ring):
            if v in ring:
                pos.append(ring.index(v))
            else:
                pos.append(None)
        out = {}
        for e, c in self.terms.items():
            ee = [0] * len(ring)
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise PolyError(f"variable {self.ring[i]!r} not in ring {ring}")
                    ee[pos[i]] = k
            out[tuple(ee)] = c
        return Poly._raw(ring, out)

    def truncate(self, n: int) -> "Poly":
        return _trunc(self, n)

    def scale_to_monic(self) -> "Poly":
        """Divide by the leading (grlex) coefficient."""
        if not self.terms:
            return self
        return self / self.items()[0][1]

    def map_coeffs(self, fn) -> "Poly":
        return Poly(self.ring, {e: fn(c) for e, c in self.terms.items()})

    # sympy bridge
    def to_sympy(self):
        import sympy

        if not self.ring:
            c = self.constant_term()
            return sympy.Rational(c.numerator, c.denominator)
        gens = sympy.symbols(self.ring)
        return sympy.Poly.from_dict(
            {e: sympy.Rational(c.numerator, c.denominator) for e, c in self.terms.items()}
            or {(0,) * self.nvars: 0},
            gens,
            domain="QQ",
        )

    @classmethod
    def from_sympy(cls, p, ring: Sequence[str]) -> "Poly":
        import sympy

        ring = tuple(ring)
        if not isinstance(p, sympy.Poly):
            p = sympy.Poly(p, *sympy.symbols(ring), domain="QQ")
        names = tuple(str(g) for g in p.gens)
        terms = {}
        for e, c in p.terms():
            c = sympy.Rational(c)
            terms[e] = Fraction(int(c.p), int(c.q))
        return cls(names, terms).reembed(ring)


def _grlex_key(e: Exponent):
    return (sum(e), e)


def _trunc(p: Poly, n: int | None) -> Poly:
    if n is None:
        return p
    return Poly._raw(p.ring, {e: c for e, c in p.terms.items() if sum(e) < n})


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("var", m.group(2), start))
        elif m.group(3):
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def infer_ring(text: str) -> Tuple[str, ...]:
    """Variables of ``text`` in order of first appearance."""
    seen: list = []
    for kind, val, _ in _tokens(text):
        if kind == "var" and val not in seen:
            seen.append(val)
    return tuple(seen)


def parse_poly(text: str, ring: Sequence[str] | None = None) -> Poly:
    """Parse ``text`` in the documented grammar into a canonical Poly.

    ``term := [sign] coeff? factor ('*' factor)*``, ``factor := var ('^' uint)?``,
    ``coeff := int | int '/' uint``.  Multiplication must be explicit.
    """
    ring = tuple(ring) if ring is not None else infer_ring(text)
    toks = _tokens(text)
    i = 0
    nv = len(ring)
    terms: Dict[Exponent, Fraction] = {}

    def peek():
        return toks[i]

    def expect_int():
        nonlocal i
        kind, val, pos = toks[i]
        if kind != "int":
            raise PolySyntaxError("expected an integer", pos)
        i += 1
        return val

    first = True
    if peek()[0] == "end":
        raise PolySyntaxError("empty input", 0)
    while True:
        kind, val, pos = peek()
        sign = 1
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise PolySyntaxError(f"expected '+' or '-', got {val!r}", pos)
        first = False
        coeff = Fraction(sign)
        exp = [0] * nv
        kind, val, pos = peek()
        have_factor = False
        if kind == "int":
            num = expect_int()
            if peek()[0] == "op" and peek()[1] == "/":
                i += 1
                den = expect_int()
                if den == 0:
                    raise PolySyntaxError("zero denominator", toks[i - 1][2])
                coeff *= Fraction(num, den)
            else:
                coeff *= num
            if peek()[0] == "op" and peek()[1] == "*":
                i += 1
                if peek()[0] != "var":
                    raise PolySyntaxError("expected a variable after '*'", peek()[2])
            elif peek()[0] == "var":
                raise PolySyntaxError("missing '*' between coefficient and variable", peek()[2])
        while peek()[0] == "var":
            _, name, vpos = peek()
            if name not in ring:
                raise PolySyntaxError(f"unknown variable {name!r}", vpos)
            i += 1
            k = 1
            if peek()[0] == "op" and peek()[1] == "^":
                i += 1
                k = expect_int()
            exp[ring.index(name)] += k
            have_factor = True
            if peek()[0] == "op" and peek()[1] == "*":
                i += 1
                if peek()[0] != "var":
                    raise PolySyntaxError("expected a variable after '*'", peek()[2])
            elif peek()[0] == "var":
                raise PolySyntaxError("missing '*' between factors", peek()[2])
        if not have_factor and kind != "int":
            raise PolySyntaxError("unexpected end of input" if val is None else f"unexpected token {val!r}", pos)
        e = tuple(exp)
        v = terms.get(e, 0) + coeff
        if v:
            terms[e] = v
        else:
            terms.pop(e, None)
        if peek()[0] == "end":
            break
    return Poly._raw(ring, terms)


# --------------------------------------------------------- basic invariants

def mult_at_origin(f: Poly) -> int:
    """Multiplicity at the origin: the smallest total degree of a term."""
    return f.min_degree()


def homogeneous_part(f: Poly, d: int) -> Poly:
    if d < 0:
        raise PolyError("degree must be nonnegative")
    return Poly._raw(f.ring, {e: c for e, c in f.terms.items() if sum(e) == d})


def homogeneous_parts(f: Poly) -> Dict[int, Poly]:
    out: Dict[int, Dict[Exponent, Fraction]] = {}
    for e, c in f.terms.items():
        out.setdefault(sum(e), {})[e] = c
    return {d: Poly._raw(f.ring, t) for d, t in sorted(out.items())}


def dehomogenize(F: Poly, var: str, point: Sequence[Coeff]) -> Poly:
    """Affine chart ``var = 1`` with ``point`` moved to the origin.

    ``point`` is a projective point (one entry per ring variable); it is
    rescaled so its ``var`` coordinate is 1.  The result lives in the ring
    with ``var`` removed.
    """
    if not F.is_homogeneous():
        raise PolyError("polynomial is not homogeneous")
    i = F.index(var)
    pt = [Fraction(c) for c in point]
    if len(pt) != F.nvars:
        raise PolyError("point has wrong number of coordinates")
    if pt[i] == 0:
        raise PolyError(f"coordinate {var} of the point is zero")
    pt = [c / pt[i] for c in pt]
    ring = tuple(v for v in F.ring if v != var)
    mapping = {var: Poly.const(ring, 1)}
    for v, c in zip(F.ring, pt):
        if v != var:
            mapping[v] = Poly.var(ring, v) + c
    f = F.subs(mapping, ring=ring)
    if f.constant_term() != 0:
        raise PolyError("point not on hypersurface")
    return f


def substitute_truncated(f: Poly, var: str, replacement: Poly, N: int) -> Poly:
    """Replace ``var`` by ``replacement`` and drop terms of total degree >= N."""
    if N < 1:
        raise PolyError("truncation order must be >= 1")
    f.index(var)
    return f.subs({var: replacement}, truncate=N)


def linear_change(f: Poly, M: Sequence[Sequence[Coeff]]) -> Poly:
    """Substitute ``x_i -> sum_j M[i][j] x_j``."""
    n = f.nvars
    M = [[Fraction(c) for c in row] for row in M]
    if len(M) != n or any(len(r) != n for r in M):
        raise PolyError("matrix size does not match the ring")
    if _det(M) == 0:
        raise PolyError("singular matrix")
    mapping = {}
    for i, v in enumerate(f.ring):
        mapping[v] = Poly(f.ring, {tuple(1 if k == j else 0 for k in range(n)): M[i][j] for j in range(n)})
    return f.subs(mapping)


def _det(M) -> Fraction:
    A = [list(r) for r in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            t = A[r][c] / A[c][c]
            if t:
                for k in range(c, n):
                    A[r][k] -= t * A[c][k]
    return det


def invert_matrix(M: Sequence[Sequence[Coeff]]) -> list:
    n = len(M)
    A = [[Fraction(c) for c in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise PolyError("singular matrix")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                t = A[r][c]
                A[r] = [x - t * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def poly_from_terms(ring: Sequence[str], items: Iterable[Tuple[Sequence[int], Coeff]]) -> Poly:
    out: Dict[Exponent, Fraction] = {}
    for e, c in items:
        e = tuple(e)
        out[e] = out.get(e, 0) + Fraction(c)
    return Poly(ring, out)
