"""Newton polyhedra, weighted multiplicities and weighted leading terms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from .exactlp import maximize
from .poly import Exponent, Poly, PolyError, ZeroPolynomialError

__all__ = [
    "Weight",
    "NewtonData",
    "WeightBound",
    "newton_data",
    "weighted_mult",
    "leading_term",
    "is_weighted_homogeneous",
    "diagonal_weight",
    "optimal_weight_nd",
]


@dataclass(frozen=True)
class Weight:
    """Positive weight vector, stored as the primitive integer representative."""

    entries: Tuple[Fraction, ...]

    def __init__(self, entries: Sequence):
        vals = [Fraction(v) for v in entries]
        if not vals or any(v <= 0 for v in vals):
            raise ValueError(f"weights must be strictly positive: {entries}")
        den = lcm(*(v.denominator for v in vals))
        ints = [int(v * den) for v in vals]
        g = gcd(*ints)
        object.__setattr__(self, "entries", tuple(Fraction(k // g) for k in ints))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def as_ints(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.as_ints()) + ")"


def _dot(w: Sequence, e: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(w, e)), Fraction(0))


def weighted_mult(f: Poly, w: Sequence) -> Fraction:
    if f.is_zero():
        raise ZeroPolynomialError("weighted multiplicity of the zero polynomial")
    return min(_dot(w, e) for e in f.terms)


def leading_term(f: Poly, w: Sequence) -> Poly:
    m = weighted_mult(f, w)
    return Poly(f.ring, {e: c for e, c in f.terms.items() if _dot(w, e) == m})


def is_weighted_homogeneous(f: Poly, w: Sequence) -> bool:
    return len({_dot(w, e) for e in f.terms}) <= 1


@dataclass(frozen=True)
class NewtonData:
    support: Tuple[Exponent, ...]
    lower_vertices: Tuple[Exponent, ...]
    # each face: (primitive inner normal, weighted degree, exponents on the face)
    faces: Tuple[Tuple[Tuple[int, ...], int, Tuple[Exponent, ...]], ...] = field(default=())

    def edges(self) -> List[Tuple[Exponent, Exponent]]:
        """Bounded edges in two variables, ordered from the top-left vertex."""
        return list(zip(self.lower_vertices, self.lower_vertices[1:]))

    def to_json(self) -> dict:
        return {
            "support": [list(e) for e in self.support],
            "vertices": [list(e) for e in self.lower_vertices],
            "faces": [{"normal": list(n), "degree": d, "points": [list(p) for p in pts]}
                      for n, d, pts in self.faces],
        }


def _staircase(points) -> List[Exponent]:
    """Non-dominated points: those with no other point componentwise below."""
    pts = sorted(set(points))
    return [p for p in pts if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts)]


def _lower_chain_2d(points) -> List[Exponent]:
    pts = sorted(_staircase(points))  # i ascending, j descending
    chain: List[Exponent] = []
    for p in pts:
        while len(chain) >= 2:
            (i1, j1), (i2, j2) = chain[-2], chain[-1]
            # drop chain[-1] if it lies on or above the segment chain[-2] -> p
            cross = (i2 - i1) * (p[1] - j1) - (j2 - j1) * (p[0] - i1)
            if cross <= 0:
                chain.pop()
            else:
                break
        chain.append(p)
    return chain


def _is_vertex(p: Exponent, others: Sequence[Exponent]) -> bool:
    n = len(p)
    if any(all(a <= b for a, b in zip(q, p)) for q in others):
        return False
    # maximize eps s.t. <w, q - p> >= eps for all q, sum w <= 1, w >= 0
    c = [0] * n + [1]
    A = [[-(q[i] - p[i]) for i in range(n)] + [1] for q in others]
    b = [0] * len(others)
    A.append([1] * n + [0])
    b.append(1)
    res = maximize(c, A, b)
    return res.status == "unbounded" or (res.value is not None and res.value > 0)


def _hyperplane(points: Sequence[Exponent]) -> Optional[Tuple[int, ...]]:
    """Integer normal to the affine hull of n points in n-space (None if degenerate)."""
    n = len(points[0])
    base = points[0]
    rows = [[Fraction(q[i] - base[i]) for i in range(n)] for q in points[1:]]
    # null space of rows (size (n-1) x n); expect dimension one
    A = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((k for k in range(r, len(A)) if A[k][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        A[r] = [v / piv for v in A[r]]
        for k in range(len(A)):
            if k != r and A[k][c]:
                t = A[k][c]
                A[k] = [a - t * b for a, b in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    v = [Fraction(0)] * n
    v[fc] = Fraction(1)
    for k, c in enumerate(pivots):
        v[c] = -A[k][fc]
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = gcd(*ints)
    return tuple(k // g for k in ints)


def newton_data(f: Poly) -> NewtonData:
    if f.is_zero():
        raise ZeroPolynomialError("Newton polyhedron of the zero polynomial")
    support = tuple(f.support())
    n = f.nvars
    if n == 2:
        chain = _lower_chain_2d(support)
        faces = []
        for (i1, j1), (i2, j2) in zip(chain, chain[1:]):
            a, b = j1 - j2, i2 - i1
            g = gcd(a, b)
            a, b = a // g, b // g
            deg = a * i1 + b * j1
            pts = tuple(sorted(e for e in support if a * e[0] + b * e[1] == deg))
            faces.append(((a, b), deg, pts))
        return NewtonData(support, tuple(chain), tuple(faces))
    stair = _staircase(support)
    verts = [p for p in stair if _is_vertex(p, [q for q in stair if q != p])]
    verts.sort(key=lambda e: (sum(e), e))
    faces = {}
    if n >= 1 and len(verts) >= n:
        for combo in itertools.combinations(verts, n):
            normal = _hyperplane(combo) if n > 1 else (1,)
            if normal is None:
                continue
            if all(k < 0 for k in normal):
                normal = tuple(-k for k in normal)
            if not all(k > 0 for k in normal) or normal in faces:
                continue
            deg = sum(a * b for a, b in zip(normal, combo[0]))
            if all(sum(a * b for a, b in zip(normal, e)) >= deg for e in stair):
                pts = tuple(sorted(e for e in support if sum(a * b for a, b in zip(normal, e)) == deg))
                faces[normal] = (normal, deg, pts)
    return NewtonData(support, tuple(verts), tuple(sorted(faces.values())))


@dataclass(frozen=True)
class WeightBound:
    """Result of a weight optimization: ``bound = inf sum(w)/w(f)``.

    ``weight`` is None when the infimum is only approached (the diagonal meets
    an unbounded face); ``flag`` then says why.
    """

    weight: Optional[Weight]
    bound: Fraction
    flag: Optional[str] = None

    def __iter__(self):
        return iter((self.weight, self.bound))


def diagonal_weight(f: Poly) -> WeightBound:
    """Weight normal to the Newton-polygon edge met by the diagonal."""
    if f.nvars != 2:
        raise PolyError("diagonal_weight needs exactly two variables")
    if f.is_zero():
        raise ZeroPolynomialError("diagonal weight of the zero polynomial")
    if f.constant_term() != 0:
        raise PolyError("polynomial does not vanish at the origin")
    chain = _lower_chain_2d(f.support())
    if len(chain) == 1:
        (i, j), = chain
        t = max(i, j)
        return WeightBound(None, Fraction(1, t), "monomial")
    h = [i - j for i, j in chain]
    if h[-1] < 0:
        return WeightBound(None, Fraction(1, chain[-1][1]), "unbounded")
    if h[0] > 0:
        return WeightBound(None, Fraction(1, chain[0][0]), "unbounded")
    k = next(idx for idx, v in enumerate(h) if v >= 0)
    if h[k] == 0:
        # vertex on the diagonal: prefer the steeper (left) edge
        if k == 0:
            a, b = chain[0], chain[1]
        else:
            a, b = chain[k - 1], chain[k]
    else:
        a, b = chain[k - 1], chain[k]
    wx, wy = a[1] - b[1], b[0] - a[0]
    g = gcd(wx, wy)
    w = Weight((wx // g, wy // g))
    deg = weighted_mult(f, w)
    bound = w.total() / deg
    if h[k] == 0:
        i, _ = chain[k]
        assert bound == Fraction(1, i)
    return WeightBound(w, bound)


def optimal_weight_nd(f: Poly) -> WeightBound:
    """Infimum of ``sum(w)/w(f)`` over positive weights, with a minimizer."""
    if f.is_zero():
        raise ZeroPolynomialError("optimal weight of the zero polynomial")
    if f.constant_term() != 0:
        raise PolyError("polynomial does not vanish at the origin")
    n = f.nvars
    pts = _staircase(f.support())
    # max s  s.t.  s <= <w,a>, sum w = 1, w >= 0
    c = [0] * n + [1]
    A = [[-a[i] for i in range(n)] + [1] for a in pts]
    b = [0] * len(pts)
    res = maximize(c, A, b, [[1] * n + [0]], [1])
    s = res.value
    bound = 1 / s
    # among optimal weights look for a strictly positive one, as balanced as possible
    c2 = [0] * n + [1]
    A2 = [[-a[i] for i in range(n)] + [0] for a in pts]
    b2 = [-s] * len(pts)
    A2 += [[(-1 if k == i else 0) for k in range(n)] + [1] for i in range(n)]
    b2 += [0] * n
    res2 = maximize(c2, A2, b2, [[1] * n + [0]], [1])
    if res2.status == "optimal" and res2.value > 0:
        w = Weight(res2.x[:n])
        if n == 2:
            dw = diagonal_weight(f)
            if dw.weight is not None:
                w = dw.weight
        return WeightBound(w, bound, "monomial" if len(pts) == 1 else None)
    return WeightBound(None, bound, "non-isolated on polytope data")
