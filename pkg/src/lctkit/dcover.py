"""Double covers of projective space: composing branch-section thresholds.

A double space ``V -> P^n`` branched along ``B = {F = 0}`` of degree ``2m``
pulls a hyperplane ``H`` back to a double cover of ``H`` branched along the
section ``C = B ∩ H``; its threshold is ``min(1, 1/2 + c(H, C))``.  All work
happens downstairs on the section curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .classify import (
    NotSquarefreeError,
    PartialResultError,
    _is_squarefree,
    choose_chart,
    classify_sextic_curve,
    format_point,
    singular_points,
)
from .lct_core import EXACT, LOWER, LctCertificate, LctError, lct_sum_split_vars
from .poly import Poly, PolyError, dehomogenize, format_fraction

__all__ = [
    "DoubleSpaceSpec",
    "GlobalNote",
    "restrict_to_hyperplane",
    "section_curve_lct",
    "double_cover_section_lct",
    "double_space_lower_bound",
    "ke_criterion",
    "first_equals_global_note",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DoubleSpaceSpec:
    """Double cover of ``P^n`` branched along a hypersurface of degree ``2m``."""

    n: int
    m: int
    branch: Poly

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"ambient dimension must be at least 2, got {self.n}")
        if self.m < 1:
            raise ValueError(f"half-degree must be at least 1, got {self.m}")
        if self.branch.nvars != self.n + 1:
            raise ValueError(f"branch must have {self.n + 1} variables, has {self.branch.nvars}")
        if self.branch.is_zero() or not self.branch.is_homogeneous():
            raise ValueError("branch must be a nonzero homogeneous polynomial")
        if self.branch.total_degree() != 2 * self.m:
            raise ValueError(f"branch degree {self.branch.total_degree()} != 2m = {2 * self.m}")


@dataclass(frozen=True)
class GlobalNote:
    """Metadata licensing section minima to be reported as global thresholds."""

    statement: str
    n: int
    m: int

    def to_json(self) -> dict:
        return {"statement": self.statement, "n": self.n, "m": self.m}


def first_equals_global_note(spec: DoubleSpaceSpec) -> GlobalNote:
    return GlobalNote(
        "smooth double space: the global threshold equals the first global threshold, "
        "so the minimum over hyperplane sections is the global value",
        spec.n, spec.m)


def double_space_lower_bound(n: int, m: int) -> Fraction:
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    return min(Fraction(1), Fraction(m + n - 1, 2 * m))


def ke_criterion(lct_value, n: int) -> bool:
    """Strict inequality ``lct > n/(n+1)``; a criterion check, nothing analytic."""
    v = Fraction(lct_value)
    if not 0 < v <= 1:
        raise ValueError(f"threshold must lie in (0, 1], got {v}")
    if n < 1:
        raise ValueError("n must be positive")
    return v > Fraction(n, n + 1)


def restrict_to_hyperplane(F: Poly, hyperplane: Poly) -> Poly:
    """Restriction of ``F`` to ``{L = 0}``, eliminating the last variable with nonzero coefficient."""
    if not hyperplane.is_homogeneous() or hyperplane.total_degree() != 1:
        raise PolyError("hyperplane must be a nonzero linear form")
    L = hyperplane.reembed(F.ring)
    coeffs = [L.coeff(tuple(int(i == j) for j in range(F.nvars))) for i in range(F.nvars)]
    k = max(i for i, c in enumerate(coeffs) if c != 0)
    rest = tuple(v for i, v in enumerate(F.ring) if i != k)
    image = Poly.zero(rest)
    for i, c in enumerate(coeffs):
        if i != k and c:
            image = image + Poly.var(rest, F.ring[i]) * (-c / coeffs[k])
    keep = {v: Poly.var(rest, v) for v in rest}
    return F.subs({F.ring[k]: image, **keep}, ring=rest)


def _point_value(C: Poly, P: Sequence[Fraction]) -> LctCertificate:
    i = choose_chart(P)
    f = dehomogenize(C, C.ring[i], P)
    return classify_sextic_curve(f).with_trace(input=f"{C} at {format_point(P)}")


def section_curve_lct(C: Poly, points: Optional[Iterable[Sequence]] = None) -> LctCertificate:
    """``min(1, 1/2 + c(P^2, C))`` for a reduced plane curve ``C`` of degree at most six."""
    if C.nvars != 3 or not C.is_homogeneous() or C.is_zero():
        raise PolyError("section must be a nonzero ternary form")
    if C.total_degree() > 6:
        raise PolyError("section degree exceeds six")
    if not _is_squarefree(C):
        raise NotSquarefreeError("non-reduced section")
    src = str(C)
    if points is None:
        locus = singular_points(C)
        if not locus.complete:
            raise PartialResultError("section has irrational or non-isolated singular points; supply points")
        pts = list(locus.points)
    else:
        pts = [tuple(Fraction(c) for c in p) for p in points]
    if not pts:
        return LctCertificate(Fraction(1), EXACT, tag="smooth section", trace=("no singular points",),
                              input=src)
    parts: List[Tuple[Tuple[Fraction, ...], LctCertificate]] = [(p, _point_value(C, p)) for p in pts]
    worst_p, worst = min(parts, key=lambda t: t[1].value)
    value = lct_sum_split_vars(HALF, worst.value)
    mode = EXACT if all(c.exact for _, c in parts) else LOWER
    detail = tuple(f"{format_point(p)}: {format_fraction(c.value)}" for p, c in parts)
    return LctCertificate(value, mode, worst.weight, worst.leading, "1/2 + section threshold",
                          worst.trace + detail, src)


def double_cover_section_lct(spec: DoubleSpaceSpec, hyperplane: Poly,
                             points: Optional[Iterable[Sequence]] = None) -> LctCertificate:
    """Threshold of the pull-back of ``hyperplane`` on the sextic double solid."""
    if spec.n != 3 or spec.m != 3:
        raise LctError("section composition is implemented for sextic double solids (n = m = 3)")
    C = restrict_to_hyperplane(spec.branch, hyperplane)
    if C.is_zero():
        raise NotSquarefreeError("hyperplane is contained in the branch surface")
    cert = section_curve_lct(C, points)
    flags = ("global = first global",)
    if cert.value == double_space_lower_bound(spec.n, spec.m):
        flags += ("bound attained: section is a cone",)
    return cert.with_trace(flags=flags, input=f"{spec.branch} on {hyperplane} = 0")
