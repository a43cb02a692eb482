import random
from fractions import Fraction

import pytest

from lctkit.classify import (
    LABELS,
    CaseTrace,
    NonNormalError,
    NotSquarefreeError,
    ReducedGerm,
    _is_squarefree,
    case_labels,
    classify_quartic_germ,
    classify_quartic_point,
    classify_quintic_double_point,
    classify_sextic_curve,
    global_lct_surface,
    load_corpus,
    normalize_tangent_cone,
    reduce_double_point,
    singular_points,
)
from lctkit.lct_core import lct_curve_resolution, lct_plane_curve, lct_sum_split_vars
from lctkit.poly import Poly, PolyError, homogeneous_part, parse_poly

from oracles import psi_identities_hold
from values import QUARTIC_VALUE_SET

XY = ("x", "y")
XYZ = ("x", "y", "z")
YZ = ("y", "z")
XYZW = ("x", "y", "z", "w")
ORIGIN4 = (0, 0, 0, 1)


def P(text, ring=XYZ):
    return parse_poly(text, ring)


# ------------------------------------------------------------ tangent cones

def test_two_planes_short_circuit():
    g, tr = normalize_tangent_cone(P("x*y+z^3"), 2)
    assert tr.lc_cone


def test_rank_one_quadric_becomes_square():
    g, tr = normalize_tangent_cone(P("x^2+2*x*y+y^2+z^3"), 2)
    assert homogeneous_part(g, 2) == P("x^2") and not tr.lc_cone


def test_smooth_cubic_cone_short_circuit():
    g, tr = normalize_tangent_cone(P("x^3+y^3+z^3+x^4"), 3)
    assert tr.lc_cone


def test_case_trace_labels_documented():
    with pytest.raises(ValueError):
        CaseTrace(())
    with pytest.raises(ValueError):
        CaseTrace(("Z.9",))
    assert CaseTrace(("A",)).labels == ("A",)


# --------------------------------------------------------------- reduction

def test_reduce_already_reduced():
    r = reduce_double_point(P("x^2+y^3+z^4"))
    assert r.g == parse_poly("y^3+z^4", YZ)
    assert r.psi[3] == parse_poly("y^3", YZ) and r.psi[5].is_zero()


def test_reduce_rejects_bad_input():
    with pytest.raises(PolyError):
        reduce_double_point(P("x*y+z^3"))
    with pytest.raises(PolyError):
        reduce_double_point(P("x^2+y^3"), N=8)


def random_double_point(rng):
    terms = {(2, 0, 0): Fraction(1)}
    for d in (3, 4):
        for i in range(d + 1):
            for j in range(d + 1 - i):
                if rng.random() < 0.5:
                    terms[(i, j, d - i - j)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Poly(XYZ, terms)


def x_part(f, k, d):
    """Coefficient of x^k in the degree-d part of f, as a form in (y, z)."""
    return Poly(YZ, {e[1:]: c for e, c in f.terms.items() if e[0] == k and sum(e) == d})


def test_psi_formulas_on_random_germs(rng):
    for _ in range(25):
        f = random_double_point(rng)
        r = reduce_double_point(f)
        g1, g2, h3, h4 = x_part(f, 2, 3), x_part(f, 1, 3), x_part(f, 1, 4), x_part(f, 0, 4)
        assert r.psi[4] == h4 - g2 * g2 * Fraction(1, 4)
        assert r.psi[5] == g1 * g2 * g2 * Fraction(1, 4) - g2 * h3 * Fraction(1, 2)


def test_psi_symbolic_identities():
    assert psi_identities_hold() == (True, True)


def test_psi_stable_under_truncation(rng):
    for _ in range(15):
        f = random_double_point(rng)
        a, b = reduce_double_point(f, 9), reduce_double_point(f, 12)
        assert all(a.psi[m] == b.psi[m] for m in range(3, 9))


def test_reduced_germ_validates():
    g = P("y^3+z^4")
    with pytest.raises(ValueError):
        ReducedGerm(g, 9, {3: P("y^3")})


def test_reduction_soundness(rng):
    # independent route: truncation 12 and the resolution engine on g
    checked = 0
    for _ in range(12):
        f = random_double_point(rng)
        try:
            c = classify_quartic_germ(f)
        except NonNormalError:
            continue
        g = reduce_double_point(f, 12).g
        assert c.value == lct_sum_split_vars(Fraction(1, 2), lct_curve_resolution(g).value)
        checked += 1
    assert checked >= 6


# ------------------------------------------------------------ quartic points

@pytest.mark.parametrize("text,value,label,weight", [
    ("x^3*w+z^4+x*y^3", Fraction(29, 36), "B.5(a)", (12, 8, 9)),
    ("x^2*w^2+y^4+x*z^3+x^4", Fraction(11, 12), "A", None),
    ("x^2*z*w+y^3*w+x^4+y^4+z^4", Fraction(23, 24), "B.3(a)", (9, 8, 6)),
])
def test_quartic_point_examples(text, value, label, weight):
    c = classify_quartic_point(P(text, XYZW), ORIGIN4)
    assert c.value == value and c.exact
    assert label in case_labels(c)
    if weight:
        assert c.weight.as_ints() == weight


def test_quartic_non_isolated_raises():
    with pytest.raises(NonNormalError):
        classify_quartic_germ(P("x^2+y^2*z^2"))


def test_singular_points_fermat():
    loc = singular_points(P("x^4+y^4+z^4+w^4", XYZW))
    assert loc.points == () and loc.complete


def test_singular_points_row_11_12():
    loc = singular_points(P("x^2*w^2+y^4+x*z^3+x^4", XYZW))
    assert (0, 0, 0, 1) in [tuple(p) for p in loc.points]


def test_second_point_of_row_13_14():
    rows = {r.mu: r for r in load_corpus("quartic", XYZW)}
    F = rows[Fraction(13, 14)].poly
    pts = [tuple(p) for p in singular_points(F).points]
    assert (0, 0, 0, 1) in pts
    # the listed second point is smooth on the printed equation
    assert classify_quartic_point(F, (0, 0, 1, 0)).value == 1
    fixed = {r.mu: r for r in load_corpus("quartic_errata", XYZW)}[Fraction(13, 14)].poly
    fpts = [tuple(p) for p in singular_points(fixed).points]
    assert (0, 0, 0, 1) in fpts and (0, 0, 1, Fraction(1, 3)) in fpts


def test_global_examples():
    assert global_lct_surface(P("x^4+y^4+z^4+w^4", XYZW)).value == 1
    rows = {r.mu: r for r in load_corpus("quartic", XYZW)}
    assert global_lct_surface(rows[Fraction(9, 10)].poly).value == Fraction(9, 10)
    fixed = {r.mu: r for r in load_corpus("quartic_errata", XYZW)}
    assert global_lct_surface(fixed[Fraction(13, 14)].poly).value == Fraction(13, 14)


def test_closure_on_corpus():
    for name in ("quartic", "quartic_errata"):
        for row in load_corpus(name, XYZW):
            for pt in row.points:
                try:
                    v = classify_quartic_point(row.poly, pt).value
                except NonNormalError:
                    continue
                assert v in QUARTIC_VALUE_SET, (name, row.index, v)


def test_labels_are_documented():
    for row in load_corpus("quartic_errata", XYZW):
        c = classify_quartic_point(row.poly, row.points[0])
        assert case_labels(c) and all(l in LABELS for l in case_labels(c))


# ------------------------------------------------------------ sextic curves

@pytest.mark.parametrize("text,value,weight", [
    ("x^3+y^4+x*y^3", Fraction(7, 12), None),
    ("x^4*y+y^6", Fraction(3, 8), (5, 4)),
    ("x^4*y+x^3*y^2+x*y^5", Fraction(5, 13), (3, 2)),
])
def test_sextic_examples(text, value, weight):
    c = classify_sextic_curve(P(text, XY))
    assert c.value == value and c.exact
    if weight:
        assert c.weight.as_ints() == weight


def test_sextic_rejects_non_reduced():
    with pytest.raises(NotSquarefreeError):
        classify_sextic_curve(P("x^3*y^2+x*y^5", XY))


def random_curve(rng):
    terms = {}
    for _ in range(rng.randint(1, 6)):
        d = rng.randint(1, 6)
        i = rng.randint(0, d)
        terms[(i, d - i)] = Fraction(rng.randint(-3, 3))
    return Poly(XY, terms)


def test_sextic_totality_and_agreement():
    rng = random.Random(7)
    n = 0
    while n < 10000:
        f = random_curve(rng)
        if f.is_zero() or not _is_squarefree(f):
            continue
        n += 1
        c = classify_sextic_curve(f)
        assert c.trace
        if n <= 800:
            d = lct_plane_curve(f)
            if c.exact and d.exact:
                assert c.value == d.value, str(f)


# ------------------------------------------------------------ quintic points

def test_quintic_examples():
    c = classify_quintic_double_point(P("x^2+y^3+z^4+w^4", XYZW))
    assert c.value == 1 and "Q.(1)" in c.trace and "w=(12,8,6,6)" in c.trace
    c = classify_quintic_double_point(P("x^2+y^3+y*z^3+y*w^3", XYZW))
    assert c.value == 1 and "Q.(2)" in c.trace and "w=(9,6,4,4)" in c.trace
    with pytest.raises(NonNormalError, match="non-isolated"):
        classify_quintic_double_point(P("x^2+y^3", XYZW))
