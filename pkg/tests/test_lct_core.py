import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lctkit.lct_core import (
    EXACT,
    UPPER,
    LctCertificate,
    LctError,
    isolated_at_origin,
    isolated_singularity_check,
    lct_binomial,
    lct_bounds,
    lct_curve_resolution,
    lct_germ,
    lct_plane_curve,
    lct_quasihomog,
    lct_sum_split_vars,
)
from lctkit.newton import leading_term, weighted_mult
from lctkit.poly import Poly, linear_change, parse_poly

XY = ("x", "y")
YZ = ("y", "z")
XYZ = ("x", "y", "z")

CURVES = ["x^2+y^3", "x^3+x*y^5", "x^4*y+y^6", "x^3*y^2+x*y^5", "x^3+y^4", "x^2*y+y^4",
          "x^3*y^2+y^6", "x^5+y^5", "x^2+y^2", "x^4+x^2*y^3+y^7"]


def P(text, ring=XY):
    return parse_poly(text, ring)


def test_lct_bounds_examples():
    assert lct_bounds(P("x^2+y^2+z^3", XYZ)) == (Fraction(1, 2), Fraction(1))
    assert lct_bounds(P("x^4+y^5")) == (Fraction(1, 4), Fraction(1, 2))
    assert lct_bounds(P("x+y^2")) == (1, 1)


@pytest.mark.parametrize("args,value", [
    ((3, 0, 1, 5), Fraction(7, 15)),
    ((3, 0, 0, 3), Fraction(2, 3)),
    ((2, 2, 2, 4), Fraction(1, 2)),
])
def test_binomial_examples(args, value):
    assert lct_binomial(*args) == value


def test_binomial_rejects_proportional():
    with pytest.raises(LctError):
        lct_binomial(1, 2, 2, 4)


@pytest.mark.parametrize("text,ring,value", [
    ("x^2+y^3", XY, Fraction(5, 6)),
    ("y^3+y^2*z^3", YZ, Fraction(4, 9)),
    ("y^2*z+y*z^2", YZ, Fraction(2, 3)),
    ("x^2*y^2+x^2*y^4", XY, Fraction(1, 2)),
])
def test_resolution_examples(text, ring, value):
    c = lct_curve_resolution(P(text, ring))
    assert c.value == value and c.mode == EXACT


def test_sum_split_examples():
    assert lct_sum_split_vars(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert lct_sum_split_vars(Fraction(1, 2), Fraction(4, 9)) == Fraction(17, 18)
    assert lct_sum_split_vars(1, 1) == 1


def test_quasihomog_examples():
    c = lct_quasihomog(P("x^3+y^3+z^4", XYZ), (4, 4, 3))
    assert c.value == Fraction(11, 12) and c.exact
    c = lct_quasihomog(P("x^2*y+y^2*z+z^4", XYZ), (5, 6, 4))
    assert c.value == Fraction(15, 16) and c.exact
    c = lct_quasihomog(P("x^2*y", XYZ), (1, 1, 1))
    assert c.value == Fraction(1, 2) and "cylinder over x,y" in c.trace


def test_quasihomog_uncertified_is_upper_bound():
    # singular along the x- and y-axes, no trusted flag
    f = P("x^2*y^2+x*y*z^2+z^4", XYZ)
    c = lct_quasihomog(f, (1, 1, 1))
    assert c.value == Fraction(3, 4) and c.mode == UPPER and "non-isolated" in c.flags


def test_quasihomog_requires_homogeneity():
    with pytest.raises(LctError):
        lct_quasihomog(P("x^2+y^3"), (1, 1))


def test_isolated_checks():
    assert isolated_singularity_check(P("x^2+y^3+z^4", XYZ))
    assert not isolated_singularity_check(P("x^2*y", XYZ))
    assert isolated_singularity_check(P("x^3+y^3+z^3*x", XYZ))
    assert isolated_at_origin(P("x^2+y^3+z^7+x*y*z^3", XYZ))
    assert not isolated_at_origin(P("x^2+y^2*z", XYZ))


@pytest.mark.parametrize("text,ring,value", [
    ("y^3*z+y*z^4", YZ, Fraction(5, 11)),
    ("x^3*y^2+y^6", XY, Fraction(7, 18)),
    ("y^6+z^6", YZ, Fraction(1, 3)),
    ("x^3+x*y^5", XY, Fraction(7, 15)),
])
def test_plane_curve_examples(text, ring, value):
    c = lct_plane_curve(P(text, ring))
    assert c.value == value and c.exact


def test_certificate_invariants():
    with pytest.raises(LctError):
        LctCertificate(Fraction(0), EXACT, tag="x")
    with pytest.raises(LctError):
        LctCertificate(Fraction(3, 2), EXACT, tag="x")
    with pytest.raises(LctError):
        LctCertificate(Fraction(1, 2), EXACT)


def test_germ_monomial_and_cylinder():
    c = lct_germ(P("x^2*y", XYZ))
    assert c.value == Fraction(1, 2) and c.exact


def test_binomial_oracle_small():
    for m1 in range(0, 5):
        for n1 in range(0, 5):
            for m2 in range(0, 5):
                for n2 in range(0, 5):
                    if m1 * n2 == m2 * n1 or not (m1 + n1) or not (m2 + n2):
                        continue
                    f = Poly(XY, {(m1, n1): 1, (m2, n2): 1})
                    assert lct_binomial(m1, n1, m2, n2) == lct_curve_resolution(f).value, (m1, n1, m2, n2)


@pytest.mark.parametrize("text", CURVES)
def test_sandwich_on_curves(text):
    f = P(text)
    lo, hi = lct_bounds(f)
    assert lo <= lct_plane_curve(f).value <= hi


@pytest.mark.parametrize("text", CURVES)
def test_weight_soundness(text, rng):
    f = P(text)
    v = lct_plane_curve(f).value
    for _ in range(30):
        w = (rng.randint(1, 15), rng.randint(1, 15))
        assert v <= Fraction(sum(w)) / weighted_mult(f, w)


@pytest.mark.parametrize("text", CURVES)
def test_semicontinuity_to_leading_term(text, rng):
    f = P(text)
    base = lct_curve_resolution(f).value
    for _ in range(5):
        w = (rng.randint(1, 9), rng.randint(1, 9))
        fw = leading_term(f, w)
        if len(fw) >= 1:
            assert lct_curve_resolution(fw).value <= base


def random_matrix(rng):
    while True:
        M = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(2)] for _ in range(2)]
        if M[0][0] * M[1][1] - M[0][1] * M[1][0]:
            return M


@pytest.mark.parametrize("text", CURVES)
def test_coordinate_invariance(text, rng):
    f = P(text)
    v = lct_plane_curve(f).value
    for _ in range(20):
        assert lct_plane_curve(linear_change(f, random_matrix(rng))).value == v


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CURVES), st.fractions(min_value=-7, max_value=7, max_denominator=5).filter(bool))
def test_scaling_invariance(text, lam):
    f = P(text)
    assert lct_plane_curve(f * lam).value == lct_plane_curve(f).value
