from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lctkit.classify import load_corpus
from lctkit.poly import (
    Poly,
    PolyError,
    PolySyntaxError,
    ZeroPolynomialError,
    dehomogenize,
    homogeneous_part,
    infer_ring,
    linear_change,
    mult_at_origin,
    parse_poly,
    substitute_truncated,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")
XYZW = ("x", "y", "z", "w")


def P(text, ring=XY):
    return parse_poly(text, ring)


def test_parse_basic_terms():
    assert P("x^2 + y^3").terms == {(2, 0): 1, (0, 3): 1}


def test_parse_table_row_has_six_terms():
    f = P("x^2*w^2+y^2*z^2+2*x*y*z*w+x*y^3+x*z^3+x^4", XYZW)
    assert len(f) == 6


def test_parse_cancellation_gives_zero():
    assert P("3/4*x - 3/4*x").is_zero()


@pytest.mark.parametrize("bad", ["xy", "2x", "x^", "x^-1", "x + + y", "", "x*", "(x+y)"])
def test_parse_rejects(bad):
    with pytest.raises(PolySyntaxError):
        P(bad)


def test_parse_unknown_variable():
    with pytest.raises(PolyError):
        P("x+q")


def test_infer_ring_first_appearance():
    assert infer_ring("z^2+x*y+z") == ("z", "x", "y")


def test_mult_at_origin_examples():
    assert mult_at_origin(P("x^2+y^3")) == 2
    F = P("x^2*w^2+y^2*z^2+2*x*y*z*w+x*y^3+x*z^3+x^4", XYZW)
    assert mult_at_origin(dehomogenize(F, "w", (0, 0, 0, 1))) == 2
    G = P("x^3*w+z^4+x*y^3", XYZW)
    assert mult_at_origin(dehomogenize(G, "w", (0, 0, 0, 1))) == 3


def test_mult_of_zero_raises():
    with pytest.raises(ZeroPolynomialError):
        mult_at_origin(Poly.zero(XY))


def test_homogeneous_part_examples():
    f = P("x^2+y^3")
    assert homogeneous_part(f, 2) == P("x^2")
    assert homogeneous_part(f, 4).is_zero()
    g = P("x^3+y^3+x^4+y^2*z^2", XYZ)
    assert homogeneous_part(g, 3) == P("x^3+y^3", XYZ)


def test_dehomogenize_examples():
    with pytest.raises(PolyError, match="not on hypersurface"):
        dehomogenize(P("x^4+y^4+z^4+w^4", XYZW), "w", (0, 0, 0, 1))
    got = dehomogenize(P("x^3*w+z^4+x*y^3", XYZW), "w", (0, 0, 0, 1))
    assert got == P("x^3+z^4+x*y^3", XYZ)
    got = dehomogenize(P("x^2*w^2+y^4+x*z^3+x^4", XYZW), "w", (0, 0, 0, 1))
    assert got == P("x^2+y^4+x*z^3+x^4", XYZ)


def test_dehomogenize_translates_point():
    F = P("x*z-y^2", XYZ)
    f = dehomogenize(F, "z", (1, 1, 1))
    assert f.constant_term() == 0 and f.ring == ("x", "y")


def test_substitute_truncated_examples():
    x2 = P("x^2")
    assert substitute_truncated(x2, "x", P("x-y"), 10) == P("x^2-2*x*y+y^2")
    f = P("x^2+x*y^2+y^5")
    half = P("x-1/2*y^2")
    full = substitute_truncated(f, "x", half, 100)
    assert full == P("x^2-1/4*y^4+y^5")
    assert substitute_truncated(f, "x", half, 5) == P("x^2-1/4*y^4")
    assert substitute_truncated(P("x^2+x^3"), "x", P("x-y"), 3) == P("x^2-2*x*y+y^2")


def test_linear_change_examples():
    f = P("x^2+2*x*y+y^2")
    assert linear_change(f, [[1, 0], [0, 1]]) == f
    assert linear_change(f, [[1, -1], [0, 1]]) == P("x^2")
    assert linear_change(P("y^3*z", XYZ), [[1, 0, 0], [0, 0, 1], [0, 1, 0]]) == P("y*z^3", XYZ)
    with pytest.raises(PolyError):
        linear_change(f, [[1, 1], [1, 1]])


def test_canonical_equality_and_hash():
    a = P("y^3+x^2")
    b = P("x^2 + y^3 + 0*x")
    assert a == b and hash(a) == hash(b)
    assert 0 not in a.terms.values()


@pytest.mark.parametrize("name,ring", [("quartic", XYZW), ("quartic_errata", XYZW),
                                       ("sextic", XYZ), ("sextic_errata", XYZ)])
def test_round_trip_on_corpus(name, ring):
    for row in load_corpus(name, ring):
        assert parse_poly(str(row.poly), ring) == row.poly


exps = st.tuples(st.integers(0, 4), st.integers(0, 4))
coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(exps, coef, min_size=1, max_size=5).map(lambda d: Poly(XY, d))
nonzero = polys.filter(lambda p: not p.is_zero())


@given(polys)
def test_round_trip_property(p):
    assert parse_poly(str(p), XY) == p


@given(nonzero, nonzero)
def test_mult_additive(f, g):
    assert mult_at_origin(f * g) == mult_at_origin(f) + mult_at_origin(g)


@given(polys)
def test_homogeneous_parts_reassemble(f):
    total = Poly.zero(XY)
    for d in range(0, 9):
        total = total + homogeneous_part(f, d)
    assert total == f


mats = st.tuples(*[st.fractions(min_value=-3, max_value=3, max_denominator=3)] * 4).filter(
    lambda m: m[0] * m[3] - m[1] * m[2] != 0)


@settings(max_examples=50)
@given(polys, mats)
def test_linear_change_inverse(f, m):
    a, b, c, d = m
    det = a * d - b * c
    M = [[a, b], [c, d]]
    Minv = [[d / det, -b / det], [-c / det, a / det]]
    assert linear_change(linear_change(f, M), Minv) == f


@settings(max_examples=50)
@given(polys, polys)
def test_truncation_beyond_degree_is_plain_substitution(f, r):
    full = f.subs({"x": r, "y": Poly.var(XY, "y")})
    bound = full.total_degree() + 1 if not full.is_zero() else 1
    assert substitute_truncated(f, "x", r, bound) == full


def test_fraction_coefficients_exact():
    f = P("1/3*x+1/6*x")
    assert f.terms == {(1, 0): Fraction(1, 2)}
