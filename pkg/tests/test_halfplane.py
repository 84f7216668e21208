from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from dfdomains.exactnum import QuadRat, mp
from dfdomains.halfplane import (INF, AntiMoebiusMap, HPoint, MoebiusMap, Semicircle,
                                 VerticalLine, classify, distance, isometric_circle, point,
                                 reflection_in)

S11 = QuadRat(0, 1, 11)
T = MoebiusMap(1, 1, 0, 1)
S = MoebiusMap(0, -1, 1, 0)
G2 = MoebiusMap(0, -1 / S11, S11, 0)
G3 = MoebiusMap(S11, 5 / S11, 2 * S11, S11)
G4 = MoebiusMap(10, 3, 33, 10)
G5 = MoebiusMap(23, 8, 66, 23)
I = point(0, 1)


def test_apply_examples():
    assert T(I) == point(1, 1)
    assert G2(INF) == HPoint(0, 0)
    assert S(I) == I
    assert T(INF) is INF


@pytest.mark.parametrize("g, center, r2", [
    (G2, 0, Fraction(1, 11)),
    (G4, Fraction(-10, 33), Fraction(1, 33 ** 2)),
    (G5.inverse(), Fraction(23, 66), Fraction(1, 66 ** 2)),
])
def test_isometric_circles(g, center, r2):
    c = isometric_circle(g)
    assert c.center == center
    assert c.radius_sq == r2


def test_no_isometric_circle_for_translation():
    with pytest.raises(ValueError, match="no isometric circle"):
        isometric_circle(T)


def test_classify():
    assert classify(T).kind == "parabolic"
    k = classify(G2)
    assert k.kind == "elliptic" and k.order == 2 and k.trace == 0
    k = classify(G4)
    assert k.kind == "hyperbolic" and abs(k.trace) == 20


def test_distance():
    assert distance(I, I) == 0
    assert abs(distance(I, point(0, 4)) - mp.log(4)) < 1e-30
    assert abs(distance(I, point(1, 1)) - mp.acosh(1.5)) < 1e-30
    with pytest.raises(ValueError):
        distance(I, HPoint(0, 0))


def test_reflections():
    assert reflection_in(VerticalLine(0))(point(1, 1)) == point(-1, 1)
    assert reflection_in(Semicircle(0, 1))(point(0, 2)) == point(0, Fraction(1, 2))
    g = reflection_in(VerticalLine(0)) * reflection_in(Semicircle(0, Fraction(1, 11)))
    assert isinstance(g, MoebiusMap)
    assert g == G2


def test_compositions():
    assert (T * T.inverse()).is_identity()
    assert G2 * G3 == MoebiusMap(-2, -1, 11, 5)
    assert G2 * T.inverse() * G2 == MoebiusMap(1, 0, 11, 1)


def test_projective_equality_and_sign():
    assert MoebiusMap(-1, -1, 0, -1) == T
    assert MoebiusMap(2, 2, 0, 2) == T
    assert hash(MoebiusMap(-1, -1, 0, -1)) == hash(T)
    assert isinstance(reflection_in(VerticalLine(1)), AntiMoebiusMap)


ints = st.integers(min_value=-6, max_value=6)


@st.composite
def sl2z(draw):
    g = MoebiusMap.identity()
    for _ in range(draw(st.integers(0, 6))):
        g = g * draw(st.sampled_from([T, T.inverse(), S, G4, G4.inverse()]))
    return g


rat_points = st.builds(lambda x, y: point(Fraction(x, 7), Fraction(y, 5)),
                       st.integers(-20, 20), st.integers(1, 20))


@settings(max_examples=50)
@given(sl2z(), sl2z(), rat_points)
def test_action_is_compatible_with_products(g, h, z):
    assert (g * h)(z) == g(h(z))


@settings(max_examples=50)
@given(sl2z())
def test_isometric_circle_maps_to_inverse_circle(g):
    if g.c == 0:
        return
    src, dst = isometric_circle(g), isometric_circle(g.inverse())
    geo = src.as_geodesic()
    for t in (Fraction(1, 3), Fraction(-1, 2), Fraction(3, 4)):
        x = geo.center + t * src.radius
        p = HPoint(x, src.radius_sq - (x - geo.center) ** 2)
        q = g(p)
        assert (q.x - dst.center) ** 2 + q.y2 == dst.radius_sq


@given(st.sampled_from([VerticalLine(0), VerticalLine(Fraction(1, 2)), Semicircle(0, 1),
                        Semicircle(Fraction(10, 33), Fraction(1, 33 ** 2)),
                        Semicircle(S11, Fraction(1, 11))]), rat_points)
def test_reflection_is_involution(geo, z):
    r = reflection_in(geo)
    assert r(r(z)) == z
    assert (r * r).is_identity()


@settings(max_examples=50)
@given(sl2z(), rat_points, rat_points)
def test_distance_is_invariant(g, z, w):
    r = reflection_in(Semicircle(Fraction(1, 3), 2))
    d = distance(z, w)
    assert abs(distance(g(z), g(w)) - d) < mpmath.mpf(2) ** -60 * (1 + d)
    assert abs(distance(r(z), r(w)) - d) < mpmath.mpf(2) ** -60 * (1 + d)
