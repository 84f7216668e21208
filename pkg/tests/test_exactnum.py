from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from dfdomains.exactnum import FieldMismatch, QuadRat, approx, parse_quadrat

D = 11
rats = st.fractions(min_value=-50, max_value=50, max_denominator=60)
quads = st.builds(lambda a, b: QuadRat(a, b, D), rats, rats)
nonzero = quads.filter(lambda x: not (x.a == 0 and x.b == 0))

SQRT11 = QuadRat(0, 1, D)


def test_multiplication_examples():
    assert QuadRat(1, 0, D) * SQRT11 == SQRT11
    assert SQRT11 * SQRT11 == QuadRat(11)
    q = SQRT11 / QuadRat(11, 0, D)
    assert q == QuadRat(0, Fraction(1, 11), D)
    assert q * SQRT11 == 1


@pytest.mark.parametrize("x, s", [
    (QuadRat(0, 0, D), 0),
    (QuadRat(Fraction(-10, 3), 1, D), -1),   # sqrt(11) < 10/3 since 100/9 > 11
    (QuadRat(7, -2, D), 1),
    (QuadRat(-7, 2, D), -1),
    (QuadRat(3, 1, D), 1),
])
def test_sign_examples(x, s):
    assert x.sign() == s
    with mpmath.workprec(200):
        v = mpmath.mpf(x.a.numerator) / x.a.denominator + \
            mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(D)
    assert (v > 0) - (v < 0) == s


def test_approx_examples():
    v, bound = approx(1 / SQRT11, 53)
    assert abs(v - mpmath.mpf("0.30151134457776363")) <= 2 * bound
    assert abs(v * v * 11 - 1) < mpmath.mpf(2) ** -50
    assert approx(QuadRat(0), 53)[0] == 0
    v, _ = approx(SQRT11, 53)
    assert abs(v - mpmath.mpf("3.3166247903554")) < 1e-12
    with pytest.raises(ValueError):
        approx(SQRT11, 8)


def test_errors():
    with pytest.raises(ZeroDivisionError):
        SQRT11 / QuadRat(0)
    with pytest.raises(FieldMismatch):
        SQRT11 + QuadRat(0, 1, 2)
    with pytest.raises(ValueError):
        QuadRat(1, 1, 12)


@pytest.mark.parametrize("text, value", [
    ("0+-1/11*sqrt(11)", QuadRat(0, Fraction(-1, 11), 11)),
    ("5/3", QuadRat(Fraction(5, 3))),
    ("-2+3*sqrt(2)", QuadRat(-2, 3, 2)),
])
def test_parse(text, value):
    assert parse_quadrat(text) == value


@pytest.mark.parametrize("bad", ["1 + sqrt(11)", "sqrt(11)", "1.5", ""])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_quadrat(bad)


@given(nonzero)
def test_inverse(x):
    assert x * (1 / x) == 1


@given(quads)
def test_sign_matches_high_precision(x):
    v, _ = approx(x, 128)
    if abs(v) > mpmath.mpf(2) ** -100:
        assert x.sign() == (1 if v > 0 else -1)


@given(quads, quads)
def test_results_are_reduced(x, y):
    for r in (x + y, x - y, x * y):
        for q in (r.a, r.b):
            assert q.denominator > 0
            assert Fraction(q.numerator, q.denominator) == q


@given(quads)
def test_text_round_trip(x):
    assert parse_quadrat(str(x), D) == x


@given(quads, st.integers(min_value=20, max_value=120))
def test_approx_monotone(x, bits):
    v1, b1 = approx(x, bits)
    v2, b2 = approx(x, bits + 10)
    assert b2 < b1
    assert abs(v1 - v2) <= b1 + b2
