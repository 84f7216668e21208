import dataclasses
import random
from fractions import Fraction

import pytest

from dfdomains import INF, MoebiusMap, Signature, ford_domain, signature
from dfdomains.domains import area
from dfdomains.exactnum import mp
from dfdomains.halfplane import Semicircle, VerticalLine, reflection_in
from dfdomains.symmetry import (df_check, double_dirichlet_check, double_reflection_group,
                                extract_reflection_group, mirror_check, polygon_from_signature)

TOL = mp.mpf(2) ** -30
SHIFT = MoebiusMap(1, Fraction(1, 3), 0, 1)


@pytest.fixture(scope="module")
def shifted_modular(groups):
    return [SHIFT * g * SHIFT.inverse() for g in groups["modular.json"]]


def test_gamma_is_df(domains):
    rep = df_check(domains["gamma11.json"])
    assert rep.is_df and rep.axis == VerticalLine(0)
    assert rep.violation is None


def test_normalizer_violation(domains):
    rep = df_check(domains["ngamma0_11.json"])
    assert rep.has_axis and not rep.pairing_symmetric
    side, reason = rep.violation
    assert side == 2 and "paired with side 3" in reason


def test_mirror_off_axis(domains):
    rep = mirror_check(domains["modular.json"], Fraction(1, 4))
    assert not rep.has_axis and not rep.is_df


def test_double_dirichlet_modular(groups):
    rep = double_dirichlet_check(groups["modular.json"])
    assert rep.is_df
    start, end = rep.center_line
    assert start.x == 0 and start.y2 == 1


def test_center_line_is_unique(groups):
    # a second vertical line of centres would need a second mirror
    rep = double_dirichlet_check(groups["modular.json"], axis=Fraction(1, 4))
    assert not rep.is_df and rep.violation[1] == "Dirichlet domains differ"


def test_shifted_group_moves_its_axis(shifted_modular):
    dom = ford_domain(shifted_modular)
    assert df_check(dom).axis == VerticalLine(Fraction(1, 3))
    assert not double_dirichlet_check(shifted_modular, axis=0).is_df
    assert double_dirichlet_check(shifted_modular, axis=Fraction(1, 3)).is_df


def test_extract_gamma_hexagon(domains):
    dom = domains["gamma11.json"]
    Q = extract_reflection_group(dom)
    half = Fraction(1, 2)
    assert Q.angles_over_pi == (0, half, half, 0, half, half)
    assert Q.rewriting_ok
    assert abs(Q.area() - 2 * mp.pi) < TOL
    sigma_l = Q.reflections[-1]
    left_sides = [s for s in dom.sides if s.end is not INF and s.end.x <= 0]
    for s in left_sides:
        assert sigma_l * reflection_in(s.geodesic) == s.pairing


def test_extract_rejects_non_df(domains):
    with pytest.raises(ValueError):
        extract_reflection_group(domains["ngamma0_11.json"])


def test_round_trip_gamma(domains):
    Q = extract_reflection_group(domains["gamma11.json"])
    gens, P = double_reflection_group(Q)
    assert signature(P) == signature(domains["gamma11.json"])
    assert abs(area(P) - 2 * Q.area()) < TOL
    assert gens[0] == MoebiusMap(1, 1, 0, 1)


@pytest.mark.parametrize("text", ["0;2,3;1", "0;2,2,2,2;2", "0;;3", "0;2,3,7;1", "0;3,3;2"])
def test_polygon_from_signature(text):
    sig = Signature.parse(text)
    Q = polygon_from_signature(sig)
    finite = sorted(q.denominator for q in Q.angles_over_pi if q)
    assert finite == sorted(sig.cone_orders)
    assert sum(1 for q in Q.angles_over_pi if q == 0) == sig.cusps
    _, P = double_reflection_group(Q)
    assert signature(P) == sig
    assert abs(area(P) - sig.area()) < TOL


@pytest.mark.parametrize("text, match", [
    ("1;2;1", "genus 0"),
    ("0;2,2;0", "no cusp"),
    ("0;2,2;1", "not hyperbolic"),
])
def test_polygon_from_signature_errors(text, match):
    with pytest.raises(ValueError, match=match):
        polygon_from_signature(text)


def test_double_needs_vertical_ends():
    Q = polygon_from_signature("0;2,3;1")
    bent = dataclasses.replace(Q, sides=(Semicircle(-5, 1),) + Q.sides[1:])
    with pytest.raises(ValueError, match="vertical"):
        double_reflection_group(bent)


def test_seeded_random_round_trips():
    rng = random.Random(5)
    for _ in range(5):
        cones = tuple(sorted(rng.randint(2, 6) for _ in range(rng.randint(1, 3))))
        sig = Signature(0, cones, rng.randint(1, 2))
        if not sig.is_hyperbolic:
            continue
        _, P = double_reflection_group(polygon_from_signature(sig))
        assert signature(P) == sig
