from fractions import Fraction

import pytest

from dfdomains import (INF, HPoint, MoebiusMap, Semicircle, Signature, UnverifiedDomain, area,
                       cusp_classes, dirichlet_domain, ford_domain, reduce, signature)
from dfdomains.domains import (CenterIsFixedPoint, NoParabolicAtInfinity, bisector, contains,
                               find_translation, format_word, recognize_pi_multiple)
from dfdomains.exactnum import mp
from dfdomains.halfplane import VerticalLine, point

T = MoebiusMap(1, 1, 0, 1)
S = MoebiusMap(0, -1, 1, 0)
GAMMA0_5 = [T, MoebiusMap(1, 0, 5, 1), MoebiusMap(2, -1, 5, -2)]
TOL = mp.mpf(2) ** -30


@pytest.mark.parametrize("text, sig", [
    ("0;2,3;1", Signature(0, (2, 3), 1)),
    ("(0; 2, 2, 2, 2; 2)", Signature(0, (2, 2, 2, 2), 2)),
    ("1;-;4", Signature(1, (), 4)),
    ("0;;3", Signature(0, (), 3)),
])
def test_signature_parse(text, sig):
    assert Signature.parse(text) == sig
    assert Signature.parse(str(sig)) == sig


def test_signature_area():
    assert Signature(0, (2, 3), 1).area_over_2pi == Fraction(1, 6)
    assert Signature(1, (), 4).area_over_2pi == 4
    assert not Signature(0, (2, 2), 0).is_hyperbolic


def test_modular_ford_domain(groups):
    dom = ford_domain(groups["modular.json"])
    assert dom.width == 1 and dom.left == Fraction(-1, 2)
    assert str(signature(dom)) == "(0; 2, 3; 1)"
    assert abs(area(dom) - mp.pi / 3) < TOL
    assert [s.geodesic for s in dom.sides if not s.is_vertical] == [Semicircle(0, 1)] * 2
    assert dom.is_exact


def test_dirichlet_matches_ford(groups):
    ford = ford_domain(groups["modular.json"])
    for y in (2, 3, 5):
        d = dirichlet_domain(groups["modular.json"], (0, y))
        assert d.kind == "dirichlet"
        assert [s.geodesic for s in d.sides] == [s.geodesic for s in ford.sides]


def test_iterative_deepening():
    with pytest.raises(UnverifiedDomain) as info:
        ford_domain(GAMMA0_5, 1)
    assert info.value.depth == 1
    dom = ford_domain(GAMMA0_5, 4)
    assert dom.depth == 2
    assert signature(dom) == Signature(0, (2, 2), 2)
    assert abs(area(dom) - 2 * mp.pi) < TOL


def test_infinite_area_group_is_unverified():
    with pytest.raises(UnverifiedDomain):
        ford_domain([T, MoebiusMap(1, 0, 5, 1)], 3)


def test_error_cases(groups):
    with pytest.raises(NoParabolicAtInfinity):
        ford_domain([S])
    with pytest.raises(CenterIsFixedPoint):
        dirichlet_domain(groups["modular.json"], (0, 1))
    with pytest.raises(ValueError, match="above every isometric circle"):
        dirichlet_domain(groups["modular.json"], (0, Fraction(1, 2)))
    with pytest.raises(ValueError, match="exact"):
        ford_domain([MoebiusMap(1, mp.mpf(1), 0, 1)])


def test_find_translation():
    g, word = find_translation([S, T * S])
    assert g == T
    assert format_word(word) == "g2*g1^-1"


def test_gamma_side_words(domains):
    dom = domains["gamma11.json"]
    assert len(dom.sides) == 10
    for s in dom.sides:
        assert dom.sides[s.target].target == s.index
        assert s.pairing * dom.sides[s.target].pairing == MoebiusMap.identity()
        # the pairing carries the side onto its partner, reversing direction
        other = dom.sides[s.target]
        assert s.pairing(s.start) == other.end or s.pairing(s.start) is other.end


def test_cusp_classes_gamma(domains):
    classes = cusp_classes(domains["gamma11.json"])
    got = sorted(sorted("oo" if p is INF else str(p.x) for p in c) for c in classes)
    assert got == [["-1/3", "1/3"], ["oo"]]


def test_vertex_angles_recognized():
    assert recognize_pi_multiple(mp.pi / 3) == Fraction(1, 3)
    assert recognize_pi_multiple(2 * mp.pi / 7 + mp.mpf(2) ** -100) == Fraction(2, 7)
    assert recognize_pi_multiple(mp.mpf("0.5")) is None


def test_bisector_of_modular_generator():
    geo, inside = bisector(point(0, 2), S)
    assert geo == Semicircle(0, 1) and not inside
    geo, inside = bisector(point(0, 2), T)
    assert geo == VerticalLine(Fraction(1, 2)) and not inside


def test_reduce_detects_non_members(domains):
    dom = domains["gamma11.json"]
    assert not reduce(S, dom).in_group
    assert not reduce(MoebiusMap(1, 0, 2, 1), domains["g_intersection.json"]).in_group
    r = reduce(T ** 5 * dom.generators[1], dom)
    assert r.in_group and r.residual.is_identity()


def test_contains(domains):
    dom = domains["modular.json"]
    assert contains(dom, point(0, 2))
    assert not contains(dom, point(0, Fraction(1, 2)))
    assert not contains(dom, point(1, 2))
    assert contains(dom, INF)
