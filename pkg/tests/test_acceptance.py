"""Acceptance criteria 1-8, one PASS/FAIL line each in the terminal summary."""

import random
from fractions import Fraction

import pytest

from conftest import FIXTURES, record
from dfdomains import reduce, signature
from dfdomains import exactnum as en
from dfdomains.domains import Signature, area
from dfdomains.exactnum import mp
from dfdomains.halfplane import MoebiusMap
from dfdomains import reproduce
from dfdomains.symmetry import df_check, double_reflection_group, polygon_from_signature

TOL_30 = mp.mpf(2) ** -30


def _run(number, check):
    ok, detail = check()
    record(number, ok, detail)
    assert ok, detail


def test_criterion_1_modular_baseline():
    _run("1", reproduce.check_modular)


def test_criterion_2_gamma():
    _run("2", reproduce.check_gamma)


def test_criterion_3_g_domain():
    _run("3", reproduce.check_g)


def test_criterion_4_cosets():
    _run("4", reproduce.check_cosets)


def test_criterion_5_normalizer_not_df():
    _run("5", reproduce.check_normalizer)


def test_criterion_6_parabolics():
    _run("6", reproduce.check_parabolics)


def test_criterion_7_kleinian():
    _run("7", reproduce.check_kleinian)


def test_criterion_8a_shimizu(domains):
    bad = [(name, str(s.geodesic.radius_sq)) for name, dom in domains.items()
           for s in dom.arcs if en.sign(s.geodesic.radius_sq - dom.width ** 2) > 0]
    record("8a", not bad, f"radius <= translation length on {len(domains)} domains")
    assert not bad


def test_criterion_8b_equal_height_cycles(domains):
    bad = []
    for name, dom in domains.items():
        for cyc in dom.cycles:
            if cyc.ideal:
                continue
            heights = {str(en.lift(dom.vertices[m].point.y2)) if en.is_exact(dom.vertices[m].point.y2)
                       else mp.nstr(dom.vertices[m].point.y2, 20) for m in cyc.members}
            if len(heights) != 1:
                bad.append((name, cyc.members, heights))
    record("8b", not bad, "finite vertex cycles lie at one height")
    assert not bad


def _random_signature(rng):
    while True:
        cusps = rng.randint(1, 3)
        cones = sorted(rng.randint(2, 9) for _ in range(rng.randint(0, 4)))
        sig = Signature(0, tuple(cones), cusps)
        if sig.is_hyperbolic:
            return sig


def test_criterion_8c_doubling_round_trip():
    rng = random.Random(20)
    failures = []
    for _ in range(20):
        sig = _random_signature(rng)
        Q = polygon_from_signature(sig)
        _, P = double_reflection_group(Q)
        if signature(P) != sig or abs(area(P) - 2 * Q.area()) > TOL_30 \
                or abs(area(P) - sig.area()) > TOL_30:
            failures.append(str(sig))
    record("8c", not failures, f"20 random signatures, failures {failures}")
    assert not failures


def test_criterion_8d_df_implies_genus_zero(domains):
    bad = [name for name, dom in domains.items()
           if df_check(dom).is_df and signature(dom).genus != 0]
    n_df = sum(df_check(dom).is_df for dom in domains.values())
    record("8d", not bad, f"{n_df} of {len(domains)} fixture domains are DF, all genus 0")
    assert not bad


def test_criterion_8e_reduce_words(groups, domains):
    rng = random.Random(8)
    misses = {}
    for name in FIXTURES:
        gens, dom = groups[name], domains[name]
        for _ in range(100):
            g = MoebiusMap.identity()
            for _ in range(rng.randint(1, 8)):
                g = g * rng.choice(gens) ** rng.choice((1, -1))
            if not reduce(g, dom).in_group:
                misses[name] = misses.get(name, 0) + 1
    record("8e", not misses, f"100 words per group, misses {misses}")
    assert not misses
