"""End-to-end checks on the bundled groups, one named fact per row."""

from __future__ import annotations

import time
from fractions import Fraction

from . import exactnum as en
from .domains import (area, cusp_classes, dirichlet_domain, ford_domain, signature)
from .exactnum import QuadRat, mp
from .halfplane import INF, HPoint
from .io import fixture_path, load_group, load_json, load_kleinian, parse_matrix
from .kleinian import df_criterion, dihedral_angle, isometric_sphere
from .modular import (coset_enumerate, cycle_type, find_relabeling, hsu_test,
                      intersection_oracle, level, parse_cycles, perm_group_order,
                      perm_inv, principal_congruence_index)
from .symmetry import df_check, extract_reflection_group

AREA_TOL = mp.mpf(2) ** -30
POINT_TOL = mp.mpf(2) ** -40


def _close(x, y, tol=AREA_TOL) -> bool:
    return abs(en.to_mpf(x) - en.to_mpf(y)) <= tol


def _group(name):
    return load_group(fixture_path(name))


def check_modular():
    gens = _group("modular.json")
    doms = [ford_domain(gens)] + [dirichlet_domain(gens, (0, y)) for y in (2, 3)]
    rho = HPoint(Fraction(1, 2), Fraction(3, 4))
    ok = True
    for d in doms:
        pts = [v.point for v in d.finite_vertices if not v.midpoint]
        ok &= len(pts) == 2 and all(
            any(_close(p.x, q.x, POINT_TOL) and _close(p.y2, q.y2, POINT_TOL) for p in pts)
            for q in (rho, HPoint(-rho.x, rho.y2)))
        ok &= str(signature(d)) == "(0; 2, 3; 1)" and _close(area(d), mp.pi / 3)
    same = all(len(d.sides) == len(doms[0].sides) and all(
        s.geodesic == t.geodesic for s, t in zip(d.sides, doms[0].sides)) for d in doms)
    return ok and same, f"signature {signature(doms[0])}, area {mp.nstr(area(doms[0]) / mp.pi, 12)}*pi"


def check_gamma():
    dom = ford_domain(_group("gamma11.json"))
    want = {(QuadRat(0), 1 / QuadRat(11))}
    for c, r2 in ((Fraction(1, 2), Fraction(1, 44)), (Fraction(10, 33), Fraction(1, 33 ** 2)),
                  (Fraction(23, 66), Fraction(1, 66 ** 2))):
        want |= {(QuadRat(c), QuadRat(r2)), (QuadRat(-c), QuadRat(r2))}
    got = {(s.geodesic.center, s.geodesic.radius_sq) for s in dom.arcs}
    rep = df_check(dom)
    Q = extract_reflection_group(dom, rep)
    half = Fraction(1, 2)
    angles_ok = Q.angles_over_pi == (0, half, half, 0, half, half)
    ok = (got == want and str(signature(dom)) == "(0; 2, 2, 2, 2; 2)"
          and _close(area(dom), 4 * mp.pi) and rep.is_df and rep.axis.x == 0 and angles_ok
          and len(dom.sides) == 10)
    return ok, f"{len(dom.sides)} sides, signature {signature(dom)}, hexagon angles/pi ({', '.join(map(str, Q.angles_over_pi))})"


def check_g():
    dom = ford_domain(_group("g_intersection.json"))
    cusps = sorted(sorted(str(p.x) if p is not INF else "oo" for p in c) for c in cusp_classes(dom))
    want = sorted([["oo"], ["0"], sorted(["1/3", "-1/3"]), sorted(["3/11", "-3/11", "4/11", "-4/11"])])
    finite = [c for c in dom.cycles if not c.ideal]
    ok = _close(area(dom), 8 * mp.pi) and cusps == want and len(finite) == 1
    if ok:
        cyc = finite[0]
        ok &= _close(cyc.angle_sum, 2 * mp.pi)
        angle_at = {str(dom.vertices[m].point.x): dom.vertices[m].angle_over_pi for m in cyc.members}
        third = Fraction(1, 3)
        ok &= angle_at == {"-1/2": third, "1/2": third, "-3/22": 2 * third, "3/22": 2 * third} or \
            angle_at == {"-1/2": 2 * third, "1/2": 2 * third, "-3/22": third, "3/22": third}
    return ok, f"area {mp.nstr(area(dom) / mp.pi, 12)}*pi, cusp classes {cusps}"


def g_action():
    gamma = ford_domain(_group("gamma11.json"))
    return coset_enumerate(intersection_oracle(gamma)), gamma


def check_cosets():
    t0 = time.perf_counter()
    action, _ = g_action()
    report = hsu_test(action)
    core = perm_group_order([action.perm_L, action.perm_R])
    pci = principal_congruence_index(11)
    data = load_json(fixture_path("g_intersection.json"))["coset_permutations"]
    pl, pr = (parse_cycles(data[k], data["degree"]) for k in ("L", "R"))
    src = [action.perm_L, action.perm_R]
    matched = (find_relabeling(src, [pl, pr]) is not None
               or find_relabeling(src, [perm_inv(pl), perm_inv(pr)]) is not None)
    elapsed = time.perf_counter() - t0
    ok = (action.index == 24 and cycle_type(action.perm_L) == (11, 11, 1, 1)
          and cycle_type(action.perm_R) == (11, 11, 1, 1) and level(action) == 11
          and report.verdict == "non-congruence" and report.witness["order"] == 6
          and core == 1351680 and pci == 660 and pci < core and matched and elapsed < 10)
    return ok, (f"index {action.index}, level {level(action)}, {report.verdict} "
                f"(order {report.witness['order']}), core index {core} > {pci}, {elapsed:.1f}s")


def check_normalizer():
    rep = df_check(ford_domain(_group("ngamma0_11.json")))
    return (not rep.pairing_symmetric and rep.violation is not None,
            f"pairing_symmetric={rep.pairing_symmetric}, violation {rep.violation}")


def check_parabolics():
    _, gamma = g_action()
    member = intersection_oracle(gamma)
    t = parse_matrix([["1", "1"], ["0", "1"]])
    ok, notes = True, []
    for item in load_json(fixture_path("g_intersection.json"))["cusp_parabolics"]:
        conj = parse_matrix(item["conjugator"])
        prod = parse_matrix(item["product"])
        factors = [parse_matrix(f) for f in item["factors"]]
        exps = item.get("factor_exponents", [1] * len(factors))
        fp = parse_matrix([["1", "0"], ["0", "1"]])
        for f, e in zip(factors, exps):
            fp = fp * f ** e
        good = (conj * t ** item["power"] * conj.inverse() == prod and fp == prod
                and member(prod) and prod(HPoint(QuadRat(Fraction(item["fixes"])), 0))
                == HPoint(QuadRat(Fraction(item["fixes"])), 0))
        ok &= good
        notes.append(f"{item['fixes']}:{'ok' if good else 'FAIL'}")
    return ok, ", ".join(notes)


def check_kleinian():
    gens = load_kleinian(fixture_path("kleinian_example.json"))
    spheres = [isometric_sphere(g) for g in gens if not g.c.is_zero()]
    half = QuadRat(Fraction(1, 2))
    ok = all(s.radius_sq == half and s.center.re.is_integer() and s.center.im.is_integer()
             for s in spheres)
    adjacent = 0
    for i, s in enumerate(spheres):
        for t in spheres[i + 1:]:
            if (s.center - t.center).abs2() == 1:
                adjacent += 1
                ok &= _close(dihedral_angle(s, t), mp.pi / 2)
    res = df_criterion(gens)
    ok &= res.passed and res.axis == 0 and all(g.trace.is_real() for g in gens)
    return ok, f"{len(spheres)} spheres, {adjacent} adjacent pairs, criterion: {res.verdict}"


CHECKS = [
    ("1 modular baseline", check_modular),
    ("2 Gamma Ford domain and hexagon", check_gamma),
    ("3 G domain, cusps and finite cycle", check_g),
    ("4 coset action, level, Hsu, core index", check_cosets),
    ("5 N(Gamma0(11)) is not DF", check_normalizer),
    ("6 cusp parabolics in G", check_parabolics),
    ("7 Kleinian example", check_kleinian),
]


def run_all():
    rows = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed row, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append((name, bool(ok), detail))
    return rows
