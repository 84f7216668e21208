"""Mirror-symmetric domains and the reflection groups behind them.

A Ford domain whose sides pair up with their mirror images across the
middle line ``L`` of the strip is half a reflection polygon ``Q``: every side
pairing factors as ``sigma_L o sigma_S`` with ``sigma_S`` the reflection in the
side.  Conversely, doubling a reflection polygon across a vertical side gives a
fundamental domain for the orientation-preserving half of its reflection group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import exactnum as en
from .exactnum import mp, sign, to_mpf
from .halfplane import (INF, AntiMoebiusMap, HPoint, Semicircle, VerticalLine,
                        reflection_in)
from .domains import (ANGLE_TOL, FundamentalDomain, Signature, _angle_between,
                      _unit_tangent, assemble, dirichlet_domain, ford_domain,
                      recognize_pi_multiple)


@dataclass(frozen=True)
class MirrorReport:
    has_axis: bool
    axis: VerticalLine
    pairing_symmetric: bool
    center_line: tuple | None = None     # (lowest point, INF) of the axis inside the domain
    violation: tuple | None = None       # (side index, reason)

    @property
    def is_df(self) -> bool:
        return self.has_axis and self.pairing_symmetric


def _mirror_x(x, a):
    return 2 * a - x


def _mirror_point(p, a):
    return INF if p is INF else HPoint(_mirror_x(p.x, a), p.y2)


def _mirror_geodesic(geo, a):
    if isinstance(geo, VerticalLine):
        return VerticalLine(_mirror_x(geo.x, a))
    return Semicircle(_mirror_x(geo.center, a), geo.radius_sq)


def _same_point(p, q):
    if p is INF or q is INF:
        return p is q
    return p == q


def _mirror_index(dom, side, a):
    start, end = _mirror_point(side.end, a), _mirror_point(side.start, a)
    geo = _mirror_geodesic(side.geodesic, a)
    for other in dom.sides:
        if other.geodesic == geo and _same_point(other.start, start) and _same_point(other.end, end):
            return other.index
    return None


def _axis_floor(dom, a):
    """Lowest point of the domain on the vertical line ``x = a``."""
    best = en.lift(0) if en.is_exact(a) else mp.zero
    for side in dom.arcs:
        y2 = side.geodesic.y2_at(a)
        if sign(y2 - best) > 0:
            best = y2
    return HPoint(a, best)


def mirror_check(dom: FundamentalDomain, a) -> MirrorReport:
    """Test ``dom`` for mirror symmetry about ``x = a`` and symmetric pairings."""
    axis = VerticalLine(a)
    sigma_l = reflection_in(axis)
    partners = {}
    for side in dom.sides:
        j = _mirror_index(dom, side, a)
        if j is None:
            return MirrorReport(False, axis, False, None,
                                (side.index, "mirror image is not a side"))
        partners[side.index] = j
    for side in dom.sides:
        if side.target != partners[side.index]:
            return MirrorReport(True, axis, False, None,
                                (side.index, f"paired with side {side.target}, "
                                             f"mirror is side {partners[side.index]}"))
        if sigma_l * reflection_in(side.geodesic) != side.pairing:
            return MirrorReport(True, axis, False, None,
                                (side.index, "pairing is not sigma_L o sigma_side"))
    return MirrorReport(True, axis, True, (_axis_floor(dom, a), INF))


def df_check(dom: FundamentalDomain) -> MirrorReport:
    """Mirror test about the middle line of the strip of a Ford domain."""
    return mirror_check(dom, dom.axis)


def _domains_coincide(d1: FundamentalDomain, d2: FundamentalDomain) -> bool:
    if len(d1.sides) != len(d2.sides):
        return False
    for s1, s2 in zip(d1.sides, d2.sides):
        if type(s1.geodesic) is not type(s2.geodesic):
            return False
        if isinstance(s1.geodesic, VerticalLine):
            if abs(to_mpf(s1.geodesic.x) - to_mpf(s2.geodesic.x)) > mp.mpf(2) ** -40:
                return False
        else:
            for u, v in ((s1.geodesic.center, s2.geodesic.center),
                         (s1.geodesic.radius_sq, s2.geodesic.radius_sq)):
                if abs(to_mpf(u) - to_mpf(v)) > mp.mpf(2) ** -40:
                    return False
        if s1.target != s2.target or s1.pairing != s2.pairing:
            return False
    return True


def double_dirichlet_check(gens, axis=0, centers=None, max_word_length: int = 4) -> MirrorReport:
    """Compare Dirichlet domains at two centres on the vertical line ``x = axis``.

    ``centers`` are two heights ``y``; by default they are placed at 2 and 3
    times the largest isometric circle radius of a Ford domain.
    """
    a = en.lift(axis)
    line = VerticalLine(a)
    if centers is None:
        ford = ford_domain(gens, max_word_length)
        r2 = max((s.geodesic.radius_sq for s in ford.arcs), key=to_mpf)
        y2s = (4 * r2, 9 * r2)
    else:
        y2s = tuple(en.lift(y) * en.lift(y) for y in centers)
    try:
        d1 = dirichlet_domain(gens, HPoint(a, y2s[0]), max_word_length)
        d2 = dirichlet_domain(gens, HPoint(a, y2s[1]), max_word_length)
    except ValueError as exc:
        return MirrorReport(False, line, False, None, (-1, str(exc)))
    if not _domains_coincide(d1, d2):
        return MirrorReport(False, line, False, None, (-1, "Dirichlet domains differ"))
    rep = mirror_check(d1, a)
    if not rep.is_df:
        return rep
    return MirrorReport(True, line, True, (_axis_floor(d1, a), INF))


@dataclass(frozen=True)
class ReflectionPolygon:
    """Polygon with one vertex at infinity between two vertical sides.

    ``sides`` run ``K, arcs..., L`` with ``K`` the left and ``L`` the right
    vertical side; ``vertices[i]`` is the corner between ``sides[i-1]`` and
    ``sides[i]``, so ``vertices[0]`` is infinity.
    """

    sides: tuple
    vertices: tuple
    angles: tuple
    reflections: tuple = field(default=())
    rewriting_ok: bool | None = None

    @property
    def angles_over_pi(self):
        return tuple(recognize_pi_multiple(a) for a in self.angles)

    def area(self):
        n = len(self.vertices)
        return (n - 2) * mp.pi - sum(self.angles, mp.zero)


def _check_angles(angles):
    for ang in angles:
        q = recognize_pi_multiple(ang)
        if q is None or not (q == 0 or (q.numerator == 1 and q.denominator >= 2)):
            raise ValueError(f"angle {mp.nstr(ang / mp.pi, 15)}*pi is not 0 or pi/k")


def _polygon(sides, vertices):
    angles = [mp.zero]
    for i in range(1, len(sides)):
        p = vertices[i]
        if p.is_ideal:
            angles.append(mp.zero)
            continue
        angles.append(_angle_between(_unit_tangent(sides[i - 1], p, False),
                                     _unit_tangent(sides[i], p, True)))
    _check_angles(angles)
    refl = tuple(reflection_in(g) for g in sides)
    return tuple(sides), tuple(vertices), tuple(angles), refl


def extract_reflection_group(dom: FundamentalDomain, report: MirrorReport | None = None) -> ReflectionPolygon:
    """Left half ``Q`` of a mirror-symmetric domain and its reflections."""
    report = report or df_check(dom)
    if not report.pairing_symmetric:
        raise ValueError(f"domain is not mirror symmetric: {report.violation}")
    a = report.axis.x
    sides, vertices = [], [INF]
    for side in dom.sides:
        if side.start is not INF and sign(side.start.x - a) >= 0:
            break
        sides.append(side.geodesic)
        vertices.append(side.end)
    sides.append(report.axis)
    sides_t, verts, angles, refl = _polygon(sides, vertices)
    sigma_l = refl[-1]
    ok = all(sigma_l * reflection_in(s.geodesic) == s.pairing
             for s in dom.sides if s.start is INF or sign(s.start.x - a) < 0)
    if not ok:
        raise ValueError("a side pairing does not factor as sigma_L o sigma_side")
    return ReflectionPolygon(sides_t, verts, angles, refl, ok)


def double_reflection_group(Q: ReflectionPolygon):
    """Generators ``sigma_L o sigma_i`` and the doubled domain ``Q u sigma_L Q``."""
    if not (isinstance(Q.sides[0], VerticalLine) and isinstance(Q.sides[-1], VerticalLine)):
        raise ValueError("polygon needs vertical sides on both ends of its vertex at infinity")
    _check_angles(Q.angles)
    K, L = Q.sides[0], Q.sides[-1]
    a = L.x
    if sign(a - K.x) <= 0:
        raise ValueError("the side L must lie to the right of K")
    sigma_l = reflection_in(L)
    arcs = list(Q.sides[1:-1])
    pts = list(Q.vertices[1:])       # bottom of K, ..., foot of L
    gens = [sigma_l * reflection_in(g) for g in Q.sides[:-1]]
    translation = gens[0]
    merged = bool(arcs) and sign(arcs[-1].center - a) == 0
    all_arcs = arcs + [_mirror_geodesic(g, a) for g in reversed(arcs[:-1] if merged else arcs)]
    tail = [_mirror_point(p, a) for p in reversed(pts[:-1])]
    points = (pts[:-1] if merged else pts) + tail
    pairing_of = {}
    for i, g in enumerate(arcs):
        pairing_of[i] = gens[i + 1]
    n = len(all_arcs)

    def candidates(i):
        if i < len(arcs):
            return [(pairing_of[i], ())]
        j = n - 1 - i
        return [(pairing_of[j].inverse(), ())]

    width = 2 * (a - K.x)
    dom = assemble("doubled", K.x, width, translation, all_arcs, points, candidates,
                   generators=gens, verify_generators=False)
    return gens, dom


def _split_evenly(items, parts):
    out, start = [], 0
    for k in range(parts):
        size = (len(items) - start + (parts - k) - 1) // (parts - k)
        out.append(items[start:start + size])
        start += size
    return out


def polygon_from_signature(sig: Signature | str) -> ReflectionPolygon:
    """Reflection polygon whose doubled group has signature ``sig``.

    The vertex at infinity sits between ``K = {x = 0}`` and the right vertical
    side; the bottom is a chain of unit semicircles, consecutive ones meeting at
    the prescribed angles.  Finite corners get angles ``pi/n`` and the ``m - 1``
    ideal corners are spread between them.
    """
    if isinstance(sig, str):
        sig = Signature.parse(sig)
    if sig.genus != 0:
        raise ValueError("only genus 0 signatures come from reflection polygons")
    if sig.cusps < 1:
        raise ValueError("compact polygons (no cusp) are not constructed")
    if not sig.is_hyperbolic:
        raise ValueError(f"signature {sig} is not hyperbolic")
    chunks = _split_evenly(list(sig.cone_orders), sig.cusps)
    orders = []
    for k, chunk in enumerate(chunks):
        if k:
            orders.append(None)
        orders.extend(chunk)
    angles = [mp.zero if n is None else mp.pi / n for n in orders]
    # unit circles: first centre at cos(angle at K), consecutive centres
    # 2*cos(angle/2) apart, L at distance cos(angle at L) beyond the last
    centers = [mp.cos(angles[0])]
    for ang in angles[1:-1]:
        centers.append(centers[-1] + 2 * mp.cos(ang / 2))
    x_l = centers[-1] + mp.cos(angles[-1])
    one = mp.one
    sides = [VerticalLine(mp.zero)] + [Semicircle(c, one) for c in centers] + [VerticalLine(x_l)]
    vertices = [INF]
    xs = [mp.zero] + [(centers[i] + centers[i + 1]) / 2 for i in range(len(centers) - 1)] + [x_l]
    for x, circ in zip(xs, centers + [centers[-1]]):
        y2 = one - (x - circ) ** 2
        vertices.append(HPoint(x, y2 if y2 > ANGLE_TOL else mp.zero))
    sides_t, verts, angs, refl = _polygon(sides, vertices)
    return ReflectionPolygon(sides_t, verts, angs, refl)
