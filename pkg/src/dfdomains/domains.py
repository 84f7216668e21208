"""Ford and Dirichlet domains of zonal Fuchsian groups.

A domain is a vertical strip ``left <= Re z <= left + width`` (a fundamental
domain for the stabiliser of infinity, generated by ``z -> z + width``) cut
from below by finitely many semicircles.  Both constructions reduce to the
same exact computation: enumerate group elements, collect a family of
semicircles centred on the real line, take the upper envelope over the strip,
and then check the result with the Poincare polygon theorem (side pairing
bijection, angle sums ``2*pi/s`` at finite cycles, parabolic ideal cycles)
together with membership of every input generator in the group generated by
the side pairings.

Vertex coordinates are exact: two semicircles centred on the real line meet at
an ``x`` in the coefficient field and ``y**2`` in the same field, and Moebius
maps preserve that representation (see :class:`~dfdomains.halfplane.HPoint`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from . import exactnum as en
from .exactnum import QuadRat, mp, sign, to_mpf
from .halfplane import (INF, HPoint, MoebiusMap, Semicircle, VerticalLine,
                        classify, isometric_circle)

ANGLE_DENOMINATOR_LIMIT = 1000
ANGLE_TOL = mp.mpf(2) ** -80
AREA_TOL = mp.mpf(2) ** -60


class UnverifiedDomain(Exception):
    """The Poincare conditions failed for the elements enumerated so far."""

    def __init__(self, depth, reason):
        super().__init__(f"unverified({depth}): {reason}")
        self.depth = depth
        self.reason = reason


class NoParabolicAtInfinity(ValueError):
    pass


class CenterIsFixedPoint(ValueError):
    pass


class InconsistentDomain(RuntimeError):
    """Gauss-Bonnet area disagrees with the orbifold area of the signature."""


# ---------------------------------------------------------------------------
# words

Word = tuple  # of (letter, exponent); letter is a generator index or "T"


def _word_mul(u: Word, v: Word) -> Word:
    out = list(u)
    for letter, e in v:
        if out and out[-1][0] == letter:
            e2 = out[-1][1] + e
            out.pop()
            if e2:
                out.append((letter, e2))
        elif e:
            out.append((letter, e))
    return tuple(out)


def _word_inv(u: Word) -> Word:
    return tuple((letter, -e) for letter, e in reversed(u))


def format_word(u: Word) -> str:
    if not u:
        return "1"
    parts = []
    for letter, e in u:
        name = "T" if letter == "T" else f"g{letter + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# result types

@dataclass(frozen=True)
class Signature:
    """Genus, cone orders and cusp count of a finite-area quotient orbifold."""

    genus: int
    cone_orders: tuple = ()
    cusps: int = 0

    def __post_init__(self):
        object.__setattr__(self, "cone_orders", tuple(sorted(self.cone_orders)))
        if any(n < 2 for n in self.cone_orders):
            raise ValueError("cone orders must be >= 2")

    @property
    def orbifold_euler(self) -> Fraction:
        return (2 - 2 * self.genus - self.cusps
                - sum(Fraction(n - 1, n) for n in self.cone_orders))

    @property
    def area_over_2pi(self) -> Fraction:
        return -self.orbifold_euler

    def area(self):
        return 2 * mp.pi * to_mpf(self.area_over_2pi)

    @property
    def is_hyperbolic(self) -> bool:
        return self.area_over_2pi > 0

    @classmethod
    def parse(cls, text: str) -> Signature:
        """Parse ``"g; n1, n2, ...; m"`` (the middle field may be empty)."""
        parts = [p.strip() for p in text.strip().strip("()").split(";")]
        if len(parts) != 3:
            raise ValueError(f"signature needs three ';'-separated fields: {text!r}")
        cones = tuple(int(t) for t in parts[1].replace("-", "").split(",") if t.strip())
        return cls(int(parts[0]), cones, int(parts[2]))

    def __str__(self):
        cones = ", ".join(map(str, self.cone_orders)) or "-"
        return f"({self.genus}; {cones}; {self.cusps})"


@dataclass(frozen=True)
class Side:
    index: int
    geodesic: object          # VerticalLine or Semicircle
    start: object             # HPoint or INF, in boundary order
    end: object
    pairing: MoebiusMap       # maps this side onto sides[target], reversing it
    target: int
    word: Word = ()
    start_vertex: int = -1
    end_vertex: int = -1

    @property
    def is_vertical(self) -> bool:
        return isinstance(self.geodesic, VerticalLine)

    @property
    def self_paired(self) -> bool:
        return self.target == self.index


@dataclass(frozen=True)
class Vertex:
    point: object             # HPoint or INF
    angle: object             # mpf
    angle_over_pi: Fraction | None
    midpoint: bool = False    # fixed point splitting a self-paired arc

    @property
    def ideal(self) -> bool:
        return self.point is INF or self.point.is_ideal


@dataclass(frozen=True)
class VertexCycle:
    members: tuple            # vertex indices
    points: tuple
    angle_sum: object
    order: int | None         # cone order s; None for ideal cycles
    transformation: MoebiusMap

    @property
    def ideal(self) -> bool:
        return self.order is None


@dataclass(frozen=True)
class FundamentalDomain:
    kind: str                 # "ford", "dirichlet" or "doubled"
    left: object
    width: object
    translation: MoebiusMap
    sides: tuple              # self-paired arcs appear as two halves
    vertices: tuple
    cycles: tuple
    generators: tuple = ()
    center: object = None
    depth: int | None = None
    translation_word: Word = ()

    @property
    def right(self):
        return self.left + self.width

    @property
    def axis(self):
        return self.left + self.width / 2

    @property
    def strip(self):
        return (self.left, self.right)

    @property
    def finite_vertices(self):
        return [v for v in self.vertices if not v.ideal]

    @property
    def ideal_vertices(self):
        return [v.point for v in self.vertices if v.ideal]

    @property
    def arcs(self):
        return [s for s in self.sides if not s.is_vertical]

    @property
    def is_exact(self) -> bool:
        return en.is_exact(self.left) and en.is_exact(self.width)

    def pairings(self):
        """Side pairing maps, one per pair of geometric sides."""
        seen, out = set(), []
        for i, s in enumerate(self.sides):
            if i in seen:
                continue
            seen.update((i, s.target))
            out.append(s.pairing)
        return out


# ---------------------------------------------------------------------------
# small geometric helpers

def _x_of(p):
    return p.x


def _strip_floor(x, left, width) -> int:
    t = (x - left) / width
    if en.is_exact(t):
        return en.lift(t).floor()
    return int(mp.floor(t + ANGLE_TOL))


def _is_integer(x):
    """Return the integer value of ``x`` or ``None``."""
    if en.is_exact(x):
        q = en.lift(x)
        return int(q.a) if q.is_integer() else None
    r = int(mp.nint(x))
    return r if abs(x - r) <= en.EPS else None


def _unit_tangent(geo, p: HPoint, toward_right: bool):
    """Unit tangent at ``p`` pointing along ``geo`` into the side's interior."""
    if isinstance(geo, VerticalLine):
        return (mp.zero, mp.one)
    y = mp.sqrt(max(to_mpf(p.y2), mp.zero))
    dx = to_mpf(p.x) - to_mpf(geo.center)
    r = mp.sqrt(to_mpf(geo.radius_sq))
    if toward_right:
        return (y / r, -dx / r)
    return (-y / r, dx / r)


def _angle_between(t1, t2):
    dot = t1[0] * t2[0] + t1[1] * t2[1]
    cross = t1[0] * t2[1] - t1[1] * t2[0]
    return mp.atan2(abs(cross), dot)


def recognize_pi_multiple(angle, limit: int = ANGLE_DENOMINATOR_LIMIT):
    """Return ``q`` with ``angle == q*pi`` (denominator <= limit), else ``None``."""
    ratio = angle / mp.pi
    q = Fraction(str(mp.nstr(ratio, 40))).limit_denominator(limit)
    if abs(ratio - to_mpf(q)) <= ANGLE_TOL:
        return q
    return None


def _fixed_point_of_involution(g: MoebiusMap) -> HPoint:
    a, b, c, d = g.entries
    det = a * d - b * c
    return HPoint((a - d) / (2 * c), (4 * det - (a + d) ** 2) / (4 * c * c))


# ---------------------------------------------------------------------------
# enumeration

def _as_maps(gens) -> list:
    out = []
    for g in gens:
        if isinstance(g, MoebiusMap):
            out.append(g)
        else:
            (a, b), (c, d) = g
            out.append(MoebiusMap(a, b, c, d))
    return out


def _letters(gens):
    letters = []
    for i, g in enumerate(gens):
        letters.append((g, ((i, 1),)))
        inv = g.inverse()
        if inv != g:
            letters.append((inv, ((i, -1),)))
    return letters


def find_translation(gens, search_length: int = 2):
    """Locate the generator ``z -> z + w`` of the stabiliser of infinity.

    Searches words of length ``<= search_length`` in the generators.  Returns
    ``(T, word)``.
    """
    gens = _as_maps(gens)
    letters = _letters(gens)
    frontier = [(MoebiusMap.identity(), ())]
    found = []
    seen = set()
    for _ in range(search_length):
        nxt = []
        for g, w in frontier:
            for s, sw in letters:
                h = g * s
                key = h.key() if h.is_exact else None
                if key is not None:
                    if key in seen:
                        continue
                    seen.add(key)
                nxt.append((h, _word_mul(w, sw)))
                if sign(h.c) == 0 and not h.is_identity():
                    if sign(h.a - h.d) != 0:
                        raise NoParabolicAtInfinity(
                            "a hyperbolic element fixes infinity; group is not zonal")
                    found.append((h, _word_mul(w, sw)))
        frontier = nxt
    if not found:
        raise NoParabolicAtInfinity("no parabolic at infinity among short words")
    # normalised translations have a = d = 1, so b is the translation length
    found.sort(key=lambda t: abs(to_mpf(t[0].b)))
    t, word = found[0]
    if sign(t.b) < 0:
        t, word = t.inverse(), _word_inv(word)
    for h, _ in found[1:]:
        if _is_integer(h.b / t.b) is None:
            raise NoParabolicAtInfinity(
                "translations found are not multiples of a single translation")
    return t, word


@dataclass
class _Enumerated:
    element: MoebiusMap
    word: Word


def _canonical(g: MoebiusMap, word: Word, T: MoebiusMap, left, width):
    """Representative of the double coset <T> g <T> with both isometric
    circle centres in ``[left, left + width)``."""
    k = _strip_floor(-g.d / g.c, left, width)
    j = -_strip_floor(g.a / g.c, left, width)
    h = g
    w = word
    if k:
        h = h * T ** k
        w = _word_mul(w, (("T", k),))
    if j:
        h = T ** j * h
        w = _word_mul((("T", j),), w)
    return h, w


def enumerate_double_cosets(gens, depth: int, T: MoebiusMap, left, width,
                            shifts: int = 1) -> list:
    """Canonical representatives of ``<T> g <T>`` for ``g`` a word of at most
    ``depth`` non-translation letters.

    Words are built as ``h * T**k * s`` with ``|k| <= shifts``.
    """
    gens = _as_maps(gens)
    letters = _letters(gens)
    seen = {}
    frontier = []
    for s, w in letters:
        if sign(s.c) == 0:
            continue
        h, hw = _canonical(s, w, T, left, width)
        key = h.key() if h.is_exact else None
        if key is not None and key in seen:
            continue
        item = _Enumerated(h, hw)
        if key is not None:
            seen[key] = item
        frontier.append(item)
    result = list(frontier)
    tpows = {k: T ** k for k in range(-shifts, shifts + 1)}
    for _ in range(depth - 1):
        nxt = []
        for item in frontier:
            for k, tk in tpows.items():
                base = item.element * tk if k else item.element
                bw = _word_mul(item.word, (("T", k),)) if k else item.word
                for s, sw in letters:
                    g = base * s
                    if sign(g.c) == 0:
                        continue
                    h, hw = _canonical(g, _word_mul(bw, sw), T, left, width)
                    key = h.key() if h.is_exact else None
                    if key is not None:
                        if key in seen:
                            continue
                    new = _Enumerated(h, hw)
                    if key is not None:
                        seen[key] = new
                    nxt.append(new)
        result.extend(nxt)
        frontier = nxt
    return result


# ---------------------------------------------------------------------------
# upper envelope of semicircles over a strip

@dataclass
class _Circle:
    geo: Semicircle
    payload: object = None

    @property
    def c(self):
        return self.geo.center

    @property
    def r2(self):
        return self.geo.radius_sq

    def f(self, x):
        dx = x - self.geo.center
        return self.geo.radius_sq - dx * dx


def _exactly_inside(inner: _Circle, outer: _Circle) -> bool:
    delta = inner.c - outer.c
    d2 = delta * delta
    rhs = outer.r2 - inner.r2 - d2
    if sign(rhs) < 0:
        return False
    return sign(rhs * rhs - 4 * d2 * inner.r2) >= 0


def prune_contained(circles: list) -> list:
    """Drop circles lying inside another one (float prefilter, exact check)."""
    if len(circles) < 2:
        return circles
    centers = np.array([float(to_mpf(c.c)) for c in circles])
    radii = np.array([float(mp.sqrt(to_mpf(c.r2))) for c in circles])
    scale = max(1.0, float(np.max(np.abs(centers))))
    mask = _kernels.contained_mask(centers, radii, margin=1e-12 * scale)
    if not mask.any():
        return circles
    order = np.argsort(-radii)
    keep = []
    for i, circ in enumerate(circles):
        if not mask[i]:
            keep.append(circ)
            continue
        inside = False
        for j in order:
            if j == i or radii[j] < radii[i]:
                continue
            if _exactly_inside(circ, circles[j]):
                inside = True
                break
        if not inside:
            keep.append(circ)
    return keep


def upper_envelope(circles: Sequence[_Circle], left, right, depth=None):
    """Boundary of ``{left <= x <= right} minus the union of the discs``.

    Returns ``(arcs, points)`` where ``arcs[i]`` is the circle carrying the
    i-th arc from left to right and ``points`` the ``len(arcs) + 1`` breakpoints
    (the first at ``x = left``, the last at ``x = right``).  Raises
    :class:`UnverifiedDomain` if part of the real segment is uncovered.
    """
    if not circles:
        raise UnverifiedDomain(depth, "no isometric circles meet the strip")

    def top_at(x, pool):
        best, bestv = None, None
        for circ in pool:
            v = circ.f(x)
            if best is None:
                best, bestv = circ, v
                continue
            s = sign(v - bestv)
            if s > 0 or (s == 0 and sign(circ.c - best.c) > 0):
                best, bestv = circ, v
        return best, bestv

    cur, val = top_at(left, circles)
    if sign(val) < 0:
        raise UnverifiedDomain(depth, "strip edge not covered by any circle")
    x = en.lift(left) if en.is_exact(left) else left
    points = [HPoint(left, val)]
    arcs = []
    for _ in range(4 * len(circles) + 4):
        nxt, nx = None, None
        for circ in circles:
            dc = circ.c - cur.c
            if sign(dc) <= 0:
                continue
            xs = (cur.c + circ.c) / 2 + (cur.r2 - circ.r2) / (2 * dc)
            if sign(xs - x) <= 0:
                continue
            if nx is None:
                nxt, nx = circ, xs
                continue
            s = sign(xs - nx)
            if s < 0 or (s == 0 and sign(circ.c - nxt.c) > 0):
                nxt, nx = circ, xs
        if nx is None or sign(nx - right) >= 0:
            y2 = cur.f(right)
            if sign(y2) < 0:
                raise UnverifiedDomain(depth, f"gap below the envelope near x={float(to_mpf(right)):.6g}")
            arcs.append(cur)
            points.append(HPoint(right, y2))
            return arcs, points
        y2 = cur.f(nx)
        if sign(y2) < 0:
            raise UnverifiedDomain(depth, f"gap below the envelope near x={float(to_mpf(nx)):.6g}")
        arcs.append(cur)
        points.append(HPoint(nx, y2))
        cur, x = nxt, nx
    raise RuntimeError("envelope sweep did not terminate")


# ---------------------------------------------------------------------------
# assembling a polygon and checking the Poincare conditions

def _shift_to_match(g, side: Side, other: Side, width):
    """Return ``k`` with ``T**k * g`` carrying ``side`` onto ``other`` reversed."""
    p, q = g(side.start), g(side.end)
    ends = (other.end, other.start)
    k = None
    for img, want in zip((p, q), ends):
        if (img is INF) != (want is INF):
            return None
        if img is INF:
            continue
        if sign(img.y2 - want.y2) != 0:
            return None
        kk = _is_integer((want.x - img.x) / width)
        if kk is None or (k is not None and kk != k):
            return None
        k = kk
    return 0 if k is None else k


def _match_pairing(i, sides, candidates, T, width):
    side = sides[i]
    for g, word in candidates:
        for j, other in enumerate(sides):
            if other.is_vertical != side.is_vertical:
                continue
            k = _shift_to_match(g, side, other, width)
            if k is None:
                continue
            if k:
                g = T ** k * g
                word = _word_mul((("T", k),), word)
            return j, g, word
    return None


def assemble(kind, left, width, translation, arcs, points, candidates,
             *, generators=(), center=None, depth=None, translation_word=(),
             verify_generators=True):
    """Build and verify a polygon from the envelope of the strip.

    ``arcs`` are the semicircles carrying the bottom sides from left to right,
    ``points`` the breakpoints (see :func:`upper_envelope`), and
    ``candidates(i)`` lists ``(map, word)`` pairs to try as the pairing of the
    ``i``-th arc.  Raises :class:`UnverifiedDomain` when a condition fails.
    """
    right = left + width
    n = len(arcs)
    raw = [Side(0, VerticalLine(left), INF, points[0], translation, n + 1, translation_word)]
    for i, geo in enumerate(arcs):
        raw.append(Side(i + 1, geo, points[i], points[i + 1], None, -1))
    raw.append(Side(n + 1, VerticalLine(right), points[n], INF,
                    translation.inverse(), 0, _word_inv(translation_word)))
    if sign(points[0].y2 - points[n].y2) != 0:
        raise UnverifiedDomain(depth, "strip edges are not paired by the translation")

    sides = list(raw)
    for i in range(1, n + 1):
        hit = _match_pairing(i, raw, candidates(i - 1), translation, width)
        if hit is None:
            raise UnverifiedDomain(depth, f"side {i} has no partner among enumerated elements")
        j, g, word = hit
        sides[i] = Side(i, raw[i].geodesic, raw[i].start, raw[i].end, g, j, word)
    for s in sides:
        back = sides[s.target]
        if back.target != s.index or not (back.pairing * s.pairing).is_identity():
            raise UnverifiedDomain(depth, f"side pairing of side {s.index} is not an involution on sides")

    # vertices in boundary order, midpoints of self-paired sides inserted
    vertices_pts, midpoint_of = [], []
    edges_raw = []  # (side, start_vertex, end_vertex)
    vertices_pts.append(points[0])
    midpoint_of.append(False)
    for i in range(1, n + 1):
        s = sides[i]
        a = len(vertices_pts) - 1
        if s.self_paired:
            m = _fixed_point_of_involution(s.pairing)
            vertices_pts.append(m)
            midpoint_of.append(True)
            edges_raw.append((i, a, a + 1))
            a += 1
        vertices_pts.append(points[i])
        midpoint_of.append(False)
        edges_raw.append((i, a, a + 1))
    inf_index = len(vertices_pts)
    vertices_pts.append(INF)
    midpoint_of.append(False)
    edges_raw.insert(0, (0, inf_index, 0))
    edges_raw.append((n + 1, inf_index - 1, inf_index))

    first_edge = {}
    for e, (si, _, _) in enumerate(edges_raw):
        first_edge.setdefault(si, e)
    edges = []
    for e, (si, a, b) in enumerate(edges_raw):
        s = sides[si]
        if s.self_paired:
            target = e + 1 if first_edge[si] == e else e - 1
        else:
            target = first_edge[s.target]
        edges.append(Side(e, s.geodesic, vertices_pts[a], vertices_pts[b], s.pairing,
                          target, s.word, a, b))

    in_edge = {e.end_vertex: k for k, e in enumerate(edges)}
    out_edge = {e.start_vertex: k for k, e in enumerate(edges)}

    vertices = []
    for v, p in enumerate(vertices_pts):
        if p is INF or p.is_ideal:
            ang = mp.zero
        else:
            g1 = edges[in_edge[v]].geodesic
            g2 = edges[out_edge[v]].geodesic
            ang = _angle_between(_unit_tangent(g1, p, False), _unit_tangent(g2, p, True))
        vertices.append(Vertex(p, ang, recognize_pi_multiple(ang), midpoint_of[v]))

    cycles = _vertex_cycles(vertices, edges, in_edge, out_edge, depth)
    dom = FundamentalDomain(kind, left, width, translation, tuple(edges), tuple(vertices),
                            tuple(cycles), tuple(generators), center, depth,
                            translation_word)
    signature(dom)  # raises on an inconsistent Euler characteristic
    if verify_generators:
        for k, g in enumerate(generators):
            if not reduce(g, dom).residual.is_identity():
                raise UnverifiedDomain(depth, f"generator g{k + 1} is not reached by the side pairings")
    return dom


def _vertex_cycles(vertices, edges, in_edge, out_edge, depth):
    seen = set()
    cycles = []
    for v0 in range(len(vertices)):
        if v0 in seen:
            continue
        state = (v0, out_edge[v0])
        members, acc = [], MoebiusMap.identity()
        for _ in range(2 * len(edges) + 2):
            v, e = state
            members.append(v)
            seen.add(v)
            edge = edges[e]
            partner = edges[edge.target]
            acc = edge.pairing * acc
            v2 = partner.end_vertex if v == edge.start_vertex else partner.start_vertex
            e2 = out_edge[v2] if in_edge[v2] == edge.target else in_edge[v2]
            state = (v2, e2)
            if state == (v0, out_edge[v0]):
                break
        else:
            raise UnverifiedDomain(depth, "vertex cycle did not close")
        pts = tuple(vertices[m].point for m in members)
        total = sum((vertices[m].angle for m in members), mp.zero)
        ideal = [vertices[m].ideal for m in members]
        if all(ideal):
            kind = classify(acc).kind
            if kind != "parabolic":
                raise UnverifiedDomain(depth, f"ideal cycle transformation is {kind}, not parabolic")
            cycles.append(VertexCycle(tuple(members), pts, total, None, acc))
            continue
        if any(ideal):
            raise UnverifiedDomain(depth, "cycle mixes ideal and finite vertices")
        s = int(mp.nint(2 * mp.pi / total))
        if s < 1 or abs(total - 2 * mp.pi / s) > ANGLE_TOL * len(members):
            raise UnverifiedDomain(depth, f"cycle angle sum {mp.nstr(total / mp.pi, 12)}*pi is not 2*pi/s")
        if not (acc ** s).is_identity():
            raise UnverifiedDomain(depth, f"cycle transformation does not have order {s}")
        cycles.append(VertexCycle(tuple(members), pts, total, s, acc))
    return cycles


# ---------------------------------------------------------------------------
# invariants of a verified domain

def vertex_cycles(dom: FundamentalDomain):
    return list(dom.cycles)


def area(dom: FundamentalDomain):
    """Hyperbolic area by Gauss-Bonnet for the polygon."""
    n = len(dom.vertices)
    return (n - 2) * mp.pi - sum((v.angle for v in dom.vertices), mp.zero)


def signature(dom: FundamentalDomain) -> Signature:
    euler = len(dom.cycles) - len(dom.sides) // 2 + 1
    if (2 - euler) % 2 or euler > 2:
        raise InconsistentDomain(f"Euler characteristic {euler} gives no integral genus")
    sig = Signature((2 - euler) // 2,
                    tuple(c.order for c in dom.cycles if c.order is not None and c.order > 1),
                    sum(1 for c in dom.cycles if c.ideal))
    if abs(area(dom) - sig.area()) > AREA_TOL:
        raise InconsistentDomain(
            f"Gauss-Bonnet area {mp.nstr(area(dom), 15)} disagrees with signature {sig}")
    return sig


def cusp_classes(dom: FundamentalDomain):
    """Ideal vertex cycles, each as a tuple of boundary points."""
    return [c.points for c in dom.cycles if c.ideal]


def elliptic_classes(dom: FundamentalDomain):
    return [(c.points, c.order) for c in dom.cycles if c.order is not None and c.order > 1]


# ---------------------------------------------------------------------------
# reduction to the domain

@dataclass(frozen=True)
class Reduction:
    residual: MoebiusMap      # h*g with h the accumulated pairing word
    word: tuple               # ((side index or "T", exponent), ...), applied left to right
    steps: int

    @property
    def in_group(self) -> bool:
        return self.residual.is_identity()


def base_point(dom: FundamentalDomain) -> HPoint:
    """A generic interior point of the domain used by :func:`reduce`."""
    rmax = max((s.geodesic.radius_sq for s in dom.arcs), key=to_mpf, default=en.lift(1))
    frac = Fraction(437, 1000)
    x = dom.left + dom.width * frac
    if not en.is_exact(rmax):
        return HPoint(x, to_mpf(rmax) * mp.mpf("2.617924"))
    return HPoint(x, en.lift(rmax) * Fraction(1618, 1000) ** 2)


def reduce(g, dom: FundamentalDomain, base: HPoint | None = None,
           max_steps: int = 10000) -> Reduction:
    """Pull ``g(base)`` back into the domain with side pairings.

    The residual is the identity exactly when ``g`` lies in the group
    generated by the side pairings.
    """
    if not isinstance(g, MoebiusMap):
        (a, b), (c, d) = g
        g = MoebiusMap(a, b, c, d)
    base = base or base_point(dom)
    z = g(base)
    if z is INF:
        raise ValueError("base point mapped to infinity")
    h = MoebiusMap.identity()
    word = []
    arcs = dom.arcs
    for step in range(max_steps):
        k = _strip_floor(z.x, dom.left, dom.width)
        if k:
            tk = dom.translation ** (-k)
            z, h = tk(z), tk * h
            word.append(("T", -k))
        best, depth_best = None, None
        for s in arcs:
            pen = -s.geodesic.power(z)
            if sign(pen) <= 0:
                continue
            if best is None or sign(pen - depth_best) > 0:
                best, depth_best = s, pen
        if best is None:
            return Reduction(h * g, tuple(word), step)
        z, h = best.pairing(z), best.pairing * h
        word.append((best.index, 1))
    raise RuntimeError(f"reduction did not finish in {max_steps} steps")


def contains(dom: FundamentalDomain, z) -> bool:
    """Whether ``z`` lies in the closed domain."""
    if z is INF:
        return True
    if sign(z.x - dom.left) < 0 or sign(z.x - dom.right) > 0:
        return False
    return all(sign(s.geodesic.power(z)) >= 0 for s in dom.arcs)


# ---------------------------------------------------------------------------
# constructions

def _require_exact(gens):
    for g in gens:
        if not g.is_exact:
            raise ValueError("generators must have exact entries")


def _strip_circles(items, left, width):
    """Translates of isometric circles meeting the strip, deduplicated."""
    right = left + width
    out = {}
    for item in items:
        g = item.element
        c0 = -g.d / g.c
        r2 = g.det / (g.c * g.c)
        for k in range(-2, 3):
            c = c0 + k * width
            gap_l, gap_r = left - c, c - right
            if (sign(gap_l) > 0 and sign(gap_l * gap_l - r2) >= 0) or \
               (sign(gap_r) > 0 and sign(gap_r * gap_r - r2) >= 0):
                continue
            key = (c, r2)
            if key not in out:
                out[key] = _Circle(Semicircle(c, r2), (item, -k))
    return list(out.values())


def ford_domain(gens, max_word_length: int = 4, *, left=None) -> FundamentalDomain:
    """Ford domain of the group generated by ``gens``.

    Word length counts letters other than the translation at infinity.
    Lengths ``1, 2, ...`` are tried in turn and the first polygon passing the
    Poincare conditions is returned.
    """
    gens = _as_maps(gens)
    _require_exact(gens)
    T, tword = find_translation(gens)
    width = T.b
    lefts = [-width / 2] + _centred_strips(gens, width) if left is None else [en.lift(left)]
    reason = "no elements"
    for depth in range(1, max_word_length + 1):
        for start in lefts:
            try:
                return _ford_at_depth(gens, T, tword, start, width, depth)
            except UnverifiedDomain as exc:
                reason = exc.reason
    raise UnverifiedDomain(max_word_length, reason)


def _centred_strips(gens, width, limit: int = 3) -> list:
    """Strips centred on the largest generator isometric circles.

    The default strip can cut a self-paired circle off-centre; these are the
    fallbacks tried when it does not verify.
    """
    circles = []
    for s, _ in _letters(gens):
        if sign(s.c) != 0:
            circles.append((s.det / (s.c * s.c), -s.d / s.c))
    circles.sort(key=lambda rc: -to_mpf(rc[0]))
    out = []
    for _, c in circles:
        start = c - _strip_floor(c, 0, width) * width - width / 2
        if sign(start + width / 2) != 0 and start not in out:
            out.append(start)
        if len(out) == limit:
            break
    return out


def _ford_at_depth(gens, T, tword, left, width, depth):
    items = enumerate_double_cosets(gens, depth, T, left, width)
    circles = prune_contained(_strip_circles(items, left, width))
    arcs, points = upper_envelope(circles, left, left + width, depth)

    def candidates(i):
        item, k = arcs[i].payload
        g = item.element * T ** k if k else item.element
        word = _word_mul(item.word, (("T", k),)) if k else item.word
        return [(g, word)]

    dom = assemble("ford", left, width, T, [a.geo for a in arcs], points, candidates,
                   generators=gens, depth=depth, translation_word=tword)
    for side in dom.arcs:
        if sign(side.geodesic.radius_sq - width * width) > 0:
            raise InconsistentDomain("isometric circle wider than the cusp width")
    for cyc in dom.cycles:
        if not cyc.ideal and any(sign(p.y2 - cyc.points[0].y2) for p in cyc.points):
            raise InconsistentDomain("finite cycle of a Ford domain at different heights")
    return dom


def bisector(z0: HPoint, g: MoebiusMap):
    """Perpendicular bisector of ``z0`` and ``g(z0)`` with the side facing ``z0``.

    Returns ``(geodesic, center_inside)``; ``center_inside`` is true when
    ``z0`` lies inside the returned semicircle.
    """
    a, b, c, d = g.entries
    nrm = (c * z0.x + d) ** 2 + c * c * z0.y2
    lam = g.det / nrm
    w = g(z0)
    if sign(lam - 1) == 0:
        if sign(w.x - z0.x) == 0:
            raise CenterIsFixedPoint(f"{z0} is fixed by {g}")
        return VerticalLine((z0.x + w.x) / 2), False
    cc = (lam * z0.x - w.x) / (lam - 1)
    r2 = cc * cc - (lam * (z0.x ** 2 + z0.y2) - (w.x ** 2 + w.y2)) / (lam - 1)
    return Semicircle(cc, r2), sign(lam - 1) > 0


def dirichlet_domain(gens, center, max_word_length: int = 4) -> FundamentalDomain:
    """Dirichlet domain centred at ``center``.

    The centre must lie strictly above every isometric circle, which makes
    the domain a subset of the strip of width ``w`` centred at ``Re center``.
    """
    gens = _as_maps(gens)
    _require_exact(gens)
    if not isinstance(center, HPoint):
        x, y = center
        center = HPoint(x, en.lift(y) * en.lift(y))
    if not (en.is_exact(center.x) and en.is_exact(center.y2)):
        raise ValueError("the centre must have exact coordinates")
    if center.is_ideal:
        raise ValueError("the centre must be an interior point")
    T, tword = find_translation(gens)
    width = T.b
    left = center.x - width / 2
    for g in gens:
        if g(center) == center and not g.is_identity():
            raise CenterIsFixedPoint(f"{center} is fixed by a generator")
    reason = "no elements"
    for depth in range(1, max_word_length + 1):
        try:
            return _dirichlet_at_depth(gens, center, T, tword, left, width, depth)
        except UnverifiedDomain as exc:
            reason = exc.reason
    raise UnverifiedDomain(max_word_length, reason)


def _dirichlet_at_depth(gens, z0, T, tword, left, width, depth):
    items = enumerate_double_cosets(gens, depth, T, left, width)
    right = left + width
    tp = {k: T ** k for k in range(-2, 3)}
    out = {}
    for item in items:
        for j in range(-2, 3):
            for k in range(-2, 3):
                alpha = tp[j] * item.element * tp[k]
                word = _word_mul(_word_mul((("T", j),) if j else (), item.word),
                                 (("T", k),) if k else ())
                geo, inside = bisector(z0, alpha)
                if inside or isinstance(geo, VerticalLine):
                    raise ValueError("the Dirichlet centre must lie strictly above every isometric circle")
                c, r2 = geo.center, geo.radius_sq
                gap_l, gap_r = left - c, c - right
                if (sign(gap_l) > 0 and sign(gap_l * gap_l - r2) >= 0) or \
                   (sign(gap_r) > 0 and sign(gap_r * gap_r - r2) >= 0):
                    continue
                key = (c, r2)
                if key not in out:
                    out[key] = _Circle(geo, (alpha.inverse(), _word_inv(word)))
    circles = prune_contained(list(out.values()))
    arcs, points = upper_envelope(circles, left, right, depth)

    def candidates(i):
        return [arcs[i].payload]

    return assemble("dirichlet", left, width, T, [a.geo for a in arcs], points, candidates,
                    generators=gens, center=z0, depth=depth, translation_word=tword)
