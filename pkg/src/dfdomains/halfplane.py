"""Isometries of the upper half-plane.

Points of H^2 are stored as ``HPoint(x, y2)`` where ``y2`` is the square of the
imaginary part.  Moebius and anti-Moebius maps send such points to points of
the same kind with coordinates in the same field, so vertices of Ford and
Dirichlet domains (which generally need one extra square root for ``y``) stay
exact.  ``y2 == 0`` marks a point of the real line; :data:`INF` is the point at
infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactnum as en
from .exactnum import QuadRat, mp, sign, to_mpf


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


@dataclass(frozen=True, eq=False)
class HPoint:
    """Point ``x + i*sqrt(y2)`` of the closed upper half-plane."""

    x: object
    y2: object

    def __post_init__(self):
        object.__setattr__(self, "x", en.lift(self.x))
        object.__setattr__(self, "y2", en.lift(self.y2))
        if sign(self.y2) < 0:
            raise ValueError("point below the real axis")

    @property
    def is_ideal(self) -> bool:
        return sign(self.y2) == 0

    @property
    def y(self):
        return en.sqrt(self.y2)

    def to_complex(self):
        return mp.mpc(to_mpf(self.x), en.sqrt(to_mpf(self.y2)))

    def __eq__(self, other):
        if not isinstance(other, HPoint):
            return NotImplemented
        return en.eq(self.x, other.x) and en.eq(self.y2, other.y2)

    def __hash__(self):
        if en.is_exact(self.x) and en.is_exact(self.y2):
            return hash((self.x, self.y2))
        raise TypeError("floating points are not hashable")

    def __repr__(self):
        return f"HPoint({self.x}, y2={self.y2})"


def point(x, y=None, *, y2=None) -> HPoint:
    """Build a point from ``x`` and either ``y`` or ``y2``."""
    if y2 is None:
        y = en.lift(y if y is not None else 0)
        y2 = y * y
    return HPoint(x, y2)


def real_point(x) -> HPoint:
    return HPoint(x, 0)


def points_equal(p, q) -> bool:
    if p is INF or q is INF:
        return p is q
    return p == q


# ---------------------------------------------------------------------------
# maps

def _normalize(entries, det_sign: int):
    a, b, c, d = entries
    det = a * d - b * c
    s = sign(det)
    if s == 0:
        raise ValueError("singular matrix")
    if s != det_sign:
        raise ValueError("determinant has the wrong sign for this kind of map")
    if all(en.is_exact(e) for e in entries):
        root = en.lift(det * det_sign).sqrt()
        # det not a square in the field: keep the projective class as given
        scaled = entries if root is None else tuple(e / root for e in entries)
    else:
        entries = tuple(to_mpf(e) for e in entries)
        root = mp.sqrt(to_mpf(det) * det_sign)
        scaled = tuple(e / root for e in entries)
    # canonical sign: first nonzero of (c, d, a, b) positive
    sa, sb, sc, sd = scaled
    for e in (sc, sd, sa, sb):
        s = sign(e)
        if s != 0:
            if s < 0:
                scaled = tuple(-e for e in scaled)
            break
    return tuple(en.lift(e) for e in scaled)


class _Map:
    __slots__ = ("a", "b", "c", "d")
    orientation = +1

    def __init__(self, a, b, c, d, *, normalize: bool = True):
        entries = tuple(en.lift(e) for e in (a, b, c, d))
        if not all(en.is_exact(e) for e in entries):
            entries = tuple(to_mpf(e) for e in entries)
        if normalize:
            entries = _normalize(entries, self.orientation)
        self.a, self.b, self.c, self.d = entries

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def is_exact(self) -> bool:
        return all(en.is_exact(e) for e in self.entries)

    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    # group operations -------------------------------------------------
    def __mul__(self, other: _Map) -> _Map:
        if not isinstance(other, _Map):
            return NotImplemented
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        if not (self.is_exact and other.is_exact):
            a, b, c, d, e, f, g, h = (to_mpf(x) for x in (a, b, c, d, e, f, g, h))
        cls = MoebiusMap if self.orientation * other.orientation > 0 else AntiMoebiusMap
        return cls(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self):
        return type(self)(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = MoebiusMap.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, _Map):
            return NotImplemented
        if self.orientation != other.orientation:
            return False
        mine, theirs = self.entries, other.entries
        for i in range(4):
            for j in range(i + 1, 4):
                if sign(mine[i] * theirs[j] - mine[j] * theirs[i]) != 0:
                    return False
        return True

    def key(self):
        """Hashable projective key (exact maps only)."""
        if not self.is_exact:
            raise TypeError("floating maps have no exact key")
        for e in (self.c, self.d, self.a, self.b):
            if e:
                pivot = e
                break
        return (self.orientation,) + tuple(x / pivot for x in self.entries)

    def __hash__(self):
        return hash(self.key())

    # action --------------------------------------------------------------
    def apply(self, z):
        """Image of ``z`` (an :class:`HPoint`, :data:`INF` or a complex number)."""
        a, b, c, d = self.entries
        if z is INF:
            if sign(c) == 0:
                return INF
            return HPoint(a / c, 0)
        if isinstance(z, HPoint):
            x, y2 = z.x, z.y2
            if not (self.is_exact and en.is_exact(x) and en.is_exact(y2)):
                a, b, c, d = (to_mpf(e) for e in (a, b, c, d))
                x, y2 = to_mpf(x), to_mpf(y2)
            den = (c * x + d) ** 2 + c * c * y2
            if sign(den) == 0:
                return INF
            det = a * d - b * c
            xn = (a * c * (x * x + y2) + (a * d + b * c) * x + b * d) / den
            y2n = det * det * y2 / (den * den)
            return HPoint(xn, y2n)
        w = mp.mpc(z)
        if self.orientation < 0:
            w = mp.conj(w)
        a, b, c, d = (to_mpf(e) for e in (a, b, c, d))
        return (a * w + b) / (c * w + d)

    __call__ = apply

    def is_identity(self) -> bool:
        return (sign(self.b) == 0 and sign(self.c) == 0
                and sign(self.a - self.d) == 0 and self.orientation > 0)

    @property
    def trace(self):
        return self.a + self.d

    def __repr__(self):
        name = type(self).__name__
        return f"{name}(({self.a}, {self.b}), ({self.c}, {self.d}))"


class MoebiusMap(_Map):
    """Orientation-preserving isometry ``z -> (az+b)/(cz+d)``, stored with det 1."""

    orientation = +1

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, w):
        return cls(1, w, 0, 1)


class AntiMoebiusMap(_Map):
    """Orientation-reversing isometry ``z -> (a conj(z) + b)/(c conj(z) + d)``.

    Stored with det -1 when the field allows it, so that the upper half-plane
    is preserved.
    """

    orientation = -1


def compose(g, h):
    return g * h


def invert(g):
    return g.inverse()


def apply(g, z):
    return g.apply(z)


# ---------------------------------------------------------------------------
# geodesics

@dataclass(frozen=True, eq=False)
class VerticalLine:
    x: object

    def __post_init__(self):
        object.__setattr__(self, "x", en.lift(self.x))

    def __eq__(self, other):
        return isinstance(other, VerticalLine) and en.eq(self.x, other.x)

    def __hash__(self):
        return hash(("v", self.x))

    def contains(self, p) -> bool:
        return p is INF or en.eq(p.x, self.x)


@dataclass(frozen=True, eq=False)
class Semicircle:
    """Geodesic ``|z - center|^2 = radius_sq`` with real center."""

    center: object
    radius_sq: object

    def __post_init__(self):
        object.__setattr__(self, "center", en.lift(self.center))
        object.__setattr__(self, "radius_sq", en.lift(self.radius_sq))
        if sign(self.radius_sq) <= 0:
            raise ValueError("radius must be positive")

    @property
    def radius(self):
        return en.sqrt(self.radius_sq)

    def __eq__(self, other):
        return (isinstance(other, Semicircle) and en.eq(self.center, other.center)
                and en.eq(self.radius_sq, other.radius_sq))

    def __hash__(self):
        return hash(("s", self.center, self.radius_sq))

    def power(self, p: HPoint):
        """Positive outside, zero on, negative inside."""
        dx = p.x - self.center
        return dx * dx + p.y2 - self.radius_sq

    def contains(self, p) -> bool:
        return p is not INF and sign(self.power(p)) == 0

    def y2_at(self, x):
        dx = x - self.center
        return self.radius_sq - dx * dx


Geodesic = VerticalLine | Semicircle


@dataclass(frozen=True)
class IsometricCircle:
    center: object
    radius: object

    @property
    def radius_sq(self):
        return self.radius * self.radius

    def as_geodesic(self) -> Semicircle:
        return Semicircle(self.center, self.radius_sq)


def isometric_circle(g: MoebiusMap) -> IsometricCircle:
    if sign(g.c) == 0:
        raise ValueError("parabolic-or-identity at infinity, no isometric circle")
    # for a normalized map |c| is the inverse radius
    r = 1 / abs(g.c) if en.is_exact(g.c) else 1 / abs(to_mpf(g.c))
    if not _is_unit_det(g):
        r = en.sqrt(g.det) / abs(g.c)
    return IsometricCircle(-g.d / g.c, r)


def _is_unit_det(g) -> bool:
    return en.eq(g.det, 1)


def reflection_in(geo) -> AntiMoebiusMap:
    if isinstance(geo, VerticalLine):
        return AntiMoebiusMap(-1, 2 * geo.x, 0, 1)
    c, r2 = geo.center, geo.radius_sq
    return AntiMoebiusMap(c, r2 - c * c, 1, -c)


# ---------------------------------------------------------------------------
# classification and metric

@dataclass(frozen=True)
class Classification:
    kind: str  # identity | elliptic | parabolic | hyperbolic
    trace: object
    order: int | None = None

    def __str__(self):
        if self.kind == "elliptic":
            return f"elliptic({self.order if self.order else 'unknown'})"
        return self.kind


# trace^2 of rotations of order k by angle 2*pi/k
_ELLIPTIC_TRACE_SQ = {Fraction(0): 2, Fraction(1): 3, Fraction(2): 4, Fraction(3): 6}


def classify(g: MoebiusMap) -> Classification:
    if g.orientation < 0:
        raise ValueError("classification is for orientation-preserving maps")
    t = g.trace
    if not _is_unit_det(g):
        t2 = t * t / g.det
    else:
        t2 = t * t
    if g.is_identity():
        return Classification("identity", t)
    s = sign(t2 - 4)
    if s > 0:
        return Classification("hyperbolic", t)
    if s == 0:
        return Classification("parabolic", t)
    order = None
    if en.is_exact(t2):
        q = en.lift(t2)
        if q.is_rational:
            order = _ELLIPTIC_TRACE_SQ.get(q.a)
    else:
        for tsq, k in _ELLIPTIC_TRACE_SQ.items():
            if en.eq(t2, en.to_mpf(tsq)):
                order = k
    return Classification("elliptic", t, order)


def distance(z, w):
    """Hyperbolic distance between two points of the open upper half-plane."""
    if z is INF or w is INF or z.is_ideal or w.is_ideal:
        raise ValueError("distance is defined for interior points only")
    dx = to_mpf(z.x) - to_mpf(w.x)
    y1 = mp.sqrt(to_mpf(z.y2))
    y2 = mp.sqrt(to_mpf(w.y2))
    arg = 1 + (dx * dx + (y1 - y2) ** 2) / (2 * y1 * y2)
    return mp.acosh(arg)
