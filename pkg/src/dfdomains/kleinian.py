"""Upper half-space analogues: isometric spheres and the mirror criterion.

Complex numbers are pairs of :class:`~dfdomains.exactnum.QuadRat` (real and
imaginary part in one real quadratic field), enough for matrices with
entries in ``Q(i, sqrt(d))``.  An element ``g`` with ``c != 0`` factors as
``g = sigma_R o sigma_S`` where ``sigma_S`` is the reflection in its isometric
sphere and ``sigma_R`` is a Euclidean isometry; when ``sigma_R`` is a
reflection its mirror is a vertical plane, stored here as its trace line in
the complex plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import exactnum as en
from .exactnum import QuadRat, mp, parse_quadrat, sign, to_mpf


class CNum:
    """``re + i*im`` with exact real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = en.lift(re)
        self.im = en.lift(im)

    @classmethod
    def of(cls, x) -> CNum:
        if isinstance(x, CNum):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x, 0)

    def __add__(self, other):
        o = CNum.of(other)
        return CNum(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return CNum(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-CNum.of(other))

    def __rsub__(self, other):
        return CNum.of(other) - self

    def __mul__(self, other):
        o = CNum.of(other)
        return CNum(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> CNum:
        return CNum(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = CNum.of(other)
        n = o.abs2()
        if sign(n) == 0:
            raise ZeroDivisionError("division by zero")
        p = self * o.conj()
        return CNum(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return CNum.of(other) / self

    def is_zero(self) -> bool:
        return sign(self.re) == 0 and sign(self.im) == 0

    def is_real(self) -> bool:
        return sign(self.im) == 0

    def __eq__(self, other):
        if not isinstance(other, (CNum, int, QuadRat)):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.re, self.im))

    def to_complex(self):
        return complex(float(to_mpf(self.re)), float(to_mpf(self.im)))

    def __repr__(self):
        return f"CNum({self.re}, {self.im})"

    def __str__(self):
        if self.is_real():
            return str(self.re)
        return f"({self.re})+({self.im})*i"


I = CNum(0, 1)


def parse_complex(obj, d: int | None = None) -> CNum:
    """``{"re": ..., "im": ...}`` with QuadRat strings, or a bare string."""
    if isinstance(obj, dict):
        return CNum(parse_quadrat(str(obj.get("re", "0")), d), parse_quadrat(str(obj.get("im", "0")), d))
    return CNum(parse_quadrat(str(obj), d))


class ComplexMoebiusMap:
    """``z -> (az+b)/(cz+d)``, or with ``conj(z)`` when ``anti`` is set.

    Matrices are kept as given; equality is projective.
    """

    __slots__ = ("a", "b", "c", "d", "anti")

    def __init__(self, a, b, c, d, anti: bool = False):
        self.a, self.b, self.c, self.d = (CNum.of(x) for x in (a, b, c, d))
        self.anti = anti
        if self.det.is_zero():
            raise ValueError("singular matrix")

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> CNum:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> CNum:
        return self.a + self.d

    def conj_matrix(self) -> ComplexMoebiusMap:
        return ComplexMoebiusMap(*(e.conj() for e in self.entries), anti=self.anti)

    def __mul__(self, other: ComplexMoebiusMap) -> ComplexMoebiusMap:
        o = other.conj_matrix() if self.anti else other
        a, b, c, d = self.entries
        e, f, g, h = o.entries
        return ComplexMoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h,
                                 anti=self.anti != other.anti)

    def inverse(self) -> ComplexMoebiusMap:
        m = ComplexMoebiusMap(self.d, -self.b, -self.c, self.a, anti=self.anti)
        # (A conj)^-1 = conj(A^-1) conj
        return m.conj_matrix() if self.anti else m

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ComplexMoebiusMap(1, 0, 0, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, ComplexMoebiusMap) or self.anti != other.anti:
            return False
        x, y = self.entries, other.entries
        return all((x[i] * y[j] - x[j] * y[i]).is_zero() for i in range(4) for j in range(i + 1, 4))

    __hash__ = None

    def is_identity(self) -> bool:
        return self == ComplexMoebiusMap(1, 0, 0, 1)

    def is_unimodular(self) -> bool:
        return (self.det - 1).is_zero()

    def apply(self, z: CNum) -> CNum:
        """Action on the boundary plane (``z`` finite, image finite)."""
        w = z.conj() if self.anti else z
        return (self.a * w + self.b) / (self.c * w + self.d)

    def apply_h3(self, z: CNum, t2):
        """Poincare extension on ``(z, t**2)`` in upper half-space."""
        if self.anti:
            z = z.conj()
        a, b, c, d = self.entries
        cz = c * z + d
        n = cz.abs2() + c.abs2() * t2
        num = (a * z + b) * cz.conj() + a * c.conj() * t2
        return CNum(num.re / n, num.im / n), t2 * self.det.abs2() / (n * n)

    def __repr__(self):
        kind = "ComplexAntiMoebiusMap" if self.anti else "ComplexMoebiusMap"
        return f"{kind}(({self.a}, {self.b}), ({self.c}, {self.d}))"


def unimodular(g: ComplexMoebiusMap) -> ComplexMoebiusMap:
    """Rescale ``g`` to determinant 1 when the square root of a real
    determinant lies in the field; otherwise return ``g`` unchanged."""
    det = g.det
    if not det.is_real():
        return g
    size = en.lift(abs(det.re))
    root = size.sqrt()
    if root is None and size.b == 0:
        # a rational determinant may have its root in Q(sqrt(k)), k square-free
        num, den = size.a.numerator, size.a.denominator
        k = _squarefree_part(num * den)
        root = QuadRat(0, Fraction(math.isqrt(num * den // k), den), k)
    if root is None:
        return g
    scale = CNum(1 / root) if sign(det.re) > 0 else CNum(0, -1 / root)
    try:
        return ComplexMoebiusMap(*(scale * e for e in g.entries), anti=g.anti)
    except en.FieldMismatch:
        return g


def _squarefree_part(n: int) -> int:
    k, p = 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            k *= p
            n //= p
        p += 1
    return k * n


def translation(tau) -> ComplexMoebiusMap:
    return ComplexMoebiusMap(1, tau, 0, 1)


# ---------------------------------------------------------------------------
# spheres and planes

@dataclass(frozen=True)
class IsometricSphere:
    center: CNum
    radius_sq: object

    @property
    def radius(self):
        return en.sqrt(self.radius_sq)


def isometric_sphere(g: ComplexMoebiusMap) -> IsometricSphere:
    if g.c.is_zero():
        raise ValueError("c = 0: no isometric sphere")
    det = g.det
    if not det.is_real() or sign(det.re) <= 0:
        raise ValueError("matrix must have positive real determinant")
    return IsometricSphere(-g.d / g.c, det.re / g.c.abs2())


def sphere_reflection(s: IsometricSphere) -> ComplexMoebiusMap:
    p = s.center
    return ComplexMoebiusMap(p, CNum.of(s.radius_sq) - p.abs2(), 1, -p.conj(), anti=True)


@dataclass(frozen=True)
class VerticalPlane:
    """Plane over the line ``point + s*direction`` of the boundary."""

    point: CNum
    direction: CNum

    def contains(self, z: CNum) -> bool:
        return sign(_cross(z - self.point, self.direction)) == 0

    def reflection(self) -> ComplexMoebiusMap:
        v, m = self.direction, self.point
        return ComplexMoebiusMap(v, v.conj() * m - v * m.conj(), 0, v.conj(), anti=True)

    def parallel_to(self, other: VerticalPlane) -> bool:
        return sign(_cross(self.direction, other.direction)) == 0

    def same_as(self, other: VerticalPlane) -> bool:
        return self.parallel_to(other) and self.contains(other.point)


def _cross(u: CNum, v: CNum):
    return u.re * v.im - u.im * v.re


def plane_reflection(plane: VerticalPlane) -> ComplexMoebiusMap:
    return plane.reflection()


def bisector_plane(g: ComplexMoebiusMap) -> VerticalPlane | None:
    """Mirror of ``sigma_R = g o sigma_S``, or ``None`` if it is not a reflection."""
    s = isometric_sphere(g)
    e = g * sphere_reflection(s)
    if not e.c.is_zero():
        raise ArithmeticError("g o sigma_S is not affine")
    u, beta = e.a / e.d, e.b / e.d
    if sign(u.abs2() - 1) != 0:
        return None
    if not (u * beta.conj() + beta).is_zero():
        return None  # glide reflection
    direction = I if (u + 1).is_zero() else u + 1
    return VerticalPlane(beta / 2, direction)


def dihedral_angle(s1: IsometricSphere, s2: IsometricSphere):
    """Angle of the region outside both spheres along their intersection."""
    d2 = (s1.center - s2.center).abs2()
    if sign(d2) == 0:
        raise ValueError("concentric spheres do not meet in a circle")
    r1, r2 = to_mpf(en.sqrt(s1.radius_sq)), to_mpf(en.sqrt(s2.radius_sq))
    dist = mp.sqrt(to_mpf(d2))
    if dist > r1 + r2 + en.EPS or dist < abs(r1 - r2) - en.EPS:
        raise ValueError("spheres are disjoint")
    num = to_mpf(d2) - to_mpf(s1.radius_sq) - to_mpf(s2.radius_sq)
    cos = max(-mp.one, min(mp.one, num / (2 * r1 * r2)))
    return mp.acos(cos)


# ---------------------------------------------------------------------------
# the criterion

@dataclass(frozen=True)
class CriterionResult:
    passed: bool
    reason: str
    axis: object = None          # CNum (a point) or VerticalPlane (a whole line)
    planes: tuple = ()

    @property
    def verdict(self) -> str:
        return "consistent with a DF domain" if self.passed else "no DF domain"

    def as_dict(self) -> dict:
        out = {"passed": self.passed, "verdict": self.verdict, "reason": self.reason}
        if isinstance(self.axis, CNum):
            out["axis"] = {"kind": "point", "base": _cjson(self.axis)}
        elif isinstance(self.axis, VerticalPlane):
            out["axis"] = {"kind": "line", "point": _cjson(self.axis.point),
                           "direction": _cjson(self.axis.direction)}
        out["planes"] = [{"point": _cjson(p.point), "direction": _cjson(p.direction)}
                         for p in self.planes]
        return out


def _cjson(z: CNum) -> dict:
    return {"re": str(z.re), "im": str(z.im)}


def translation_lattice(gens) -> list:
    """Translation lengths among generators and their pairwise products."""
    cands = list(gens) + [g * h for g in gens for h in gens]
    out = []
    for g in cands:
        if g.anti or not g.c.is_zero() or not (g.a - g.d).is_zero():
            continue
        tau = g.b / g.d
        if tau.is_zero():
            continue
        out.append(tau)
    return out


def _lattice_rank(taus) -> int:
    if not taus:
        return 0
    first = taus[0]
    return 2 if any(sign(_cross(first, t)) != 0 for t in taus[1:]) else 1


def df_criterion(gens) -> CriterionResult:
    """Necessary condition for a DF domain: real traces and concurrent mirrors.

    Raises ``ValueError`` if the translations found do not span a lattice.
    """
    gens = list(gens)
    if _lattice_rank(translation_lattice(gens)) < 2:
        raise ValueError("translation subgroup at infinity has rank < 2")
    for k, g in enumerate(gens):
        if not g.is_unimodular():
            raise ValueError(f"generator {k + 1} does not have determinant 1")
    for k, g in enumerate(gens):
        tr = g.trace
        if not tr.is_real():
            return CriterionResult(False, f"generator {k + 1} has non-real trace")
    planes = []
    for k, g in enumerate(gens):
        if g.c.is_zero():
            continue
        p = bisector_plane(g)
        if p is None:
            return CriterionResult(False, f"generator {k + 1} is not a product of two reflections")
        planes.append(p)
    if not planes:
        return CriterionResult(True, "no isometric spheres among generators")
    axis = planes[0]
    point = None
    for p in planes[1:]:
        if point is None:
            if axis.same_as(p):
                continue
            if axis.parallel_to(p):
                return CriterionResult(False, "bisector planes are parallel and distinct",
                                       None, tuple(planes))
            s = _cross(p.point - axis.point, p.direction) / _cross(axis.direction, p.direction)
            point = axis.point + axis.direction * s
        elif not p.contains(point):
            return CriterionResult(False, "bisector planes have no common vertical axis",
                                   None, tuple(planes))
    return CriterionResult(True, "real traces and a common vertical axis",
                           point if point is not None else axis, tuple(planes))


def double_reflection_polyhedron(face_reflections, mirror: ComplexMoebiusMap):
    """Generators ``tau_L o tau_i`` of the orientation-preserving half.

    ``mirror`` must be the reflection in a vertical plane (an affine
    anti-map); its plane is returned as the set of Dirichlet centres.
    """
    if not mirror.anti or not mirror.c.is_zero():
        raise ValueError("the mirror face must be a vertical plane")
    u, beta = mirror.a / mirror.d, mirror.b / mirror.d
    if sign(u.abs2() - 1) != 0 or not (u * beta.conj() + beta).is_zero():
        raise ValueError("the mirror face must be a vertical plane")
    gens = []
    for k, t in enumerate(face_reflections):
        if not t.anti:
            raise ValueError(f"face map {k + 1} is not a reflection")
        g = unimodular(mirror * t)
        if g.is_identity():
            raise ValueError(f"face {k + 1} coincides with the mirror face")
        gens.append(g)
    direction = I if (u + 1).is_zero() else u + 1
    return gens, VerticalPlane(beta / 2, direction)
