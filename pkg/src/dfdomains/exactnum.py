"""Exact arithmetic in Q and real quadratic fields Q(sqrt(d)).

Values of the form ``a + b*sqrt(d)`` with rational ``a``, ``b`` are carried by
:class:`QuadRat`.  Signs are decided with integer arithmetic only; floating
values (mpmath, 128 bits by default) are produced on request for plotting and
for quantities that leave the field.

The geometry modules are written against a small numeric protocol so they run
unchanged on exact ``QuadRat`` entries and on high-precision ``mpf`` values:
:func:`sign`, :func:`sqrt`, :func:`to_mpf` and :func:`is_exact`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

import mpmath

Rational = Fraction

PREC_BITS = 128
# coincidence tolerance for values that are not exact
EPS = mpmath.mpf(2) ** -80

mp = mpmath.MPContext()
mp.prec = PREC_BITS


class FieldMismatch(ValueError):
    pass


def _is_squarefree(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    p, r = q.numerator, q.denominator
    sp, sr = math.isqrt(p), math.isqrt(r)
    if sp * sp == p and sr * sr == r:
        return Fraction(sp, sr)
    return None


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational")


class QuadRat:
    """Element ``a + b*sqrt(d)`` of a real quadratic field.

    ``d`` is only significant when ``b != 0``; purely rational values combine
    with values of any field.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int | None = None):
        a = _as_fraction(a)
        b = _as_fraction(b)
        if b != 0:
            if d is None:
                raise ValueError("irrational part needs a field parameter d")
            if not _is_squarefree(int(d)):
                raise ValueError(f"d={d} must be a square-free integer > 1")
        self.a = a
        self.b = b
        self.d = int(d) if d is not None else None

    # -- construction helpers -------------------------------------------
    @classmethod
    def sqrt_of(cls, d: int) -> QuadRat:
        return cls(0, 1, d)

    def _coerce(self, other) -> QuadRat | None:
        if isinstance(other, QuadRat):
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, _RationalABC):
            return QuadRat(other, 0, self.d)
        return None

    def _field(self, other: QuadRat) -> int | None:
        if self.b != 0 and other.b != 0 and self.d != other.d:
            raise FieldMismatch(f"Q(sqrt({self.d})) vs Q(sqrt({other.d}))")
        if self.b != 0:
            return self.d
        if other.b != 0:
            return other.d
        return self.d if self.d is not None else other.d

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadRat(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadRat(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadRat(self.a - o.a, self.b - o.b, self._field(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        if self.b == 0 or o.b == 0:
            return QuadRat(self.a * o.a, self.a * o.b + self.b * o.a, d)
        return QuadRat(self.a * o.a + self.b * o.b * d,
                       self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadRat:
        """Galois conjugate ``a - b*sqrt(d)``."""
        return QuadRat(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * (self.d or 0)

    def inverse(self) -> QuadRat:
        if self.b == 0:
            if self.a == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt(d))")
            return QuadRat(1 / self.a, 0, self.d)
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QuadRat(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        self._field(o)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadRat(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -----------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # opposite signs: compare a^2 with b^2 d
        lhs = self.a * self.a
        rhs = self.b * self.b * self.d
        if lhs > rhs:
            return sa
        if lhs < rhs:
            return sb
        return 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.a != o.a or self.b != o.b:
            return False
        return self.b == 0 or self.d == o.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadRat with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- other ----------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def floor(self) -> int:
        f = int(mpmath.floor(approx(self, 64)[0]))
        while self < f:
            f -= 1
        while self >= f + 1:
            f += 1
        return int(f)

    def sqrt(self) -> QuadRat | None:
        """Nonnegative square root inside the same field, or ``None``."""
        s = self.sign()
        if s < 0:
            return None
        if s == 0:
            return QuadRat(0, 0, self.d)
        if self.b == 0:
            r = _rational_sqrt(self.a)
            if r is not None:
                return QuadRat(r, 0, self.d)
            if self.d is not None:
                q = _rational_sqrt(self.a / self.d)
                if q is not None:
                    return QuadRat(0, q, self.d)
            return None
        n = _rational_sqrt(self.norm())
        if n is None:
            return None
        for p2 in ((self.a + n) / 2, (self.a - n) / 2):
            p = _rational_sqrt(p2)
            if p is None or p == 0:
                continue
            for cand in (QuadRat(p, self.b / (2 * p), self.d),
                         QuadRat(-p, -self.b / (2 * p), self.d)):
                if cand.sign() > 0 and cand * cand == self:
                    return cand
        return None

    def __float__(self):
        return float(approx(self, 60)[0])

    def __repr__(self):
        return f"QuadRat({self})"

    def __str__(self):
        return format_quadrat(self)


# ---------------------------------------------------------------------------
# text serialization

_RAT = r"-?\d+(?:/\d+)?"
_QUAD_RE = re.compile(rf"^({_RAT})\+({_RAT})\*sqrt\((\d+)\)$")
_RAT_RE = re.compile(rf"^{_RAT}$")


def format_quadrat(x: QuadRat) -> str:
    if x.b == 0:
        return str(x.a)
    return f"{x.a}+{x.b}*sqrt({x.d})"


def parse_quadrat(text: str, d: int | None = None) -> QuadRat:
    """Parse the canonical ``a+b*sqrt(d)`` form (or a bare rational ``p/q``).

    No whitespace is accepted.  A bare rational takes the field ``d`` given
    as context.
    """
    if not isinstance(text, str):
        raise ValueError(f"expected a string, got {text!r}")
    m = _QUAD_RE.match(text)
    if m:
        b = Fraction(m.group(2))
        fd = int(m.group(3))
        if d is not None and b != 0 and fd != d:
            raise FieldMismatch(f"{text!r} is not in Q(sqrt({d}))")
        return QuadRat(Fraction(m.group(1)), b, fd)
    if _RAT_RE.match(text):
        q = Fraction(text)
        return QuadRat(q, 0, d)
    raise ValueError(f"not a canonical quadratic number: {text!r}")


# ---------------------------------------------------------------------------
# approximation

def approx(x, bits: int = 53):
    """Return ``(value, bound)`` with ``|value - x| <= bound = 2**-bits``."""
    if bits < 16:
        raise ValueError("bits must be >= 16")
    bound = mpmath.mpf(2) ** -bits
    if isinstance(x, QuadRat):
        mag = 0
        for q in (x.a, x.b):
            if q:
                mag = max(mag, abs(q.numerator).bit_length() - q.denominator.bit_length() + 2)
        work = bits + 16 + mag + (x.d or 1).bit_length()
        with mpmath.workprec(work):
            if x.b == 0:
                v = mpmath.mpf(x.a.numerator) / x.a.denominator
            else:
                v = (mpmath.mpf(x.a.numerator) / x.a.denominator
                     + mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(x.d))
            v = +v
        return v, bound
    if isinstance(x, (int, Fraction)):
        with mpmath.workprec(bits + 64):
            v = mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator
        return v, bound
    return mpmath.mpf(x), bound


# ---------------------------------------------------------------------------
# numeric protocol shared by exact and floating geometry

def is_exact(x) -> bool:
    return isinstance(x, (QuadRat, int, Fraction))


def to_mpf(x):
    if isinstance(x, QuadRat):
        a = mp.mpf(x.a.numerator) / x.a.denominator
        if x.b == 0:
            return a
        return a + mp.mpf(x.b.numerator) / x.b.denominator * mp.sqrt(x.d)
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def sign(x) -> int:
    """Exact sign for field elements, tolerance ``EPS`` for floating values."""
    if isinstance(x, QuadRat):
        return x.sign()
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    v = mp.mpf(x)
    if abs(v) <= EPS:
        return 0
    return 1 if v > 0 else -1


def is_zero(x) -> bool:
    return sign(x) == 0


def eq(x, y) -> bool:
    return sign(x - y) == 0


def sqrt(x):
    """Square root, exact when it lies in the field, else an ``mpf``."""
    if isinstance(x, QuadRat):
        r = x.sqrt()
        if r is not None:
            return r
        return mp.sqrt(to_mpf(x))
    if isinstance(x, (int, Fraction)):
        r = _rational_sqrt(Fraction(x))
        if r is not None:
            return QuadRat(r)
        return mp.sqrt(to_mpf(x))
    v = mp.mpf(x)
    if v < 0:
        if v > -EPS:
            return mp.zero
        raise ValueError("square root of a negative number")
    return mp.sqrt(v)


def lift(x):
    """Promote ints and fractions to ``QuadRat``; pass other values through."""
    if isinstance(x, (int, Fraction)):
        return QuadRat(x)
    return x


def mixed(x, y):
    """Bring two values into a common representation (exact if both are)."""
    if is_exact(x) and is_exact(y):
        return lift(x), lift(y)
    return to_mpf(x), to_mpf(y)
