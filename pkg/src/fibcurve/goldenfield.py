"""Exact arithmetic in Z[phi], phi = (1 + sqrt 5) / 2, and rationals over it.

Every coordinate, length and area in the package is a :class:`GoldenInt`
(``a + b*phi`` with Python ints) or a :class:`GoldenRat` (a GoldenInt over a
positive integer denominator).  Order decisions never touch floating point:
signs are read off the field norm ``a*a + a*b - b*b``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

PHI_FLOAT = (1.0 + math.sqrt(5.0)) / 2.0
_PHI_BAR_FLOAT = 1.0 - PHI_FLOAT


class GoldenInt:
    """The number ``a + b*phi`` with integer coefficients.

    Instances are immutable and hashable.  Plain ``int`` operands are
    accepted wherever a GoldenInt is.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0) -> None:
        object.__setattr__(self, "a", int(a))
        object.__setattr__(self, "b", int(b))

    def __setattr__(self, name, value):
        raise AttributeError("GoldenInt is immutable")

    @classmethod
    def coerce(cls, value: Union[int, GoldenInt]) -> GoldenInt:
        if isinstance(value, GoldenInt):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        raise TypeError(f"cannot coerce {type(value).__name__} to GoldenInt")

    # ring operations -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GoldenInt):
            return GoldenInt(self.a + other.a, self.b + other.b)
        if isinstance(other, int):
            return GoldenInt(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> GoldenInt:
        return GoldenInt(-self.a, -self.b)

    def __pos__(self) -> GoldenInt:
        return self

    def __sub__(self, other):
        if isinstance(other, GoldenInt):
            return GoldenInt(self.a - other.a, self.b - other.b)
        if isinstance(other, int):
            return GoldenInt(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return GoldenInt(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GoldenInt):
            a, b, c, d = self.a, self.b, other.a, other.b
            bd = b * d
            return GoldenInt(a * c + bd, a * d + b * c + bd)
        if isinstance(other, int):
            return GoldenInt(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            return GoldenRat(self, other)
        return NotImplemented

    def __pow__(self, n: int) -> GoldenInt:
        if n < 0:
            raise ValueError("negative powers are only defined for phi itself")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # order ---------------------------------------------------------------

    def norm(self) -> int:
        """Field norm ``(a + b phi)(a + b phi')`` = ``a^2 + ab - b^2``."""
        a, b = self.a, self.b
        return a * a + a * b - b * b

    def conjugate(self) -> GoldenInt:
        # phi' = 1 - phi
        return GoldenInt(self.a + self.b, -self.b)

    def sign(self) -> int:
        a, b = self.a, self.b
        if a >= 0 and b >= 0:
            return 0 if a == 0 and b == 0 else 1
        if a <= 0 and b <= 0:
            return -1
        n = a * a + a * b - b * b
        s = (n > 0) - (n < 0)
        return -s if a < 0 else s

    def _cmp(self, other) -> int:
        if isinstance(other, (GoldenInt, int)):
            return (self - other).sign()
        if isinstance(other, (GoldenRat, Fraction)):
            return -GoldenRat.coerce(other)._cmp(self)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, GoldenInt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, (GoldenRat, Fraction)):
            return GoldenRat.coerce(other) == self
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b)) if self.b else hash(self.a)

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __abs__(self) -> GoldenInt:
        return -self if self.sign() < 0 else self

    # conversions ---------------------------------------------------------

    def __float__(self) -> float:
        return self.to_float()

    def to_float(self) -> float:
        """Nearest-ish float, free of cancellation for mixed-sign coefficients.

        For rendering and measurement only; never used for decisions.
        """
        a, b = self.a, self.b
        if (a >= 0) == (b >= 0) or a == 0 or b == 0:
            return float(a) + float(b) * PHI_FLOAT
        # a + b*phi' has no cancellation when a and b differ in sign
        return float(self.norm()) / (float(a) + float(b) * _PHI_BAR_FLOAT)

    def floor(self) -> int:
        return GoldenRat(self, 1).floor()

    def div_by_phi(self) -> GoldenInt:
        # (a + b phi) * (phi - 1)
        return GoldenInt(self.b - self.a, self.a)

    def mul_by_phi(self) -> GoldenInt:
        return GoldenInt(self.b, self.a + self.b)

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b)]

    @classmethod
    def from_json(cls, data) -> GoldenInt:
        a, b = data
        return cls(int(a), int(b))

    def __repr__(self) -> str:
        return f"GoldenInt({self.a}, {self.b})"

    def __str__(self) -> str:
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        coeff = {1: "", -1: "-"}.get(b, str(b))
        tail = f"{coeff}φ"
        if a == 0:
            return tail
        return f"{a}{'' if b < 0 else '+'}{tail}"


ZERO = GoldenInt(0, 0)
ONE = GoldenInt(1, 0)
PHI = GoldenInt(0, 1)
PHI_INV = GoldenInt(-1, 1)


def add(u: GoldenInt, v: GoldenInt) -> GoldenInt:
    return u + v


def neg(u: GoldenInt) -> GoldenInt:
    return -u


def mul(u: GoldenInt, v: GoldenInt) -> GoldenInt:
    return u * v


def sign(u) -> int:
    if isinstance(u, (int, Fraction)):
        return (u > 0) - (u < 0)
    return u.sign()


def cmp(u, v) -> int:
    """Three-way exact comparison of two golden numbers (or ints)."""
    return GoldenRat.coerce(u)._cmp(v)


def to_float(u) -> float:
    return u.to_float() if hasattr(u, "to_float") else float(u)


def div_by_phi(u: GoldenInt) -> GoldenInt:
    return u.div_by_phi()


@lru_cache(maxsize=None)
def fibonacci(n: int) -> int:
    """F(n) with F(0)=0, F(1)=F(2)=1, extended by F(-n) = (-1)^(n+1) F(n)."""
    if n < 0:
        return fibonacci(-n) if (-n) % 2 else -fibonacci(-n)
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def phi_pow(n: int) -> GoldenInt:
    """Exact ``phi**n``; ``phi**n = F(n-1) + F(n) phi`` for every integer n."""
    return GoldenInt(fibonacci(n - 1), fibonacci(n))


# ----------------------------------------------------------------------------


class GoldenRat:
    """``num / den`` with ``num`` in Z[phi] and ``den`` a positive int.

    Kept in lowest terms so equal values have equal representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[GoldenInt, int], den: int = 1) -> None:
        num = GoldenInt.coerce(num)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("GoldenRat with zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(math.gcd(num.a, num.b), den)
        if g > 1:
            num, den = GoldenInt(num.a // g, num.b // g), den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("GoldenRat is immutable")

    @classmethod
    def coerce(cls, value) -> GoldenRat:
        if isinstance(value, GoldenRat):
            return value
        if isinstance(value, (GoldenInt, int)):
            return cls(value, 1)
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator)
        raise TypeError(f"cannot coerce {type(value).__name__} to GoldenRat")

    def _binary(self, other):
        try:
            return GoldenRat.coerce(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return GoldenRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> GoldenRat:
        return GoldenRat(-self.num, self.den)

    def __abs__(self) -> GoldenRat:
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return GoldenRat(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return GoldenRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            return GoldenRat(self.num, self.den * other)
        return NotImplemented

    def sign(self) -> int:
        return self.num.sign()

    def _cmp(self, other) -> int:
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).sign()

    def __eq__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash(self.num) if self.den == 1 else hash((self.num.a, self.num.b, self.den))

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __float__(self) -> float:
        return self.to_float()

    def to_float(self) -> float:
        return self.num.to_float() / self.den

    def floor(self) -> int:
        """Exact floor, via an integer square root of ``5 b^2``."""
        a, b = self.num.a, self.num.b
        # value = (2a + b + b*sqrt5) / (2 den); sqrt5 irrational so no exact ties
        if b == 0:
            return (2 * a) // (2 * self.den)
        r = math.isqrt(5 * b * b)
        fl = r if b > 0 else -r - 1
        return (2 * a + b + fl) // (2 * self.den)

    def to_fraction(self, bits: int = 64) -> Fraction:
        """A dyadic rational within ``2**-bits`` below the exact value."""
        scaled = GoldenRat(self.num * (1 << bits), self.den)
        return Fraction(scaled.floor(), 1 << bits)

    def is_integral(self) -> bool:
        return self.den == 1

    def to_json(self) -> list[str]:
        return [str(self.num.a), str(self.num.b), str(self.den)]

    @classmethod
    def from_json(cls, data) -> GoldenRat:
        a, b, den = data
        return cls(GoldenInt(int(a), int(b)), int(den))

    def __repr__(self) -> str:
        return f"GoldenRat({self.num!r}, {self.den})"

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/{self.den}"


Golden = Union[GoldenInt, GoldenRat]


def rat_cmp(u: GoldenRat, v: GoldenRat) -> int:
    return GoldenRat.coerce(u)._cmp(v)


def golden_to_json(value: Golden) -> list[str]:
    return GoldenRat.coerce(value).to_json()


def golden_from_json(data) -> Golden:
    """Inverse of :func:`golden_to_json`; integral values come back as GoldenInt."""
    if len(data) == 2:
        return GoldenInt.from_json(data)
    r = GoldenRat.from_json(data)
    return r.num if r.den == 1 else r


# ----------------------------------------------------------------------------
# planar geometry


@dataclass(frozen=True)
class Point2:
    x: Golden
    y: Golden

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def scale(self, factor) -> Point2:
        return Point2(self.x * factor, self.y * factor)

    def to_float(self) -> tuple[float, float]:
        return (to_float(self.x), to_float(self.y))

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


ORIGIN = Point2(ZERO, ZERO)


def _overlap_sign(a0, a1, b0, b1) -> int:
    """Sign of the length of ``[a0, a1] & [b0, b1]`` (negative when disjoint)."""
    lo = a0 if a0 >= b0 else b0
    hi = a1 if a1 <= b1 else b1
    return cmp(hi, lo)


@dataclass(frozen=True)
class Rect:
    origin: Point2
    width: Golden
    height: Golden

    def __post_init__(self) -> None:
        if sign(self.width) <= 0 or sign(self.height) <= 0:
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def x0(self) -> Golden:
        return self.origin.x

    @property
    def y0(self) -> Golden:
        return self.origin.y

    @property
    def x1(self) -> Golden:
        return self.origin.x + self.width

    @property
    def y1(self) -> Golden:
        return self.origin.y + self.height

    def area(self) -> Golden:
        return self.width * self.height

    def center(self) -> Point2:
        return Point2(
            GoldenRat.coerce(self.x0 * 2 + self.width) / 2,
            GoldenRat.coerce(self.y0 * 2 + self.height) / 2,
        )

    def corners(self) -> tuple[Point2, Point2, Point2, Point2]:
        return (
            Point2(self.x0, self.y0),
            Point2(self.x1, self.y0),
            Point2(self.x1, self.y1),
            Point2(self.x0, self.y1),
        )

    def translate(self, offset: Point2) -> Rect:
        return Rect(self.origin + offset, self.width, self.height)

    def scale(self, factor) -> Rect:
        return Rect(self.origin.scale(factor), self.width * factor, self.height * factor)

    def contains_point(self, p: Point2) -> bool:
        return self.x0 <= p.x <= self.x1 and self.y0 <= p.y <= self.y1

    def contains_rect(self, other: Rect) -> bool:
        return (
            self.x0 <= other.x0
            and other.x1 <= self.x1
            and self.y0 <= other.y0
            and other.y1 <= self.y1
        )

    def intersects(self, other: Rect) -> bool:
        """Closed rectangles meet (possibly in a single point)."""
        return (
            _overlap_sign(self.x0, self.x1, other.x0, other.x1) >= 0
            and _overlap_sign(self.y0, self.y1, other.y0, other.y1) >= 0
        )

    def interiors_overlap(self, other: Rect) -> bool:
        return (
            _overlap_sign(self.x0, self.x1, other.x0, other.x1) > 0
            and _overlap_sign(self.y0, self.y1, other.y0, other.y1) > 0
        )

    def shares_edge(self, other: Rect) -> bool:
        """The intersection is a segment of positive length."""
        xs = _overlap_sign(self.x0, self.x1, other.x0, other.x1)
        ys = _overlap_sign(self.y0, self.y1, other.y0, other.y1)
        return (xs == 0 and ys > 0) or (ys == 0 and xs > 0)

    def diameter(self) -> float:
        return math.hypot(to_float(self.width), to_float(self.height))

    def to_float(self) -> tuple[float, float, float, float]:
        return (to_float(self.x0), to_float(self.y0), to_float(self.x1), to_float(self.y1))
