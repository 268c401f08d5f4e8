"""Exact arithmetic over Q(sqrt(3)).

Every quantity that decides a census predicate on the Gaussian or Eisenstein
lattice lives in the field Q(sqrt(3)): squared tripod lengths, Toricelli and
Fermat point coordinates, and the sector tests all reduce to signs of numbers
of the form x + y*sqrt(3) with rational x, y.  Representing them exactly (and
computing signs without ever evaluating a square root) keeps every branch
decision exact.
"""

from __future__ import annotations

import math
from fractions import Fraction


def sign_root3(x: Fraction | int, y: Fraction | int) -> int:
    """Sign of x + y*sqrt(3), computed without radicals.

    If x and y agree in sign (or one is zero) the sign is immediate.
    Otherwise the dominant term is decided by comparing x^2 against 3*y^2;
    equality is impossible for rational x, y not both zero since sqrt(3)
    is irrational.
    """
    if x == 0 and y == 0:
        return 0
    if x >= 0 and y >= 0:
        return 1
    if x <= 0 and y <= 0:
        return -1
    cmp = x * x - 3 * y * y
    if cmp > 0:
        return 1 if x > 0 else -1
    return 1 if y > 0 else -1


class QuadraticNumber:
    """An exact element x + y*sqrt(3) with rational x, y.

    Instances are immutable and hashable; Fractions keep themselves in lowest
    terms with positive denominators, so equality is plain structural
    equality (the representation is unique).  Python integers are unbounded,
    so arithmetic can never overflow.
    """

    __slots__ = ("rational", "root3")

    def __init__(self, rational=0, root3=0):
        object.__setattr__(self, "rational", Fraction(rational))
        object.__setattr__(self, "root3", Fraction(root3))

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    # -- construction helpers -------------------------------------------

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, QuadraticNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        return None

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.rational + o.rational, self.root3 + o.root3)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.rational - o.rational, self.root3 - o.root3)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadraticNumber(-self.rational, -self.root3)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        x1, y1, x2, y2 = self.rational, self.root3, o.rational, o.root3
        return QuadraticNumber(x1 * x2 + 3 * y1 * y2, x1 * y2 + x2 * y1)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        x, y = o.rational, o.root3
        norm = x * x - 3 * y * y
        if norm == 0:
            if x == 0 and y == 0:
                raise ZeroDivisionError("division by zero QuadraticNumber")
            raise ArithmeticError("norm of a nonzero rational pair cannot vanish")
        num = self * QuadraticNumber(x, -y)
        return QuadraticNumber(num.rational / norm, num.root3 / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    # -- comparisons (exact, via sign_root3) ------------------------------

    def sign(self) -> int:
        return sign_root3(self.rational, self.root3)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.rational == o.rational and self.root3 == o.root3

    def __hash__(self):
        return hash((self.rational, self.root3))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __bool__(self):
        return self.rational != 0 or self.root3 != 0

    # -- conversions ------------------------------------------------------

    def __float__(self):
        return float(self.rational) + float(self.root3) * math.sqrt(3.0)

    def is_rational(self) -> bool:
        return self.root3 == 0

    def is_integer(self) -> bool:
        return self.root3 == 0 and self.rational.denominator == 1

    def floor(self) -> int:
        """Largest integer <= self, exact (float guess, then exact fix-up)."""
        f = math.floor(float(self))
        while QuadraticNumber(f) > self:
            f -= 1
        while QuadraticNumber(f + 1) <= self:
            f += 1
        return f

    def __repr__(self):
        return f"QuadraticNumber({self.rational!r}, {self.root3!r})"

    def __str__(self):
        return f"{self.rational} + {self.root3}*sqrt(3)"


QN_ZERO = QuadraticNumber(0)
QN_ONE = QuadraticNumber(1)
SQRT3 = QuadraticNumber(0, 1)
_HALF = Fraction(1, 2)


class Vec2:
    """Exact point/vector in the plane with QuadraticNumber coordinates."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        object.__setattr__(self, "x", x if isinstance(x, QuadraticNumber) else QuadraticNumber(x))
        object.__setattr__(self, "y", y if isinstance(y, QuadraticNumber) else QuadraticNumber(y))

    def __setattr__(self, name, value):
        raise AttributeError("Vec2 is immutable")

    def __add__(self, other):
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return Vec2(-self.x, -self.y)

    def scale(self, t) -> "Vec2":
        return Vec2(self.x * t, self.y * t)

    def cross(self, other) -> QuadraticNumber:
        return self.x * other.y - self.y * other.x

    def dot(self, other) -> QuadraticNumber:
        return self.x * other.x + self.y * other.y

    def norm_sq(self) -> QuadraticNumber:
        return self.dot(self)

    def rotate60(self) -> "Vec2":
        """Multiply by e^{i*pi/3} = 1/2 + i*sqrt(3)/2."""
        h = QuadraticNumber(_HALF)
        s = QuadraticNumber(0, _HALF)
        return Vec2(self.x * h - self.y * s, self.x * s + self.y * h)

    def rotate_minus60(self) -> "Vec2":
        h = QuadraticNumber(_HALF)
        s = QuadraticNumber(0, _HALF)
        return Vec2(self.x * h + self.y * s, self.y * h - self.x * s)

    def is_zero(self) -> bool:
        return not self.x and not self.y

    def to_floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def norm_float(self) -> float:
        return math.hypot(float(self.x), float(self.y))

    def __eq__(self, other):
        if not isinstance(other, Vec2):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return f"Vec2({self.x!r}, {self.y!r})"


VEC_ZERO = Vec2(QN_ZERO, QN_ZERO)
