"""Exact arithmetic: rationals and the quadratic field Q(sqrt 2).

Rationals are :class:`fractions.Fraction`, which already keeps the
numerator/denominator pair reduced with a positive denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction
Number = Union[int, Fraction, "QSqrt2"]


def normalize_rational(x) -> Fraction:
    """Coerce ``x`` (int, Fraction, ``"p/q"`` string) to a reduced Fraction."""
    return Fraction(x)


@dataclass(frozen=True)
class QSqrt2:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def coerce(cls, x) -> QSqrt2:
        if isinstance(x, QSqrt2):
            return x
        return cls(Fraction(x), Fraction(0))

    def __add__(self, other):
        o = QSqrt2.coerce(other)
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = QSqrt2.coerce(other)
        return QSqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return QSqrt2.coerce(other) - self

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __mul__(self, other):
        o = QSqrt2.coerce(other)
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + o.a * self.b)

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt2:
        return QSqrt2(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 2 b^2``."""
        return self.a * self.a - 2 * self.b * self.b

    def __truediv__(self, other):
        o = QSqrt2.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        p = self * o.conjugate()
        return QSqrt2(p.a / n, p.b / n)

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def sign(self) -> int:
        return qs2_sign(self)

    def __lt__(self, other):
        return qs2_sign(self - other) < 0

    def __le__(self, other):
        return qs2_sign(self - other) <= 0

    def __gt__(self, other):
        return qs2_sign(self - other) > 0

    def __ge__(self, other):
        return qs2_sign(self - other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2)

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self):
        return format_qs2(self)


def qs2_arith(x: QSqrt2, y: QSqrt2, op: str) -> QSqrt2:
    """Exact ``add``, ``sub`` or ``mul`` of two field elements."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def _sgn(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def qs2_sign(x: QSqrt2) -> int:
    """Sign of ``a + b*sqrt(2)`` decided without floating point."""
    sa, sb = _sgn(x.a), _sgn(x.b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger magnitude of |a| and |b|*sqrt(2) wins
    lhs = x.a * x.a
    rhs = 2 * x.b * x.b
    if lhs > rhs:
        return sa
    return sb  # lhs == rhs is impossible for rational a, b not both zero


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_qs2(x: QSqrt2) -> str:
    """Text form used in ``.rays`` files: ``a`` or ``a:b``."""
    if x.b == 0:
        return _frac_str(x.a)
    return f"{_frac_str(x.a)}:{_frac_str(x.b)}"


def parse_qs2(text: str) -> QSqrt2:
    """Inverse of :func:`format_qs2`; accepts ``p/q`` in either slot."""
    parts = text.split(":")
    if len(parts) == 1:
        return QSqrt2(Fraction(parts[0]), Fraction(0))
    if len(parts) == 2:
        return QSqrt2(Fraction(parts[0]), Fraction(parts[1]))
    raise ValueError(f"bad coordinate {text!r}")


SQRT2 = QSqrt2(0, 1)
ZERO = QSqrt2(0, 0)
ONE = QSqrt2(1, 0)
