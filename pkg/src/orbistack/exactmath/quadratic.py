"""Exact elements (a + b*sqrt(d))/c of a real quadratic field or of Q.

Rationals carry the field tag ``RATIONAL`` (stored as d = 1), so a single
arithmetic and comparison path serves both cases.  Elements of two
different fields never mix: that raises :class:`MixedFields`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational

from orbistack.errors import MixedFields, ZeroDenominator

RATIONAL = 1


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, r) with n == s*s*r and r squarefree; n must be positive."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    s, r = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            r *= p
        p += 1 if p == 2 else 2
    return s, r * n


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


class QuadraticNumber:
    """Canonical (a + b*sqrt(d))/c with gcd(a, b, c) == 1 and c >= 1."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int = 0, c: int = 1, d: int = RATIONAL):
        if c == 0:
            raise ZeroDenominator("denominator is zero")
        if d < 0:
            raise ValueError("only real quadratic fields are supported")
        if d == 0:
            b = 0
        if b != 0:
            s, d = squarefree_split(d)
            b *= s
        if b == 0 or d == 1:
            a, b, d = a + b, 0, RATIONAL
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", c // g)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    @classmethod
    def sqrt(cls, k: int) -> QuadraticNumber:
        return cls(0, 1, 1, k)

    @classmethod
    def coerce(cls, x) -> QuadraticNumber:
        if isinstance(x, QuadraticNumber):
            return x
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, Rational):
            return cls(x.numerator, 0, x.denominator)
        raise TypeError(f"cannot convert {type(x).__name__} to QuadraticNumber")

    # -- predicates -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def parts(self) -> tuple[Fraction, Fraction]:
        """Coordinates (x, y) in the basis {1, sqrt(d)}."""
        return Fraction(self.a, self.c), Fraction(self.b, self.c)

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.c, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b * self.d, self.c * self.c)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.c)

    # -- arithmetic -------------------------------------------------------

    def _field(self, other: QuadraticNumber) -> int:
        if self.b and other.b and self.d != other.d:
            raise MixedFields(f"sqrt({self.d}) and sqrt({other.d}) in one expression")
        return self.d if self.b else other.d

    def __add__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(other)
        return QuadraticNumber(
            self.a * other.c + other.a * self.c,
            self.b * other.c + other.b * self.c,
            self.c * other.c,
            d,
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.c, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(other)
        return QuadraticNumber(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            self.c * other.c,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadraticNumber:
        # c / (a + b√d) = c (a - b√d) / (a² - b²d)
        den = self.a * self.a - self.b * self.b * self.d
        if den == 0:
            raise ZeroDenominator("inverse of zero")
        return QuadraticNumber(self.c * self.a, -self.c * self.b, den, self.d)

    def __truediv__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        self._field(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadraticNumber.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = QuadraticNumber(1)
        for _ in range(abs(k)):
            result = result * base
        return result

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return _sign(a)
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: compare a² with b²d (never equal, d squarefree)
        if a > 0:
            return _sign(a * a - b * b * self.d)
        return _sign(b * b * self.d - a * a)

    def _cmp(self, other) -> int:
        return (self - QuadraticNumber.coerce(other)).sign()

    def __eq__(self, other):
        if isinstance(other, (int, Rational, QuadraticNumber)):
            other = QuadraticNumber.coerce(other)
            return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __floor__(self) -> int:
        if self.b == 0:
            return self.a // self.c
        r = isqrt(self.b * self.b * self.d)
        # b*sqrt(d) lies strictly between r and r + 1 (or their negatives)
        if self.b > 0:
            return (self.a + r) // self.c
        return (self.a - r - 1) // self.c

    def floor(self) -> int:
        return self.__floor__()

    def __float__(self):
        return (self.a + self.b * self.d ** 0.5) / self.c

    # -- display ----------------------------------------------------------

    def __repr__(self):
        return f"QuadraticNumber(a={self.a}, b={self.b}, c={self.c}, d={self.d})"

    def __str__(self):
        """Expression-grammar text that parses back to the same value."""
        a, b, c, d = self.a, self.b, self.c, self.d
        if b == 0:
            return str(a) if c == 1 else f"{a}/{c}"
        if abs(b) == 1:
            root = f"sqrt({d})"
        else:
            root = f"{abs(b)}*sqrt({d})"
        if a == 0:
            num = root if b > 0 else f"-{root}"
        else:
            num = f"{a}{'+' if b > 0 else '-'}{root}"
        if c == 1:
            return num
        if a == 0 and abs(b) == 1:
            return f"{num}/{c}"
        return f"({num})/{c}"
