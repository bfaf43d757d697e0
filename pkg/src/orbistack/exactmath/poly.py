"""Integer polynomials, exact gcd, and Sturm-sequence root counting.

Coefficients are stored lowest degree first: ``coeffs[i]`` multiplies x**i.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from orbistack.exactmath.matrix import IntegerMatrix


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntegerPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntegerPolynomial is immutable")

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntegerPolynomial:
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, IntegerPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntegerPolynomial({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if i == 1 else f"x^{i}")
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append((" - " if c < 0 else " + ") + body)
        return "".join(terms)

    def __add__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntegerPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self):
        return IntegerPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerPolynomial(other * c for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntegerPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntegerPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation; exact for int, Fraction and QuadraticNumber."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntegerPolynomial:
        return IntegerPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def reversal(self, n: int | None = None) -> IntegerPolynomial:
        """x**n * p(1/x), with n defaulting to the degree."""
        n = self.degree if n is None else n
        padded = self.coeffs + (0,) * (n + 1 - len(self.coeffs))
        return IntegerPolynomial(reversed(padded))

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> IntegerPolynomial:
        """Divide by the content and make the leading coefficient positive."""
        g = self.content()
        if g == 0:
            return self
        if self.leading < 0:
            g = -g
        return IntegerPolynomial(c // g for c in self.coeffs)

    def pseudo_rem(self, divisor: IntegerPolynomial) -> IntegerPolynomial:
        """Remainder of |lc(divisor)|**k * self by divisor.

        Scaling by the absolute value keeps the sign of the true remainder,
        which the Sturm sequence relies on.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dg = divisor.degree
        lc = divisor.leading
        alc = abs(lc)
        while len(r) - 1 >= dg and r:
            shift = len(r) - 1 - dg
            top = r[-1]
            # alc*r - (top*sign(lc)) * x^shift * divisor
            r = [alc * c for c in r]
            q = top if lc > 0 else -top
            for i, c in enumerate(divisor.coeffs):
                r[i + shift] -= q * c
            r = list(_strip(r))
        return IntegerPolynomial(r)

    def exact_div(self, divisor: IntegerPolynomial) -> IntegerPolynomial:
        """Quotient when divisor divides self over Q with an integer result."""
        r = [Fraction(c) for c in self.coeffs]
        dg = divisor.degree
        q = [Fraction(0)] * max(len(r) - dg, 1)
        while len(r) - 1 >= dg and any(r):
            shift = len(r) - 1 - dg
            f = r[-1] / divisor.leading
            q[shift] = f
            for i, c in enumerate(divisor.coeffs):
                r[i + shift] -= f * c
            while r and r[-1] == 0:
                r.pop()
        if any(r):
            raise ValueError(f"{divisor} does not divide {self}")
        if any(x.denominator != 1 for x in q):
            raise ValueError("quotient is not integral")
        return IntegerPolynomial(int(x) for x in q)


def poly_gcd(f: IntegerPolynomial, g: IntegerPolynomial) -> IntegerPolynomial:
    """Primitive gcd over Q[x], normalized with positive leading coefficient."""
    f, g = f.primitive(), g.primitive()
    while not g.is_zero():
        f, g = g, f.pseudo_rem(g).primitive()
    return f.primitive()


def squarefree_part(p: IntegerPolynomial) -> IntegerPolynomial:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive()
    return p.primitive().exact_div(g).primitive()


def sturm_sequence(p: IntegerPolynomial) -> list[IntegerPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2].pseudo_rem(seq[-1])
        g = r.content()
        seq.append(IntegerPolynomial(-(c // g) for c in r.coeffs) if g else r)
    seq.pop()
    return seq


def _sign_changes(seq: Sequence[IntegerPolynomial], x: Fraction) -> int:
    signs = [s for s in ((q(x) > 0) - (q(x) < 0) for q in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_real_roots_in(
    p: IntegerPolynomial, lo, hi, open_endpoints: bool = True
) -> int:
    """Number of distinct real roots of p in (lo, hi), or [lo, hi]."""
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        return 0
    q = squarefree_part(p)
    if q.degree <= 0:
        return 0
    seq = sturm_sequence(q)
    # V(lo) - V(hi) counts roots in (lo, hi]
    count = _sign_changes(seq, lo) - _sign_changes(seq, hi)
    hi_root, lo_root = q(hi) == 0, q(lo) == 0
    if lo == hi:
        return 0 if open_endpoints else int(lo_root)
    if open_endpoints:
        return count - int(hi_root)
    return count + int(lo_root)


def charpoly(a: IntegerMatrix) -> IntegerPolynomial:
    """det(xI - A) by Faddeev-LeVerrier; every division is exact."""
    n = a.n
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = IntegerMatrix.zero(n)
    ident = IntegerMatrix.identity(n)
    c = 1
    for k in range(1, n + 1):
        m = a * m + ident * c
        am = a * m
        tr = am.trace()
        assert tr % k == 0
        c = -tr // k
        coeffs[n - k] = c
    return IntegerPolynomial(coeffs)
