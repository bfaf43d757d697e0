"""Homography equivalence of rotation numbers.

Two circle rotations with irrational rotation numbers have isomorphic
orbit stacks exactly when the numbers lie in one GL2(Z)-orbit under
homographies.  For rationals and real quadratic irrationals this is
decidable: all rationals form one orbit, the action preserves the field
Q(sqrt d), and inside one field Serret's theorem says two numbers are
equivalent iff their continued fractions eventually agree, i.e. iff the
periods are cyclic rotations of each other.

The full GL2(Z) (determinant ±1) is used throughout.  The SL2(Z)
refinement, which adds a parity condition on the tails, is deliberately
not implemented.

Rational rotations all give the same stack, the product of the circle
with a point modulo Z; only the "all rationals are equivalent" branch
reflects that here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import isqrt

from orbistack.exactmath import IntegerMatrix, QuadraticNumber, qn_apply_homography


@dataclass(frozen=True)
class ContinuedFraction:
    preperiod: tuple[int, ...]
    period: tuple[int, ...] = ()

    @property
    def is_rational(self) -> bool:
        return not self.period

    def digits(self, count: int) -> list[int]:
        """The first ``count`` partial quotients (fewer if finite)."""
        out = list(self.preperiod[:count])
        while len(out) < count and self.period:
            out.extend(self.period)
        return out[:count]

    def __str__(self):
        head = str(self.preperiod[0]) if self.preperiod else ""
        rest = ",".join(map(str, self.preperiod[1:]))
        per = "(" + ",".join(map(str, self.period)) + ")" if self.period else ""
        body = ",".join(x for x in (rest, per) if x)
        return f"[{head}; {body}]" if body else f"[{head}]"


def minimal_period(seq) -> tuple[int, ...]:
    seq = tuple(seq)
    n = len(seq)
    for k in range(1, n + 1):
        if n % k == 0 and seq[:k] * (n // k) == seq:
            return seq[:k]
    return seq


def least_rotation(seq) -> tuple[int, ...]:
    seq = tuple(seq)
    if not seq:
        return seq
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def _rational_cf(num: int, den: int) -> tuple[int, ...]:
    out = []
    while den:
        q, r = divmod(num, den)
        out.append(q)
        num, den = den, r
    # canonical finite form: last digit >= 2 unless it is the only one
    if len(out) > 1 and out[-1] == 1:
        out.pop()
        out[-1] += 1
    return tuple(out)


def surd_form(tau: QuadraticNumber) -> tuple[int, int, int]:
    """(P, D, Q) with tau = (P + sqrt D)/Q and Q dividing D - P*P."""
    a, b, c, d = tau.a, tau.b, tau.c, tau.d
    s = 1 if b > 0 else -1
    p, big_d, q = s * a, b * b * d, s * c
    if (big_d - p * p) % q:
        p, big_d, q = p * abs(q), big_d * q * q, q * abs(q)
    return p, big_d, q


def _surd_floor(p: int, big_d: int, q: int, r: int) -> int:
    # r = isqrt(D) and D is not a square, so sqrt D lies in (r, r + 1)
    if q > 0:
        return (p + r) // q
    return (p + r + 1) // q


def _surd_walk(tau: QuadraticNumber):
    """Partial quotients and the index where the complete quotients cycle."""
    p, big_d, q = surd_form(tau)
    r = isqrt(big_d)
    seen: dict[tuple[int, int], int] = {}
    digits = []
    while (p, q) not in seen:
        seen[(p, q)] = len(digits)
        a = _surd_floor(p, big_d, q, r)
        digits.append(a)
        p = a * q - p
        q = (big_d - p * p) // q
    return digits, seen[(p, q)]


def cf_expand(tau: QuadraticNumber) -> ContinuedFraction:
    if tau.is_rational:
        return ContinuedFraction(_rational_cf(tau.a, tau.c))
    digits, start = _surd_walk(tau)
    if start == 0:
        # a0 always sits in the preperiod; rotate a purely periodic cycle
        return ContinuedFraction((digits[0],), minimal_period(digits[1:] + digits[:1]))
    return ContinuedFraction(tuple(digits[:start]), minimal_period(digits[start:]))


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    reason: str
    witness: IntegerMatrix | None = None

    def __bool__(self):
        return self.equivalent


def _continuant(digits) -> IntegerMatrix:
    """Standard-layout matrix of x -> [d0; d1, ..., x]."""
    m = IntegerMatrix.identity(2)
    for a in digits:
        m = m * IntegerMatrix([[a, 1], [1, 0]])
    return m


def _standard_to_column(m: IntegerMatrix) -> IntegerMatrix:
    # standard [[p, q], [r, s]] : x -> (p x + q)/(r x + s); column layout is the transpose
    return m.transpose()


def _rational_witness(tau: QuadraticNumber, sigma: QuadraticNumber) -> IntegerMatrix:
    # each rational x = C·∞ for the continuant C of its expansion
    ct = _continuant(cf_expand(tau).preperiod)
    cs = _continuant(cf_expand(sigma).preperiod)
    return cs * ct.inverse()


def _irrational_witness(tau: QuadraticNumber, sigma: QuadraticNumber) -> IntegerMatrix | None:
    ft, fs = cf_expand(tau), cf_expand(sigma)
    k = len(fs.period)
    for shift in range(k):
        if fs.period[shift:] + fs.period[:shift] == ft.period:
            break
    else:
        return None
    ct = _continuant(ft.preperiod)
    cs = _continuant(fs.preperiod + fs.period[:shift])
    return cs * ct.inverse()


def homography_witness(tau: QuadraticNumber, sigma: QuadraticNumber) -> IntegerMatrix | None:
    """A column-layout matrix M with qn_apply_homography(M, tau) == sigma, or None."""
    if tau.is_rational != sigma.is_rational:
        return None
    if tau.is_rational:
        m = _rational_witness(tau, sigma)
    else:
        if tau.d != sigma.d:
            return None
        m = _irrational_witness(tau, sigma)
        if m is None:
            return None
    m = _standard_to_column(m)
    assert qn_apply_homography(m, tau) == sigma
    return m


def gl2z_equivalent(tau: QuadraticNumber, sigma: QuadraticNumber) -> Equivalence:
    if tau.is_rational and sigma.is_rational:
        return Equivalence(True, "both rational", homography_witness(tau, sigma))
    if tau.is_rational or sigma.is_rational:
        return Equivalence(False, "one rational, one irrational")
    if tau.d != sigma.d:
        return Equivalence(
            False, f"different quadratic fields Q(sqrt({tau.d})) and Q(sqrt({sigma.d}))"
        )
    pt, ps = cf_expand(tau).period, cf_expand(sigma).period
    if least_rotation(pt) != least_rotation(ps):
        return Equivalence(False, "continued fraction periods differ")
    return Equivalence(
        True, "continued fraction tails coincide", homography_witness(tau, sigma)
    )


@dataclass(frozen=True)
class OracleResult:
    found: bool
    matrix: IntegerMatrix | None
    bound: int


def brute_force_equiv_oracle(
    tau: QuadraticNumber, sigma: QuadraticNumber, bound: int
) -> OracleResult:
    """Search GL2(Z) matrices with entries in [-bound, bound] for M·tau == sigma.

    Only a hit is conclusive.  Among hits the least matrix in row-major
    lexicographic order is returned.  The equation
    a*tau + b == sigma*(c*tau + d) is linear in b, so b is solved for
    rather than enumerated; the candidate set is unchanged.
    """
    miss = OracleResult(False, None, bound)
    if tau.b and sigma.b and tau.d != sigma.d:
        return miss
    t0, t1 = tau.parts()
    st0, st1 = (sigma * tau).parts()
    s0, s1 = sigma.parts()
    best = None
    rng = range(-bound, bound + 1)
    for a, c, d in product(rng, repeat=3):
        # irrational part must vanish: a*t1 - c*st1 - d*s1 == 0
        if a * t1 - c * st1 - d * s1:
            continue
        b = -(a * t0 - c * st0 - d * s0)
        if b.denominator != 1 or abs(b) > bound:
            continue
        b = int(b)
        if a * d - b * c not in (1, -1):
            continue
        key = (a, c, b, d)
        if best is None or key < best:
            best = key
    if best is None:
        return miss
    a, c, b, d = best
    m = IntegerMatrix([[a, c], [b, d]])
    if qn_apply_homography(m, tau) != sigma:
        raise AssertionError(f"oracle candidate {m} fails exact verification")
    return OracleResult(True, m, bound)


def random_unimodular(rng, bound: int) -> IntegerMatrix:
    """Uniform draw from 2x2 GL2(Z) matrices with entries in [-bound, bound]."""
    while True:
        a, b, c, d = (rng.randint(-bound, bound) for _ in range(4))
        if a * d - b * c in (1, -1):
            return IntegerMatrix([[a, b], [c, d]])


def random_quadratic(rng, coef: int = 3, den: int = 3, fields=(2, 3, 5, 6, 7)) -> QuadraticNumber:
    """(a + b sqrt d)/c with |a|, |b| <= coef, 1 <= c <= den; b may be 0."""
    a = rng.randint(-coef, coef)
    b = rng.randint(-coef, coef)
    c = rng.randint(1, den)
    return QuadraticNumber(a, b, c, rng.choice(fields))
