"""Orbit-stack equivalence of hyperbolic toral automorphisms.

f_A and f_B give isomorphic orbit stacks iff A is GL_n(Z)-conjugate to
B or to B^-1.  Conjugacy is decided completely for n = 2 through the
Latimer-MacDuffee correspondence: with θ a root of the shared
characteristic polynomial, A has the eigenvector w_A = (b, θ - a) and
its coordinates span a Z[θ]-module I_A.  A and B are conjugate iff
I_A = γ·I_B for some γ in Q(θ), iff the ratios w_A1/w_A2 and w_B1/w_B2
are homography-equivalent, which the continued-fraction cycles decide.
Any P with (w_B1/w_B2) = P·(w_A1/w_A2) satisfies P A P^-1 = B.

For n > 2 only the bounded search is available, and Unknown is an
honest answer there.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt

from orbistack.errors import DimensionMismatch, NotHyperbolic, NotUnimodular
from orbistack.exactmath import (
    IntegerMatrix,
    IntegerPolynomial,
    QuadraticNumber,
    charpoly,
    count_real_roots_in,
    integer_kernel,
    poly_gcd,
)
from orbistack.rotation import cf_expand, homography_witness

YES, NO, UNKNOWN = "yes", "no", "unknown"


class ReducibleCharpoly(UserWarning):
    pass


@dataclass(frozen=True)
class ConjugacyVerdict:
    status: str
    certificate: IntegerMatrix | None = None
    obstruction: str | None = None
    bound: int | None = None
    method: str = ""
    branch: str | None = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.status not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad status {self.status!r}")


# -- hyperbolicity -------------------------------------------------------------------


def _require_unimodular(a: IntegerMatrix):
    if not a.is_unimodular():
        raise NotUnimodular(f"det {a.det()} of {a} is not ±1")


def _chebyshev_sums(m: int) -> list[IntegerPolynomial]:
    """p_k(w) with z^k + z^-k = p_k(z + 1/z), for k = 0..m."""
    ps = [IntegerPolynomial([2]), IntegerPolynomial([0, 1])]
    w = IntegerPolynomial([0, 1])
    while len(ps) <= m:
        ps.append(w * ps[-1] - ps[-2])
    return ps[: m + 1]


def _trace_polynomial(g: IntegerPolynomial) -> IntegerPolynomial:
    """h with g(z) = z^m h(z + 1/z) for a palindromic g of degree 2m."""
    m = g.degree // 2
    ps = _chebyshev_sums(m)
    h = IntegerPolynomial([g.coeffs[m]])
    for k in range(1, m + 1):
        h = h + ps[k] * g.coeffs[m + k]
    return h


def unit_circle_root_count(f: IntegerPolynomial) -> int | None:
    """Distinct roots of f on the unit circle other than ±1, or None if ±1 is a root."""
    g = poly_gcd(f, f.reversal())
    if g.degree <= 0:
        return 0
    if g(1) == 0 or g(-1) == 0:
        return None
    h = _trace_polynomial(g)
    # each root w of h in (-2, 2) gives the conjugate pair z, 1/z on |z| = 1
    return 2 * count_real_roots_in(h, -2, 2, open_endpoints=True)


def is_hyperbolic(a: IntegerMatrix) -> bool:
    _require_unimodular(a)
    count = unit_circle_root_count(charpoly(a))
    return count == 0


def is_hyperbolic_2x2(a: IntegerMatrix) -> bool:
    """Trace test: det 1 needs |tr| > 2, det -1 needs tr != 0."""
    _require_unimodular(a)
    if a.n != 2:
        raise DimensionMismatch("the trace test is for 2x2 matrices")
    t = a.trace()
    return abs(t) > 2 if a.det() == 1 else t != 0


# -- certificates --------------------------------------------------------------------


def certificate_key(p: IntegerMatrix):
    flat = [x for r in p.rows for x in r]
    return (p.height(), sum(abs(x) for x in flat), tuple(flat))


def normalize_sign(p: IntegerMatrix) -> IntegerMatrix:
    """P and -P conjugate identically; keep the one whose first nonzero entry is positive."""
    for x in (x for r in p.rows for x in r):
        if x:
            return p if x > 0 else -p
    return p


def verifies(p: IntegerMatrix, a: IntegerMatrix, b: IntegerMatrix) -> bool:
    return p.is_unimodular() and p * a == b * p


# -- Latimer-MacDuffee (n = 2) -------------------------------------------------------


@dataclass(frozen=True)
class QuadraticIdeal:
    """The Z-module q·Z + (p + θ)·Z inside Q(θ), θ the larger root of x² - t x + δ."""

    q: int
    p: int
    trace: int
    det: int

    def __post_init__(self):
        if self.q <= 0:
            raise ValueError("q must be positive")
        object.__setattr__(self, "p", self.p % self.q)

    @property
    def discriminant(self) -> int:
        return self.trace * self.trace - 4 * self.det

    def theta(self) -> QuadraticNumber:
        return QuadraticNumber(self.trace, 1, 2, self.discriminant)

    def ratio(self) -> QuadraticNumber:
        return (self.theta() + self.p) / self.q

    def is_module(self) -> bool:
        """Closed under multiplication by θ."""
        # θ·q and θ·(p + θ) must be integer combinations of q and p + θ
        t, d, q, p = self.trace, self.det, self.q, self.p
        # θ·q = q(p + θ) - q p         -> always in the module
        # θ(p + θ) = pθ + tθ - d = (p + t)(p + θ) - p(p + t) - d
        return (p * (p + t) + d) % q == 0

    @classmethod
    def from_matrix(cls, a: IntegerMatrix) -> QuadraticIdeal:
        (x, y), (_, _) = a.rows
        if y == 0:
            raise ValueError("upper-right entry 0: characteristic polynomial is reducible")
        # Z·y + Z·(θ - x) = Z·|y| + Z·(θ - x)
        return cls(abs(y), -x, a.trace(), a.det())


def _eigen_ratio(a: IntegerMatrix) -> QuadraticNumber:
    """w1/w2 for the θ-eigenvector w = (b, θ - a) of [[a, b], [c, d]]."""
    (x, y), _ = a.rows
    t, d = a.trace(), a.det()
    theta = QuadraticNumber(t, 1, 2, t * t - 4 * d)
    return QuadraticNumber(y) / (theta - x)


def _stabilizer_generator(xi: QuadraticNumber) -> IntegerMatrix:
    """Standard-layout generator of {M : M·xi = xi} modulo ±I."""
    cf = cf_expand(xi)
    pre = IntegerMatrix.identity(2)
    for a in cf.preperiod:
        pre = pre * IntegerMatrix([[a, 1], [1, 0]])
    per = IntegerMatrix.identity(2)
    for a in cf.period:
        per = per * IntegerMatrix([[a, 1], [1, 0]])
    return pre * per * pre.inverse()


def _reduce_certificate(p: IntegerMatrix, u: IntegerMatrix) -> IntegerMatrix:
    """Smallest ±P·U^k under certificate_key."""
    best = normalize_sign(p)
    best_key = certificate_key(best)
    for step in (u, u.inverse()):
        cur, worse = p, 0
        while worse < 3:
            cur = cur * step
            cand = normalize_sign(cur)
            key = certificate_key(cand)
            if key < best_key:
                best, best_key, worse = cand, key, 0
            else:
                worse += 1
    return best


def latimer_macduffee(a: IntegerMatrix, b: IntegerMatrix) -> ConjugacyVerdict:
    """Complete decision for 2x2 matrices with irreducible, real-split charpoly."""
    xa, xb = _eigen_ratio(a), _eigen_ratio(b)
    ia, ib = QuadraticIdeal.from_matrix(a), QuadraticIdeal.from_matrix(b)
    w = homography_witness(xa, xb)
    if w is None:
        return ConjugacyVerdict(
            NO,
            obstruction=f"distinct ideal classes: q={ia.q}, p={ia.p} vs q={ib.q}, p={ib.p}",
            method="lm",
        )
    p = w.transpose()  # homography_witness answers in the column layout
    if not verifies(p, a, b):
        raise AssertionError(f"reconstructed certificate {p} fails for {a}, {b}")
    cert = _reduce_certificate(p, _stabilizer_generator(xa))
    assert verifies(cert, a, b)
    return ConjugacyVerdict(YES, certificate=cert, method="lm")


# -- bounded search --------------------------------------------------------------------


def bounded_search(a: IntegerMatrix, b: IntegerMatrix, bound: int) -> ConjugacyVerdict:
    """Every unimodular P with entries in [-bound, bound] and P A = B P.

    P A = B P is linear in the entries of P, so the search runs over the
    integer solution lattice: fix the values of a set of pivot entries in
    [-bound, bound], solve for the lattice coordinates, and keep integral
    solutions inside the box.  The set of candidates is exactly the set a
    naive scan of all (2*bound + 1)^(n*n) matrices would accept.
    """
    n = a.n
    # linear map vec(P) -> vec(P A - B P), row-major vec
    rows = []
    for i, j in product(range(n), repeat=2):
        coeffs = [0] * (n * n)
        for k in range(n):
            coeffs[i * n + k] += a[k, j]
            coeffs[k * n + j] -= b[i, k]
        rows.append(coeffs)
    basis = integer_kernel(rows, n * n)
    hits = []
    if basis:
        hits = _box_points(basis, n * n, bound)
    certs = set()
    for flat in hits:
        p = IntegerMatrix([flat[i * n:(i + 1) * n] for i in range(n)])
        if p.is_unimodular():
            certs.add(normalize_sign(p))
    if not certs:
        return ConjugacyVerdict(UNKNOWN, bound=bound, method="search")
    best = min(certs, key=certificate_key)
    assert verifies(best, a, b)
    return ConjugacyVerdict(YES, certificate=best, bound=bound, method="search")


def _box_points(basis, dim, bound):
    """Integer combinations of ``basis`` with every coordinate in [-bound, bound]."""
    r = len(basis)
    cols = list(range(dim))
    # pick r coordinates with a nonzero minor, greedy by elimination
    chosen, m = [], [[Fraction(v[j]) for j in cols] for v in basis]
    work = [row[:] for row in m]
    for i in range(r):
        j = next(j for j in cols if j not in chosen and work[i][j] != 0)
        chosen.append(j)
        for k in range(i + 1, r):
            f = work[k][j] / work[i][j]
            work[k] = [x - f * y for x, y in zip(work[k], work[i])]
    minor = [[m[i][j] for j in chosen] for i in range(r)]  # r x r, row i = basis i
    inv = _invert(minor)
    out = []
    for values in product(range(-bound, bound + 1), repeat=r):
        # coefficients c with sum_i c_i basis_i[chosen] = values
        coef = [sum(values[k] * inv[k][i] for k in range(r)) for i in range(r)]
        if any(c.denominator != 1 for c in coef):
            continue
        vec = [sum(int(c) * v[j] for c, v in zip(coef, basis)) for j in cols]
        if all(abs(x) <= bound for x in vec):
            out.append(tuple(vec))
    return out


def _invert(m):
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


# -- public decisions ----------------------------------------------------------------

_METHODS = {"lm": "lm", "latimer_macduffee": "lm", "search": "search", "bounded_search": "search"}


def glnz_conjugate(
    a: IntegerMatrix, b: IntegerMatrix, method: str = "lm", bound: int = 20
) -> ConjugacyVerdict:
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n}x{a.n} vs {b.n}x{b.n}")
    _require_unimodular(a)
    _require_unimodular(b)
    method = _METHODS.get(method)
    if method is None:
        raise ValueError("method must be one of " + ", ".join(sorted(_METHODS)))
    if charpoly(a) != charpoly(b):
        return ConjugacyVerdict(NO, obstruction="charpoly mismatch", method=method)
    if method == "lm" and a.n == 2:
        t, d = a.trace(), a.det()
        disc = t * t - 4 * d
        if disc > 0 and isqrt(disc) ** 2 != disc:
            return latimer_macduffee(a, b)
        why = "reducible characteristic polynomial" if disc >= 0 else "complex eigenvalues"
        warnings.warn(f"{why}: falling back to bounded search", ReducibleCharpoly, stacklevel=2)
        v = bounded_search(a, b, bound)
        return ConjugacyVerdict(v.status, v.certificate, v.obstruction, v.bound, "search",
                                notes=(f"{why}; bounded search used",))
    if method == "lm":
        v = bounded_search(a, b, bound)
        return ConjugacyVerdict(v.status, v.certificate, v.obstruction, v.bound, "search",
                                notes=("n > 2: only bounded search is available",))
    return bounded_search(a, b, bound)


def toral_stack_equiv(
    a: IntegerMatrix, b: IntegerMatrix, method: str = "lm", bound: int = 20
) -> ConjugacyVerdict:
    """Yes iff A is conjugate to B or to B^-1; ``branch`` says which decided."""
    for m, name in ((a, "A"), (b, "B")):
        if not is_hyperbolic(m):
            raise NotHyperbolic(f"{name} = {m} has an eigenvalue of modulus 1")
    direct = glnz_conjugate(a, b, method, bound)
    if direct.status == YES:
        return _with_branch(direct, "direct")
    inverted = glnz_conjugate(a, b.inverse(), method, bound)
    if inverted.status == YES:
        return _with_branch(inverted, "inverse")
    if direct.status == NO and inverted.status == NO:
        return ConjugacyVerdict(
            NO,
            obstruction=f"A~B: {direct.obstruction}; A~B^-1: {inverted.obstruction}",
            method=direct.method,
            branch="both",
        )
    return ConjugacyVerdict(
        UNKNOWN,
        bound=bound,
        method=direct.method,
        branch="both",
        notes=direct.notes + inverted.notes,
    )


def _with_branch(v: ConjugacyVerdict, branch: str) -> ConjugacyVerdict:
    return ConjugacyVerdict(v.status, v.certificate, v.obstruction, v.bound, v.method, branch, v.notes)
