"""Lifted groups of circle and toral dynamics.

Toral: Z ⋉_A Z^n with (k, v)(k', v') = (k + k', v + A^k v').
Circle: Z ⋉_ε Z, the n = 1 case of the same law with A = (ε), so
(m, n)(m', n') = (m + m', n + ε^m n').
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from orbistack.errors import ContextMismatch, NotUnimodular
from orbistack.exactmath import IntegerMatrix, LatticeBasis, hnf


@dataclass(frozen=True)
class CircleLiftedElement:
    m: int
    n: int
    eps: int = 1

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be ±1, got {self.eps}")

    def __mul__(self, other):
        return multiply(self, other)


@dataclass(frozen=True)
class ToralLiftedElement:
    k: int
    v: tuple[int, ...]
    a: IntegerMatrix

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        if len(self.v) != self.a.n:
            raise ValueError(f"vector length {len(self.v)} for a {self.a.n}x{self.a.n} matrix")

    def __mul__(self, other):
        return multiply(self, other)


def _same_context(x, y):
    if type(x) is not type(y):
        raise ContextMismatch(f"{type(x).__name__} with {type(y).__name__}")
    if isinstance(x, CircleLiftedElement):
        if x.eps != y.eps:
            raise ContextMismatch(f"eps {x.eps} vs {y.eps}")
    elif x.a != y.a:
        raise ContextMismatch(f"matrix {x.a} vs {y.a}")


def _vadd(u, w):
    return tuple(x + y for x, y in zip(u, w))


def identity_like(x):
    if isinstance(x, CircleLiftedElement):
        return CircleLiftedElement(0, 0, x.eps)
    return ToralLiftedElement(0, (0,) * x.a.n, x.a)


def multiply(x, y):
    _same_context(x, y)
    if isinstance(x, CircleLiftedElement):
        return CircleLiftedElement(x.m + y.m, x.n + x.eps ** (x.m % 2) * y.n, x.eps)
    return ToralLiftedElement(x.k + y.k, _vadd(x.v, (x.a ** x.k).apply(y.v)), x.a)


def inverse(x):
    if isinstance(x, CircleLiftedElement):
        # (m, n)^-1 = (-m, -ε^m n) since ε^-m = ε^m
        return CircleLiftedElement(-x.m, -(x.eps ** (x.m % 2)) * x.n, x.eps)
    w = (x.a ** (-x.k)).apply(x.v)
    return ToralLiftedElement(-x.k, tuple(-t for t in w), x.a)


def commutator(x, y):
    """x y x^-1 y^-1."""
    _same_context(x, y)
    return multiply(multiply(multiply(x, y), inverse(x)), inverse(y))


def commutator_closed_form(x: ToralLiftedElement, y: ToralLiftedElement) -> ToralLiftedElement:
    """(0, v + A^n v' - A^n' v - v') for x = (n, v), y = (n', v')."""
    _same_context(x, y)
    a = x.a
    w = _vadd(_vadd(x.v, (a ** x.k).apply(y.v)), tuple(-t for t in (a ** y.k).apply(x.v)))
    return ToralLiftedElement(0, tuple(s - t for s, t in zip(w, y.v)), a)


@dataclass(frozen=True)
class CommutatorLattice:
    basis: LatticeBasis
    k_max: int

    @property
    def index(self):
        return self.basis.index


def commutator_lattice(a: IntegerMatrix, k_max: int = 6) -> CommutatorLattice:
    """Lattice spanned by second components of commutators of generators.

    Uses the columns of I - A^k for 1 <= |k| <= k_max, and the
    commutators [(s, e_i), (t, e_j)] for |s|, |t| <= k_max and unit
    vectors e_i, e_j.  The index is reported, not assumed to be 1.
    """
    if not a.is_unimodular():
        raise NotUnimodular(f"{a} is not in GL_n(Z)")
    if k_max < 1:
        raise ValueError("k_max must be positive")
    n = a.n
    ident = IntegerMatrix.identity(n)
    vectors = []
    for k in range(1, k_max + 1):
        for kk in (k, -k):
            vectors.extend((ident - a ** kk).columns())
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for s, t in product(range(-k_max, k_max + 1), repeat=2):
        for ei, ej in product(units, repeat=2):
            c = commutator(ToralLiftedElement(s, ei, a), ToralLiftedElement(t, ej, a))
            assert c.k == 0
            vectors.append(c.v)
    return CommutatorLattice(hnf(vectors, n), k_max)
