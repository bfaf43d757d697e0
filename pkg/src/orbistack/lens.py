"""Lens spaces L(p, q) at three levels of equivalence.

* homotopy: q*q' = ±x² has a solution mod p
* homeomorphism: q' = ±q^(±1) mod p
* orbit stack of the Z_p action: q' = ±q mod p

Every predicate is decided by direct enumeration mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from orbistack.errors import NotCoprime

LEVELS = ("homotopy", "homeomorphism", "stack")


@dataclass(frozen=True)
class LensParams:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"p must be at least 2, got {self.p}")
        if gcd(self.p, self.q) != 1:
            raise NotCoprime(f"gcd({self.p}, {self.q}) != 1")
        object.__setattr__(self, "q", self.q % self.p)


@lru_cache(maxsize=None)
def _squares(p: int) -> frozenset[int]:
    return frozenset(x * x % p for x in range(p))


def _canon(p: int, *qs: int) -> list[int]:
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    for q in qs:
        if gcd(p, q) != 1:
            raise NotCoprime(f"gcd({p}, {q}) != 1")
    return [q % p for q in qs]


def homotopy_equiv(p: int, q: int, q2: int) -> bool:
    q, q2 = _canon(p, q, q2)
    prod = q * q2 % p
    sq = _squares(p)
    return prod in sq or (-prod) % p in sq


def homeo_equiv(p: int, q: int, q2: int) -> bool:
    q, q2 = _canon(p, q, q2)
    inv = pow(q, -1, p)
    return q2 in {q, (-q) % p, inv, (-inv) % p}


def stack_equiv(p: int, q: int, q2: int) -> bool:
    q, q2 = _canon(p, q, q2)
    return q2 in (q, (-q) % p)


PREDICATES = {
    "homotopy": homotopy_equiv,
    "homeomorphism": homeo_equiv,
    "stack": stack_equiv,
}


def units(p: int) -> list[int]:
    return [q for q in range(1, p) if gcd(p, q) == 1]


class NotAnEquivalence(AssertionError):
    pass


def partition(p: int, pred) -> list[list[int]]:
    """Classes of ``pred`` on the units mod p.

    Raises NotAnEquivalence unless the relation coincides with the
    connected components of its own graph, which holds exactly for a
    reflexive, symmetric and transitive relation.
    """
    qs = units(p)
    table = {(x, y): pred(p, x, y) for x in qs for y in qs}
    for x in qs:
        if not table[x, x]:
            raise NotAnEquivalence(f"p={p}: not reflexive at {x}")
    nbrs = {x: [y for y in qs if table[x, y] or table[y, x]] for x in qs}
    classes: list[list[int]] = []
    seen: set[int] = set()
    for x in qs:
        if x in seen:
            continue
        comp, stack = {x}, [x]
        while stack:
            y = stack.pop()
            for z in nbrs[y]:
                if z not in comp:
                    comp.add(z)
                    stack.append(z)
        seen |= comp
        classes.append(sorted(comp))
    member = {q: i for i, cls in enumerate(classes) for q in cls}
    for (x, y), related in table.items():
        if related != (member[x] == member[y]):
            raise NotAnEquivalence(f"p={p}: relation fails at ({x}, {y})")
    return classes


def classify(p: int) -> dict[str, list[list[int]]]:
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    return {level: partition(p, PREDICATES[level]) for level in LEVELS}
