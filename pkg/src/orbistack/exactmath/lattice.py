"""Sublattices of Z^n in Hermite normal form.

Convention: basis vectors b_1..b_r have strictly increasing pivot
coordinates (first nonzero entry), every pivot is positive, and each
entry of an earlier vector in a later vector's pivot coordinate lies in
[0, pivot).  Written as the columns of an n x r matrix this is the
lower-triangular column-style HNF.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


def _pivot(v: Sequence[int]) -> int | None:
    for j, x in enumerate(v):
        if x:
            return j
    return None


def _combine(u, v, a, b):
    return [a * x + b * y for x, y in zip(u, v)]


@dataclass(frozen=True)
class LatticeBasis:
    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def index(self):
        """[Z^n : L], or math.inf when the rank is deficient."""
        if self.rank < self.n:
            return math.inf
        return math.prod(v[_pivot(v)] for v in self.basis)

    def pivots(self) -> list[int]:
        return [_pivot(v) for v in self.basis]

    def __contains__(self, vec: Sequence[int]) -> bool:
        w = list(vec)
        if len(w) != self.n:
            return False
        for b in self.basis:
            j = _pivot(b)
            if any(w[:j]):
                return False
            q, r = divmod(w[j], b[j])
            if r:
                return False
            w = [x - q * y for x, y in zip(w, b)]
        return not any(w)

    def contains_lattice(self, other: LatticeBasis) -> bool:
        return all(v in self for v in other.basis)

    def tolist(self) -> list[list[int]]:
        return [list(v) for v in self.basis]


def hnf(vectors: Iterable[Sequence[int]], n: int) -> LatticeBasis:
    rows = []
    for v in vectors:
        v = [int(x) for x in v]
        if len(v) != n:
            raise ValueError(f"vector {v} does not have length {n}")
        if any(v):
            rows.append(v)
    basis: list[list[int]] = []
    col = 0
    while rows and col < n:
        active = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not active:
            col += 1
            continue
        # Euclid on column `col` until a single row keeps a nonzero entry
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                r = _combine(r, p, 1, -q)
                (nxt if r[col] else rest).append(r)
            active = nxt
        p = active[0]
        if p[col] < 0:
            p = [-x for x in p]
        basis.append(p)
        rows = [r for r in rest if any(r)]
        col += 1
    # reduce earlier vectors modulo later pivots
    for i in range(len(basis)):
        j = _pivot(basis[i])
        for k in range(i):
            q = basis[k][j] // basis[i][j]
            if q:
                basis[k] = _combine(basis[k], basis[i], 1, -q)
    return LatticeBasis(n, tuple(tuple(v) for v in basis))


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Z-basis of {x in Z^ncols : matrix · x = 0}.

    Row-reduces the stacked [matrix^T | I]; rows whose left block vanishes
    span the kernel.
    """
    m = len(matrix)
    aug = [[matrix[i][j] for i in range(m)] + [int(j == k) for k in range(ncols)]
           for j in range(ncols)]
    reduced = hnf(aug, m + ncols)
    return [v[m:] for v in reduced.basis if not any(v[:m])]
