"""Finite groups given by multiplication tables over elements 0..k-1."""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence


class GroupAxiomError(ValueError):
    pass


class FiniteGroup:
    __slots__ = ("table", "order", "identity", "inverse", "name", "labels")

    def __init__(self, table: Sequence[Sequence[int]], name: str = "", labels=None, check=True):
        table = tuple(tuple(int(x) for x in row) for row in table)
        k = len(table)
        if k == 0 or any(len(row) != k for row in table):
            raise GroupAxiomError("multiplication table must be a nonempty square")
        ids = [e for e in range(k) if all(table[e][x] == x == table[x][e] for x in range(k))]
        if len(ids) != 1:
            raise GroupAxiomError("no two-sided identity")
        e = ids[0]
        inv = []
        for g in range(k):
            hs = [h for h in range(k) if table[g][h] == e and table[h][g] == e]
            if not hs:
                raise GroupAxiomError(f"element {g} has no inverse")
            inv.append(hs[0])
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "order", k)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", tuple(inv))
        object.__setattr__(self, "name", name or f"G{k}")
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else None)
        if check:
            self._check()

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    def _check(self):
        t, k = self.table, self.order
        for row in t:
            if any(not 0 <= x < k for x in row) or len(set(row)) != k:
                raise GroupAxiomError("table rows must be permutations of the elements")
        for a, b, c in product(range(k), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupAxiomError(f"associativity fails at ({a}, {b}, {c})")

    def __eq__(self, other):
        if isinstance(other, FiniteGroup):
            return self.table == other.table
        return NotImplemented

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def power(self, g: int, n: int) -> int:
        if n < 0:
            g, n = self.inverse[g], -n
        out = self.identity
        for _ in range(n):
            out = self.table[out][g]
        return out

    def element_order(self, g: int) -> int:
        n, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            n += 1
        return n

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in self.elements)

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        els = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in els:
                        els.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(els)

    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by element order."""
        gens: list[int] = []
        span = frozenset([self.identity])
        for g in sorted(self.elements, key=lambda x: (-self.element_order(x), x)):
            if len(span) == self.order:
                break
            if g not in span:
                gens.append(g)
                span = self.generated(gens)
        return tuple(gens)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        if self.identity not in s:
            return False
        return all(self.table[a][self.inverse[b]] in s for a in s for b in s)

    def is_normal(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        if not self.is_subgroup(s):
            return False
        t, inv = self.table, self.inverse
        return all(t[t[g][k]][inv[g]] in s for g in self.elements for k in s)

    def conjugate_set(self, subset: Iterable[int], g: int) -> frozenset[int]:
        t, inv = self.table, self.inverse
        return frozenset(t[t[g][k]][inv[g]] for k in subset)

    def subgroups(self) -> list[frozenset[int]]:
        """All subgroups, found as closures of at most two generators.

        Sufficient for every group of order < 8 handled here; larger groups
        may need more generators and are not enumerated completely.
        """
        found = {self.generated([a, b]) for a in self.elements for b in self.elements}
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def subgroup_classes(self) -> list[frozenset[int]]:
        """One representative (the least) of each conjugacy class of subgroups."""
        reps = []
        seen: set[frozenset[int]] = set()
        for s in self.subgroups():
            if s in seen:
                continue
            cls = {self.conjugate_set(s, g) for g in self.elements}
            seen |= cls
            reps.append(min(cls, key=lambda c: sorted(c)))
        return reps

    def normal_subgroups(self) -> list[frozenset[int]]:
        return [s for s in self.subgroups() if self.is_normal(s)]


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], name=f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    k = h.order
    table = [
        [g.table[a // k][b // k] * k + h.table[a % k][b % k] for b in range(g.order * k)]
        for a in range(g.order * k)
    ]
    return FiniteGroup(table, name=f"{g.name}x{h.name}")


def from_permutations(gens: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Permutation group generated by ``gens``; elements sorted lexicographically."""
    n = len(gens[0])
    ident = tuple(range(n))
    els = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(n))
                if y not in els:
                    els.add(y)
                    nxt.append(y)
        frontier = nxt
    perms = sorted(els)
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i)): apply q first
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(table, name=name or f"Perm{len(perms)}", labels=perms)


def symmetric(n: int) -> FiniteGroup:
    if n < 2:
        return FiniteGroup([[0]], name=f"S{n}", labels=[tuple(range(n))])
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return from_permutations(gens, name=f"S{n}")


def small_groups(max_order: int = 6) -> list[FiniteGroup]:
    """One group from each isomorphism class of order <= max_order (max 7)."""
    if max_order > 7:
        raise ValueError("only orders up to 7 are tabulated")
    out = []
    for n in range(1, max_order + 1):
        out.append(cyclic(n))
        if n == 4:
            out.append(direct_product(cyclic(2), cyclic(2)))
        if n == 6:
            out.append(symmetric(3))
    return out


def homomorphisms(g: FiniteGroup, h: FiniteGroup) -> list[tuple[int, ...]]:
    """Every group homomorphism g -> h as a tuple of images, in lexicographic order."""
    gens = g.generators()
    # express every element of g as a word in the generators
    words = {g.identity: ()}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for i, s in enumerate(gens):
                y = g.table[x][s]
                if y not in words:
                    words[y] = words[x] + (i,)
                    nxt.append(y)
        frontier = nxt
    out = []
    for images in product(h.elements, repeat=len(gens)):
        lam = []
        for x in g.elements:
            y = h.identity
            for i in words[x]:
                y = h.table[y][images[i]]
            lam.append(y)
        if all(
            lam[g.table[a][b]] == h.table[lam[a]][lam[b]]
            for a in g.elements
            for b in g.elements
        ):
            out.append(tuple(lam))
    return sorted(set(out))


def is_homomorphism(g: FiniteGroup, h: FiniteGroup, lam: Sequence[int]) -> bool:
    if len(lam) != g.order or any(not 0 <= y < h.order for y in lam):
        return False
    return all(
        lam[g.table[a][b]] == h.table[lam[a]][lam[b]] for a in g.elements for b in g.elements
    )


def automorphisms(g: FiniteGroup) -> list[tuple[int, ...]]:
    return [lam for lam in homomorphisms(g, g) if len(set(lam)) == g.order]
