"""Finite actions, finite groupoids, and morphisms between them.

This is the discrete truncation of the smooth picture: manifolds become
finite sets, and an optional adjacency relation on objects stands in for
connectedness.  Without an explicit adjacency the object set counts as
connected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Sequence

from orbistack.errors import MalformedMorphism
from orbistack.groupoid.group import FiniteGroup, homomorphisms, is_homomorphism


class ActionAxiomError(ValueError):
    pass


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in edges:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


class FiniteAction:
    """A finite group acting on objects 0..n-1; ``table[g][x]`` is g·x."""

    __slots__ = ("group", "table", "size", "labels", "adjacency", "_gpd")

    def __init__(
        self,
        group: FiniteGroup,
        table: Sequence[Sequence[int]],
        labels: Sequence[Hashable] | None = None,
        adjacency: Iterable[tuple[int, int]] | None = None,
        check: bool = True,
    ):
        table = tuple(tuple(int(y) for y in row) for row in table)
        size = len(table[0]) if table else 0
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "size", size)
        object.__setattr__(
            self, "labels", tuple(labels) if labels is not None else tuple(range(size))
        )
        if adjacency is not None:
            adjacency = frozenset(tuple(sorted((int(x), int(y)))) for x, y in adjacency)
        object.__setattr__(self, "adjacency", adjacency)
        object.__setattr__(self, "_gpd", None)
        if check:
            self._check()

    def __setattr__(self, name, value):
        raise AttributeError("FiniteAction is immutable")

    def _check(self):
        g, t, n = self.group, self.table, self.size
        if len(t) != g.order or any(len(row) != n for row in t):
            raise ActionAxiomError("action table must have one row per group element")
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise ActionAxiomError("object labels must be distinct, one per object")
        for row in t:
            if sorted(row) != list(range(n)):
                raise ActionAxiomError("each g must act by a bijection")
        if t[g.identity] != tuple(range(n)):
            raise ActionAxiomError("the identity must act trivially")
        for a, b in product(g.elements, repeat=2):
            ab = g.table[a][b]
            for x in range(n):
                if t[a][t[b][x]] != t[ab][x]:
                    raise ActionAxiomError(f"g(hx) != (gh)x at g={a}, h={b}, x={x}")
        if self.adjacency is not None:
            for x, y in self.adjacency:
                if not (0 <= x < n and 0 <= y < n):
                    raise ActionAxiomError(f"adjacency pair ({x}, {y}) out of range")

    def __eq__(self, other):
        if isinstance(other, FiniteAction):
            return (self.group, self.table, self.adjacency) == (
                other.group,
                other.table,
                other.adjacency,
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.group, self.table))

    def __repr__(self):
        return f"FiniteAction({self.group.name} on {self.size} objects)"

    @property
    def objects(self) -> range:
        return range(self.size)

    def act(self, g: int, x: int) -> int:
        return self.table[g][x]

    def stabilizer(self, x: int) -> frozenset[int]:
        return frozenset(g for g in self.group.elements if self.table[g][x] == x)

    def orbit(self, x: int) -> frozenset[int]:
        return frozenset(row[x] for row in self.table)

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for x in self.objects:
            if x not in seen:
                o = sorted(self.orbit(x))
                seen.update(o)
                out.append(o)
        return out

    def is_free(self, subset: Iterable[int] | None = None) -> bool:
        elems = self.group.elements if subset is None else subset
        e = self.group.identity
        return all(
            self.table[g][x] != x for g in elems if g != e for x in self.objects
        )

    def adjacency_components(self) -> list[list[int]]:
        if self.adjacency is None:
            return [list(self.objects)] if self.size else []
        return _components(self.size, self.adjacency)

    def is_connected(self) -> bool:
        return len(self.adjacency_components()) <= 1

    def with_adjacency(self, adjacency) -> FiniteAction:
        return FiniteAction(self.group, self.table, self.labels, adjacency, check=False)

    def groupoid(self) -> FiniteGroupoid:
        """The action groupoid, built once and cached."""
        if self._gpd is None:
            object.__setattr__(self, "_gpd", action_groupoid(self))
        return self._gpd


@dataclass(eq=False)
class FiniteGroupoid:
    """Objects 0..n-1 and arrows 0..m-1 with explicit structure maps.

    ``compose[(b, a)]`` is b∘a (a first), defined iff target(a) == source(b).
    """

    n_objects: int
    source: tuple[int, ...]
    target: tuple[int, ...]
    unit: tuple[int, ...]
    inverse: tuple[int, ...]
    compose: dict[tuple[int, int], int]
    object_labels: tuple = ()
    arrow_labels: tuple = ()
    action: FiniteAction | None = None
    hom: dict[tuple[int, int], list[int]] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.object_labels:
            self.object_labels = tuple(range(self.n_objects))
        if not self.arrow_labels:
            self.arrow_labels = tuple(range(len(self.source)))
        hom: dict[tuple[int, int], list[int]] = {}
        for a, (s, t) in enumerate(zip(self.source, self.target)):
            hom.setdefault((s, t), []).append(a)
        self.hom = hom

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def arrows(self) -> range:
        return range(len(self.source))

    def arrows_between(self, x: int, y: int) -> list[int]:
        return self.hom.get((x, y), [])

    def arrows_from(self, x: int) -> list[int]:
        return [a for a in self.arrows if self.source[a] == x]

    def check(self):
        """Verify every groupoid axiom; raises ValueError on the first failure."""
        src, tgt, comp = self.source, self.target, self.compose
        for a in self.arrows:
            for b in self.arrows_from(tgt[a]):
                c = comp.get((b, a))
                if c is None:
                    raise ValueError(f"composite {b}∘{a} missing")
                if src[c] != src[a] or tgt[c] != tgt[b]:
                    raise ValueError(f"composite {b}∘{a} has wrong endpoints")
        for (b, a) in comp:
            if tgt[a] != src[b]:
                raise ValueError(f"composite {b}∘{a} defined on non-composable pair")
        for x in self.objects:
            u = self.unit[x]
            if src[u] != x or tgt[u] != x:
                raise ValueError(f"unit at {x} is not a loop")
        for a in self.arrows:
            if comp[(self.unit[tgt[a]], a)] != a or comp[(a, self.unit[src[a]])] != a:
                raise ValueError(f"unit law fails at arrow {a}")
            i = self.inverse[a]
            if comp[(i, a)] != self.unit[src[a]] or comp[(a, i)] != self.unit[tgt[a]]:
                raise ValueError(f"inverse law fails at arrow {a}")
        for a in self.arrows:
            for b in self.arrows_from(tgt[a]):
                for c in self.arrows_from(tgt[b]):
                    if comp[(c, comp[(b, a)])] != comp[(comp[(c, b)], a)]:
                        raise ValueError(f"associativity fails at {c}, {b}, {a}")
        return True


def action_groupoid(act: FiniteAction) -> FiniteGroupoid:
    """Arrows (g, x) from x to g·x, indexed g*n + x; (h, gx)∘(g, x) = (hg, x)."""
    g, n = act.group, act.size
    source, target, labels = [], [], []
    for a in g.elements:
        for x in act.objects:
            source.append(x)
            target.append(act.table[a][x])
            labels.append((a, act.labels[x]))
    compose = {}
    for a in g.elements:
        for x in act.objects:
            ax = act.table[a][x]
            for b in g.elements:
                compose[(b * n + ax, a * n + x)] = g.table[b][a] * n + x
    unit = tuple(g.identity * n + x for x in act.objects)
    inverse = tuple(
        g.inverse[a] * n + act.table[a][x] for a in g.elements for x in act.objects
    )
    return FiniteGroupoid(
        n,
        tuple(source),
        tuple(target),
        unit,
        inverse,
        compose,
        object_labels=act.labels,
        arrow_labels=tuple(labels),
        action=act,
    )


def unit_groupoid(labels: Sequence[Hashable]) -> FiniteGroupoid:
    n = len(labels)
    return FiniteGroupoid(
        n,
        tuple(range(n)),
        tuple(range(n)),
        tuple(range(n)),
        tuple(range(n)),
        {(x, x): x for x in range(n)},
        object_labels=tuple(labels),
    )


def orbits(gpd: FiniteGroupoid) -> list[list[int]]:
    """Connected components of the arrow relation, ordered by least object."""
    return _components(gpd.n_objects, zip(gpd.source, gpd.target))


def isotropy(gpd: FiniteGroupoid, x: int) -> FiniteGroup:
    """The group of loops at x; ``labels`` holds the arrow index of each element."""
    loops = gpd.arrows_between(x, x)
    pos = {a: i for i, a in enumerate(loops)}
    # product a*b is the composite a∘b (b first)
    table = [[pos[gpd.compose[(a, b)]] for b in loops] for a in loops]
    return FiniteGroup(table, name=f"Iso({gpd.object_labels[x]})", labels=loops, check=False)


# -- morphisms ---------------------------------------------------------------


@dataclass(eq=False)
class GroupoidMorphism:
    domain: FiniteGroupoid
    codomain: FiniteGroupoid
    obj_map: tuple[int, ...]
    arrow_map: tuple[int, ...]

    def __post_init__(self):
        self.obj_map = tuple(self.obj_map)
        self.arrow_map = tuple(self.arrow_map)

    def functoriality_failure(self) -> dict | None:
        d, c = self.domain, self.codomain
        f, fa = self.obj_map, self.arrow_map
        if len(f) != d.n_objects or len(fa) != len(d.source):
            return {"kind": "shape", "detail": "map sizes do not match the domain"}
        if any(not 0 <= y < c.n_objects for y in f) or any(
            not 0 <= b < len(c.source) for b in fa
        ):
            return {"kind": "shape", "detail": "image outside the codomain"}
        for a in d.arrows:
            b = fa[a]
            if c.source[b] != f[d.source[a]] or c.target[b] != f[d.target[a]]:
                return {"kind": "endpoints", "arrow": a}
        for x in d.objects:
            if fa[d.unit[x]] != c.unit[f[x]]:
                return {"kind": "unit", "object": x}
        for (b, a), ba in d.compose.items():
            if fa[ba] != c.compose[(fa[b], fa[a])]:
                return {"kind": "composition", "arrows": [b, a]}
        return None

    def validate(self) -> GroupoidMorphism:
        failure = self.functoriality_failure()
        if failure is not None:
            raise MalformedMorphism(f"not a groupoid morphism: {failure}", failure)
        return self

    def then(self, other: GroupoidMorphism) -> GroupoidMorphism:
        """other ∘ self."""
        return GroupoidMorphism(
            self.domain,
            other.codomain,
            tuple(other.obj_map[y] for y in self.obj_map),
            tuple(other.arrow_map[b] for b in self.arrow_map),
        )

    def to_groupoid_morphism(self) -> GroupoidMorphism:
        return self


def identity_morphism(gpd: FiniteGroupoid) -> GroupoidMorphism:
    return GroupoidMorphism(gpd, gpd, tuple(gpd.objects), tuple(gpd.arrows))


def unit_inclusion(gpd: FiniteGroupoid) -> GroupoidMorphism:
    """The inclusion of the objects, as a unit groupoid, into ``gpd``."""
    units = unit_groupoid(gpd.object_labels)
    return GroupoidMorphism(units, gpd, tuple(gpd.objects), tuple(gpd.unit))


@dataclass(frozen=True, eq=False)
class ActionMorphism:
    """A split morphism (g, x) -> (lam[g], phi[x]) of action groupoids."""

    domain: FiniteAction
    codomain: FiniteAction
    lam: tuple[int, ...]
    phi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        object.__setattr__(self, "phi", tuple(self.phi))

    def __eq__(self, other):
        if isinstance(other, ActionMorphism):
            return (self.domain, self.codomain, self.lam, self.phi) == (
                other.domain,
                other.codomain,
                other.lam,
                other.phi,
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.lam, self.phi))

    def failure(self) -> dict | None:
        d, c = self.domain, self.codomain
        if len(self.phi) != d.size or any(not 0 <= y < c.size for y in self.phi):
            return {"kind": "shape", "detail": "phi does not map objects to objects"}
        if not is_homomorphism(d.group, c.group, self.lam):
            return {"kind": "homomorphism", "detail": "lambda is not a group homomorphism"}
        for g in d.group.elements:
            for x in d.objects:
                if self.phi[d.table[g][x]] != c.table[self.lam[g]][self.phi[x]]:
                    return {"kind": "equivariance", "g": g, "x": x}
        return None

    def validate(self) -> ActionMorphism:
        f = self.failure()
        if f is not None:
            raise MalformedMorphism(f"not an action morphism: {f}", f)
        return self

    def to_groupoid_morphism(self) -> GroupoidMorphism:
        n, m = self.domain.size, self.codomain.size
        arrows = tuple(
            self.lam[g] * m + self.phi[x]
            for g in self.domain.group.elements
            for x in range(n)
        )
        return GroupoidMorphism(
            self.domain.groupoid(), self.codomain.groupoid(), self.phi, arrows
        )

    def then(self, other: ActionMorphism) -> ActionMorphism:
        """other ∘ self."""
        return ActionMorphism(
            self.domain,
            other.codomain,
            tuple(other.lam[h] for h in self.lam),
            tuple(other.phi[y] for y in self.phi),
        )

    @classmethod
    def identity(cls, act: FiniteAction) -> ActionMorphism:
        return cls(act, act, tuple(act.group.elements), tuple(act.objects))


# -- enumeration ----------------------------------------------------------------


def coset_action(group: FiniteGroup, subgroup: frozenset[int]) -> list[list[int]]:
    """Table of the left-multiplication action on cosets gS, ordered by least element."""
    cosets = []
    seen = set()
    for g in group.elements:
        if g not in seen:
            c = frozenset(group.table[g][s] for s in subgroup)
            seen |= c
            cosets.append(c)
    index = {x: i for i, c in enumerate(cosets) for x in c}
    return [[index[group.table[g][min(c)]] for c in cosets] for g in group.elements]


def _multisets(items, total, start=0):
    """Multisets of (item, weight) pairs whose weights sum to ``total``."""
    if total == 0:
        yield ()
        return
    for i in range(start, len(items)):
        item, w = items[i]
        if w <= total:
            for rest in _multisets(items, total - w, i):
                yield (item,) + rest


def enumerate_actions(group: FiniteGroup, max_points: int, min_points: int = 1) -> list[FiniteAction]:
    """Every action on at most ``max_points`` objects, one per isomorphism class.

    Actions are disjoint unions of coset spaces G/S with S running over
    conjugacy classes of subgroups.
    """
    blocks = []
    for s in group.subgroup_classes():
        blocks.append((coset_action(group, s), group.order // len(s)))
    out = []
    for m in range(min_points, max_points + 1):
        for combo in _multisets(blocks, m):
            table = [[] for _ in group.elements]
            offset = 0
            for block in combo:
                k = len(block[0])
                for g in group.elements:
                    table[g].extend(offset + y for y in block[g])
                offset += k
            out.append(FiniteAction(group, table, check=False))
    return out


def action_morphisms(dom: FiniteAction, cod: FiniteAction) -> list[ActionMorphism]:
    """All split morphisms dom -> cod, in a deterministic order."""
    out = []
    orbit_reps = [o[0] for o in dom.orbits()]
    for lam in homomorphisms(dom.group, cod.group):
        choices = []
        for r in orbit_reps:
            img = {lam[g] for g in dom.stabilizer(r)}
            choices.append([y for y in cod.objects if img <= cod.stabilizer(y)])
        for ys in product(*choices):
            phi = [None] * dom.size
            for r, y in zip(orbit_reps, ys):
                for g in dom.group.elements:
                    phi[dom.table[g][r]] = cod.table[lam[g]][y]
            out.append(ActionMorphism(dom, cod, lam, tuple(phi)))
    return out
