"""Morita morphisms between finite groupoids.

In the discrete model the three smooth conditions (homeomorphism of
orbit spaces, isomorphism of isotropy groups, isomorphism of normal
directions) reduce to: essentially surjective and fully faithful.  The
normal directions are zero-dimensional, and a fully faithful map is
injective on orbits and bijective on isotropy, so with essential
surjectivity the orbit map is a bijection.  ``MoritaVerdict`` reports
both formulations so the equivalence can be checked.

"Properly discontinuous" becomes "free".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from orbistack.errors import (
    InternalCheckFailed,
    MalformedMorphism,
    NotConnected,
    NotMorita,
    NotNormal,
)
from orbistack.groupoid.core import (
    ActionMorphism,
    FiniteAction,
    FiniteGroupoid,
    GroupoidMorphism,
    _components,
    orbits,
)
from orbistack.groupoid.group import FiniteGroup

Morphism = Union[ActionMorphism, GroupoidMorphism]


@dataclass(frozen=True)
class MoritaVerdict:
    essentially_surjective: bool
    fully_faithful: bool
    witness: dict | None
    orbit_map_bijective: bool
    isotropy_isomorphic: bool

    @property
    def morita(self) -> bool:
        return self.essentially_surjective and self.fully_faithful

    def __bool__(self):
        return self.morita

    def as_dict(self) -> dict:
        return {
            "morita": self.morita,
            "essentially_surjective": self.essentially_surjective,
            "fully_faithful": self.fully_faithful,
            "orbit_map_bijective": self.orbit_map_bijective,
            "isotropy_isomorphic": self.isotropy_isomorphic,
            "witness": self.witness,
        }


def _as_groupoid_morphism(mor: Morphism) -> GroupoidMorphism:
    if isinstance(mor, ActionMorphism):
        mor.validate()
        return mor.to_groupoid_morphism()
    return mor.validate()


def is_morita(mor: Morphism) -> MoritaVerdict:
    f = _as_groupoid_morphism(mor)
    d, c = f.domain, f.codomain
    fo, fa = f.obj_map, f.arrow_map

    cod_orbits = orbits(c)
    orbit_of = {y: i for i, o in enumerate(cod_orbits) for y in o}
    reached = {orbit_of[y] for y in fo}
    witness = None
    es = len(reached) == len(cod_orbits)
    if not es:
        missing = next(i for i in range(len(cod_orbits)) if i not in reached)
        witness = {
            "kind": "unreached_orbit",
            "orbit": [c.object_labels[y] for y in cod_orbits[missing]],
        }

    ff = True
    for x in d.objects:
        for y in d.objects:
            src = d.arrows_between(x, y)
            dst = c.arrows_between(fo[x], fo[y])
            images = {fa[a] for a in src}
            if len(images) != len(src) or len(images) != len(dst):
                ff = False
                if witness is None:
                    witness = {
                        "kind": "hom_set",
                        "source": d.object_labels[x],
                        "target": d.object_labels[y],
                        "domain_arrows": len(src),
                        "codomain_arrows": len(dst),
                        "failure": "injectivity" if len(images) != len(src) else "surjectivity",
                    }
                break
        if not ff:
            break

    # the smooth-style formulation, computed independently
    dom_orbits = orbits(d)
    orbit_images = [orbit_of[fo[o[0]]] for o in dom_orbits]
    orbit_bij = len(set(orbit_images)) == len(orbit_images) == len(cod_orbits)
    iso_ok = True
    for x in d.objects:
        loops = d.arrows_between(x, x)
        target_loops = c.arrows_between(fo[x], fo[x])
        if len({fa[a] for a in loops}) != len(loops) or len(loops) != len(target_loops):
            iso_ok = False
            break
    return MoritaVerdict(es, ff, witness, orbit_bij, iso_ok)


def split_raw_morphism(raw: GroupoidMorphism, adjacency=None) -> ActionMorphism:
    """Recover (lam, phi) from a morphism between two action groupoids.

    The first coordinate of raw(g, x) must be locally constant along the
    adjacency (the finite stand-in for continuity on a connected space);
    a jump across an adjacent pair means ``raw`` is not a morphism in this
    setting.  If the domain falls into several adjacency components and the
    first coordinate differs between them, no splitting exists.
    """
    d, c = raw.domain, raw.codomain
    if d.action is None or c.action is None:
        raise ValueError("split_raw_morphism needs action groupoids on both sides")
    raw.validate()
    act, cod = d.action, c.action
    n, m = act.size, cod.size
    if adjacency is None:
        adjacency = act.adjacency
    if adjacency is None:
        comps = [list(range(n))] if n else []
        edges = [(x, y) for x in range(n) for y in range(x + 1, n)]
    else:
        edges = [tuple(e) for e in adjacency]
        comps = _components(n, edges)

    def first(g, x):
        return raw.arrow_map[g * n + x] // m

    for g in act.group.elements:
        for x, y in edges:
            if first(g, x) != first(g, y):
                w = {"kind": "discontinuous", "g": g, "objects": [x, y]}
                raise MalformedMorphism(
                    f"first component jumps across adjacent objects {x}, {y}", w
                )
    lam_by_comp = [tuple(first(g, comp[0]) for g in act.group.elements) for comp in comps]
    if len(set(lam_by_comp)) > 1:
        w = {"kind": "component_dependent", "components": comps, "lambdas": lam_by_comp}
        raise NotConnected("first component differs between adjacency components", w)
    lam = lam_by_comp[0] if lam_by_comp else tuple(c.action.group.identity for _ in act.group.elements)
    return ActionMorphism(act, cod, lam, raw.obj_map).validate()


@dataclass(frozen=True)
class QuotientResult:
    action: FiniteAction
    free: bool
    projection: ActionMorphism
    cosets: tuple[tuple[int, ...], ...]
    orbits: tuple[tuple[int, ...], ...]


def quotient_action(act: FiniteAction, kernel) -> QuotientResult:
    """G/K acting on M/K, with the projection and a freeness flag."""
    g = act.group
    k = frozenset(kernel)
    if not g.is_normal(k):
        raise NotNormal(f"{sorted(k)} is not a normal subgroup of {g.name}")
    cosets, coset_of = [], {}
    for a in g.elements:
        if a not in coset_of:
            cs = tuple(sorted(g.table[a][x] for x in k))
            for y in cs:
                coset_of[y] = len(cosets)
            cosets.append(cs)
    korbits, orbit_of = [], {}
    for x in act.objects:
        if x not in orbit_of:
            o = tuple(sorted({act.table[a][x] for a in k}))
            for y in o:
                orbit_of[y] = len(korbits)
            korbits.append(o)
    qtable = [
        [coset_of[g.table[ci[0]][cj[0]]] for cj in cosets] for ci in cosets
    ]
    qgroup = FiniteGroup(qtable, name=f"{g.name}/K{len(k)}", check=False)
    qact_table = [
        [orbit_of[act.table[c[0]][o[0]]] for o in korbits] for c in cosets
    ]
    adjacency = None
    if act.adjacency is not None:
        adjacency = {
            (orbit_of[x], orbit_of[y]) for x, y in act.adjacency if orbit_of[x] != orbit_of[y]
        }
    labels = tuple(
        act.labels[o[0]] if len(o) == 1 else tuple(act.labels[y] for y in o) for o in korbits
    )
    qact = FiniteAction(qgroup, qact_table, labels=labels, adjacency=adjacency, check=False)
    proj = ActionMorphism(
        act, qact, tuple(coset_of[a] for a in g.elements), tuple(orbit_of[x] for x in act.objects)
    )
    return QuotientResult(qact, act.is_free(k), proj, tuple(cosets), tuple(korbits))


@dataclass(frozen=True)
class Factorization:
    kernel: tuple[int, ...]
    quotient: QuotientResult
    iso: ActionMorphism

    def composite(self) -> ActionMorphism:
        return self.quotient.projection.then(self.iso)


def factor_morita(mor: ActionMorphism) -> Factorization:
    """Split a Morita morphism as a free quotient followed by an isomorphism."""
    mor.validate()
    if not mor.domain.is_connected():
        raise NotConnected("domain adjacency is disconnected")
    verdict = is_morita(mor)
    if not verdict.morita:
        raise NotMorita("refusing to factor a morphism that is not Morita", verdict)
    g = mor.domain.group
    h = mor.codomain.group
    kernel = tuple(a for a in g.elements if mor.lam[a] == h.identity)
    if not mor.domain.is_free(kernel):
        raise InternalCheckFailed(
            "kernel does not act freely", {"kind": "kernel_not_free", "kernel": list(kernel)}
        )
    q = quotient_action(mor.domain, kernel)
    lam_bar, phi_bar = [], []
    for cs in q.cosets:
        vals = {mor.lam[a] for a in cs}
        if len(vals) != 1:
            raise InternalCheckFailed("lambda not constant on a coset", {"coset": list(cs)})
        lam_bar.append(vals.pop())
    for o in q.orbits:
        vals = {mor.phi[x] for x in o}
        if len(vals) != 1:
            raise InternalCheckFailed("phi not constant on a kernel orbit", {"orbit": list(o)})
        phi_bar.append(vals.pop())
    iso = ActionMorphism(q.action, mor.codomain, tuple(lam_bar), tuple(phi_bar)).validate()
    checks = {
        "lambda_bar_injective": len(set(lam_bar)) == len(lam_bar),
        "lambda_bar_surjective": len(set(lam_bar)) == h.order,
        "phi_bar_injective": len(set(phi_bar)) == len(phi_bar),
        "phi_bar_surjective": len(set(phi_bar)) == mor.codomain.size,
    }
    if not all(checks.values()):
        raise InternalCheckFailed(
            "induced morphism on the quotient is not an isomorphism",
            {"kind": "not_isomorphism", **checks},
        )
    return Factorization(kernel, q, iso)


def homotopy_fiber_product(phi: GroupoidMorphism, psi: GroupoidMorphism) -> FiniteGroupoid:
    """Objects (x, k, y) with k: phi(x) -> psi(y); arrows (g, h) with psi(h)∘k = k'∘phi(g)."""
    if isinstance(phi, ActionMorphism):
        phi = phi.to_groupoid_morphism()
    if isinstance(psi, ActionMorphism):
        psi = psi.to_groupoid_morphism()
    kk = phi.codomain
    if psi.codomain is not kk and not _same_groupoid(psi.codomain, kk):
        raise ValueError("fiber product needs a common codomain")
    g, h = phi.domain, psi.domain
    objs = []
    for x in g.objects:
        for y in h.objects:
            for k in kk.arrows_between(phi.obj_map[x], psi.obj_map[y]):
                objs.append((x, k, y))
    obj_index = {o: i for i, o in enumerate(objs)}
    arrows, source, target = [], [], []
    for i, (x, k, y) in enumerate(objs):
        for a in g.arrows_from(x):
            for b in h.arrows_from(y):
                # k' = psi(b) ∘ k ∘ phi(a)^-1
                k2 = kk.compose[(kk.compose[(psi.arrow_map[b], k)], kk.inverse[phi.arrow_map[a]])]
                j = obj_index[(g.target[a], k2, h.target[b])]
                arrows.append((a, b, i))
                source.append(i)
                target.append(j)
    arrow_index = {a: n for n, a in enumerate(arrows)}
    compose = {}
    for n1, (a1, b1, i1) in enumerate(arrows):
        t1 = target[n1]
        x, _, y = objs[t1]
        for a2 in g.arrows_from(x):
            for b2 in h.arrows_from(y):
                n2 = arrow_index[(a2, b2, t1)]
                a3 = g.compose[(a2, a1)]
                b3 = h.compose[(b2, b1)]
                compose[(n2, n1)] = arrow_index[(a3, b3, i1)]
    unit = tuple(arrow_index[(g.unit[x], h.unit[y], i)] for i, (x, _, y) in enumerate(objs))
    inverse = tuple(
        arrow_index[(g.inverse[a], h.inverse[b], target[n])] for n, (a, b, _) in enumerate(arrows)
    )
    labels = tuple(
        (g.object_labels[x], kk.arrow_labels[k], h.object_labels[y]) for x, k, y in objs
    )
    return FiniteGroupoid(
        len(objs),
        tuple(source),
        tuple(target),
        unit,
        inverse,
        compose,
        object_labels=labels,
        arrow_labels=tuple(arrows),
    )


def _same_groupoid(a: FiniteGroupoid, b: FiniteGroupoid) -> bool:
    return (a.source, a.target, a.compose) == (b.source, b.target, b.compose)


@dataclass(frozen=True, eq=False)
class Fraction:
    """A span  G <-alpha- W -beta-> H  with alpha Morita.

    Equivalence of fractions is not implemented.
    """

    alpha: Morphism
    beta: Morphism

    def __post_init__(self):
        da = _as_groupoid_morphism(self.alpha).domain
        db = _as_groupoid_morphism(self.beta).domain
        if da is not db and not _same_groupoid(da, db):
            raise MalformedMorphism("legs of a fraction must share their domain")
        verdict = is_morita(self.alpha)
        if not verdict.morita:
            raise NotMorita("the left leg of a fraction must be Morita", verdict)


def fraction_invertible(fr: Fraction) -> bool:
    return is_morita(fr.beta).morita
