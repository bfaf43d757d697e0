"""Finite model of action groupoids, Morita morphisms and fractions."""

from orbistack.groupoid.group import (
    FiniteGroup,
    automorphisms,
    cyclic,
    direct_product,
    from_permutations,
    homomorphisms,
    small_groups,
    symmetric,
)
from orbistack.groupoid.core import (
    ActionMorphism,
    FiniteAction,
    FiniteGroupoid,
    GroupoidMorphism,
    action_groupoid,
    action_morphisms,
    enumerate_actions,
    identity_morphism,
    isotropy,
    orbits,
    unit_groupoid,
    unit_inclusion,
)
from orbistack.groupoid.morita import (
    Factorization,
    Fraction,
    MoritaVerdict,
    QuotientResult,
    factor_morita,
    fraction_invertible,
    homotopy_fiber_product,
    is_morita,
    quotient_action,
    split_raw_morphism,
)

__all__ = [
    "FiniteGroup", "automorphisms", "cyclic", "direct_product", "from_permutations",
    "homomorphisms", "small_groups", "symmetric",
    "ActionMorphism", "FiniteAction", "FiniteGroupoid", "GroupoidMorphism",
    "action_groupoid", "action_morphisms", "enumerate_actions", "identity_morphism",
    "isotropy", "orbits", "unit_groupoid", "unit_inclusion",
    "Factorization", "Fraction", "MoritaVerdict", "QuotientResult", "factor_morita",
    "fraction_invertible", "homotopy_fiber_product", "is_morita", "quotient_action",
    "split_raw_morphism",
]
