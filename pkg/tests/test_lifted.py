import math
import random

from hypothesis import given, settings, strategies as st
from pytest import raises

from orbistack.errors import ContextMismatch, NotUnimodular
from orbistack.exactmath import IntegerMatrix, hnf
from orbistack.lifted import (
    CircleLiftedElement,
    ToralLiftedElement,
    commutator,
    commutator_closed_form,
    commutator_lattice,
    identity_like,
    inverse,
    multiply,
)

CAT = IntegerMatrix([[2, 1], [1, 1]])
MATRICES = [
    CAT,
    IntegerMatrix([[0, 1], [1, 1]]),
    IntegerMatrix([[3, 1], [2, 1]]),
    IntegerMatrix([[1, 1, 0], [0, 1, 1], [1, 0, 0]]),
    IntegerMatrix([[-1, 0], [0, 1]]),
]

small = st.integers(-4, 4)


def toral(a):
    return st.builds(lambda k, v: ToralLiftedElement(k, v, a), small, st.lists(st.integers(-9, 9), min_size=a.n, max_size=a.n))


toral_triples = st.sampled_from(MATRICES).flatmap(lambda a: st.tuples(toral(a), toral(a), toral(a)))
circle_triples = st.sampled_from((1, -1)).flatmap(
    lambda e: st.tuples(*[st.builds(CircleLiftedElement, st.integers(-9, 9), st.integers(-20, 20), st.just(e))] * 3)
)


def test_toral_example():
    x = ToralLiftedElement(1, (0, 0), CAT) * ToralLiftedElement(0, (1, 0), CAT)
    assert x == ToralLiftedElement(1, (2, 1), CAT)


def test_toral_inverse_formula():
    x = ToralLiftedElement(1, (3, -2), CAT)
    assert inverse(x) == ToralLiftedElement(-1, tuple(-t for t in CAT.inverse().apply((3, -2))), CAT)


def test_circle_convention():
    # law (m, n)(m', n') = (m + m', n + ε^m n'); with ε = -1, (1, 1)(1, 1) = (2, 0)
    x = CircleLiftedElement(1, 1, -1)
    assert x * x == CircleLiftedElement(2, 0, -1)
    assert CircleLiftedElement(1, 0, -1) * CircleLiftedElement(1, 0, -1) == CircleLiftedElement(2, 0, -1)


def test_circle_is_toral_in_dimension_one():
    for eps in (1, -1):
        a = IntegerMatrix([[eps]])
        for m, n, m2, n2 in [(1, 2, 3, -1), (-2, 5, 1, 1), (3, 3, -3, 4)]:
            c = CircleLiftedElement(m, n, eps) * CircleLiftedElement(m2, n2, eps)
            t = ToralLiftedElement(m, (n,), a) * ToralLiftedElement(m2, (n2,), a)
            assert (c.m, (c.n,)) == (t.k, t.v)


def test_alternative_circle_law_is_not_associative():
    # the alternative (m, n)(m', n') = (m + m', ε^m n + n') fails associativity for ε = -1
    def alt(x, y):
        return (x[0] + y[0], (-1) ** (x[0] % 2) * x[1] + y[1])

    x, y, z = (1, 0), (0, 1), (0, 1)
    assert alt(alt(x, y), z) == (1, 0)
    assert alt(x, alt(y, z)) == (1, 2)


@settings(max_examples=300, deadline=None)
@given(st.one_of(toral_triples, circle_triples))
def test_group_axioms(xyz):
    x, y, z = xyz
    e = identity_like(x)
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    assert multiply(e, x) == x == multiply(x, e)
    assert multiply(x, inverse(x)) == e == multiply(inverse(x), x)


@settings(max_examples=300, deadline=None)
@given(toral_triples)
def test_commutator_closed_form(xyz):
    x, y, _ = xyz
    c = commutator(x, y)
    assert c.k == 0
    assert c == commutator_closed_form(x, y)


def test_commutator_examples():
    x = ToralLiftedElement(2, (1, -1), CAT)
    assert commutator(x, x) == identity_like(x)
    v = (1, 0)
    c = commutator(ToralLiftedElement(0, v, CAT), ToralLiftedElement(1, (0, 0), CAT))
    assert c == ToralLiftedElement(0, (-1, -1), CAT)
    for k in (1, 2, -3):
        c = commutator(ToralLiftedElement(0, (2, 5), CAT), ToralLiftedElement(k, (0, 0), CAT))
        want = (IntegerMatrix.identity(2) - CAT ** k).apply((2, 5))
        assert c == ToralLiftedElement(0, want, CAT)


def test_context_mismatch():
    with raises(ContextMismatch):
        CircleLiftedElement(1, 1, 1) * CircleLiftedElement(1, 1, -1)
    with raises(ContextMismatch):
        ToralLiftedElement(0, (1, 0), CAT) * ToralLiftedElement(0, (1, 0), MATRICES[1])
    with raises(ContextMismatch):
        commutator(CircleLiftedElement(0, 0), ToralLiftedElement(0, (0, 0), CAT))


def test_commutator_lattice_examples():
    assert commutator_lattice(IntegerMatrix.identity(2), 3).index == math.inf
    assert commutator_lattice(CAT, 1).index == 1
    flip = commutator_lattice(IntegerMatrix([[0, 1], [1, 0]]), 2)
    assert flip.basis == hnf([(1, -1)], 2)
    with raises(NotUnimodular):
        commutator_lattice(IntegerMatrix([[2, 0], [0, 1]]))


def test_commutator_lattice_index_is_det_of_identity_minus_a():
    # the subgroup is (I - A)Z^n: its index is |det(I - A)|, which need not be 1
    rng = random.Random(11)
    seen_non_trivial = False
    for _ in range(40):
        while True:
            a = IntegerMatrix([[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)])
            if a.is_unimodular() and (a.det() == 1 and abs(a.trace()) > 2 or a.det() == -1 and a.trace()):
                break
        d = abs((IntegerMatrix.identity(2) - a).det())
        assert commutator_lattice(a, 3).index == d
        seen_non_trivial |= d > 1
    assert seen_non_trivial
    assert commutator_lattice(IntegerMatrix([[3, 1], [2, 1]]), 6).index == 2


def test_commutator_lattice_monotone():
    for a in MATRICES:
        prev = commutator_lattice(a, 1).basis
        for k in range(2, 5):
            cur = commutator_lattice(a, k).basis
            assert cur.contains_lattice(prev)
            prev = cur
