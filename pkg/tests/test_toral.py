import itertools
import random
import warnings

import sympy
from pytest import raises, warns

from orbistack.errors import DimensionMismatch, NotHyperbolic, NotUnimodular
from orbistack.exactmath import IntegerMatrix, charpoly
from orbistack.rotation import random_unimodular
from orbistack.toral import (
    NO,
    UNKNOWN,
    YES,
    QuadraticIdeal,
    ReducibleCharpoly,
    certificate_key,
    normalize_sign,
    bounded_search,
    glnz_conjugate,
    is_hyperbolic,
    is_hyperbolic_2x2,
    toral_stack_equiv,
    unit_circle_root_count,
    verifies,
)

CAT = IntegerMatrix([[2, 1], [1, 1]])
SWAP = IntegerMatrix([[0, 1], [1, 0]])
# trace 20, det 1: its ideal class has order > 2, so it is not conjugate to its inverse
NOT_SELF_INVERSE = IntegerMatrix([[7, -10], [-9, 13]])


def unimodular_corpus(bound):
    for e in itertools.product(range(-bound, bound + 1), repeat=4):
        m = IntegerMatrix([[e[0], e[1]], [e[2], e[3]]])
        if m.is_unimodular():
            yield m


def test_hyperbolic_examples():
    assert is_hyperbolic(CAT)
    assert not is_hyperbolic(IntegerMatrix([[0, -1], [1, 0]]))
    assert not is_hyperbolic(IntegerMatrix([[1, 1], [0, 1]]))
    with raises(NotUnimodular):
        is_hyperbolic(IntegerMatrix([[2, 0], [0, 1]]))


def test_hyperbolic_matches_fast_path():
    for m in unimodular_corpus(3):
        assert is_hyperbolic(m) == is_hyperbolic_2x2(m)


def _numeric_hyperbolic(m):
    # squarefree part first: repeated roots wreck numerical accuracy
    f = sympy.Poly(list(reversed(charpoly(m).coeffs)), sympy.Symbol("x")).sqf_part()
    return all(abs(abs(r) - 1) > 1e-20 for r in f.nroots(n=40, maxsteps=200))


def test_hyperbolic_higher_dimension_against_numeric_roots():
    rng = random.Random(4)
    checked = 0
    while checked < 60:
        n = rng.choice((3, 4))
        m = IntegerMatrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if not m.is_unimodular():
            continue
        assert is_hyperbolic(m) == _numeric_hyperbolic(m)
        checked += 1


def test_unit_circle_root_count():
    # x^4 + 1: four roots on the unit circle, none real
    from orbistack.exactmath import IntegerPolynomial

    assert unit_circle_root_count(IntegerPolynomial([1, 0, 0, 0, 1])) == 4
    assert unit_circle_root_count(IntegerPolynomial([-1, 0, 1])) is None
    assert unit_circle_root_count(IntegerPolynomial([1, -3, 1])) == 0


def test_conjugacy_examples():
    v = glnz_conjugate(CAT, CAT)
    assert v.status == YES and v.certificate == IntegerMatrix.identity(2)
    v = glnz_conjugate(CAT, IntegerMatrix([[1, 1], [1, 2]]))
    assert v.status == YES and v.certificate == SWAP
    v = glnz_conjugate(CAT, IntegerMatrix([[3, 1], [2, 1]]))
    assert v.status == NO and v.obstruction == "charpoly mismatch"
    with raises(DimensionMismatch):
        glnz_conjugate(CAT, IntegerMatrix.identity(3))
    with raises(NotUnimodular):
        glnz_conjugate(CAT, IntegerMatrix([[2, 0], [0, 1]]))


def test_distinct_ideal_classes():
    v = glnz_conjugate(NOT_SELF_INVERSE, NOT_SELF_INVERSE.inverse())
    assert v.status == NO and "ideal classes" in v.obstruction
    assert charpoly(NOT_SELF_INVERSE) == charpoly(NOT_SELF_INVERSE.inverse())
    assert bounded_search(NOT_SELF_INVERSE, NOT_SELF_INVERSE.inverse(), 12).status == UNKNOWN


def test_stack_equiv_examples():
    assert toral_stack_equiv(CAT, CAT).status == YES
    v = toral_stack_equiv(CAT, IntegerMatrix([[1, 1], [1, 2]]))
    assert v.status == YES and v.certificate == SWAP and v.branch == "direct"
    v = toral_stack_equiv(NOT_SELF_INVERSE, NOT_SELF_INVERSE.inverse())
    assert v.status == YES and v.branch == "inverse"
    assert verifies(v.certificate, NOT_SELF_INVERSE, NOT_SELF_INVERSE.inverse().inverse())
    with raises(NotHyperbolic):
        toral_stack_equiv(CAT, IntegerMatrix([[1, 1], [0, 1]]))


def test_quadratic_ideal():
    i = QuadraticIdeal.from_matrix(CAT)
    assert (i.q, i.p) == (1, 0) and i.is_module()
    assert i.discriminant == 5
    for m in unimodular_corpus(3):
        if m[0, 1] and is_hyperbolic_2x2(m):
            assert QuadraticIdeal.from_matrix(m).is_module()


def test_reducible_routes_to_search():
    a = IntegerMatrix([[2, 1], [1, 0]])  # det -1, trace 2, discriminant 8: irreducible
    assert glnz_conjugate(a, a).method == "lm"
    # x² - 1 = (x - 1)(x + 1): not hyperbolic but still a conjugacy question
    flip = IntegerMatrix([[-1, 0], [0, 1]])
    with warns(ReducibleCharpoly):
        v = glnz_conjugate(flip, IntegerMatrix([[1, 0], [0, -1]]))
    assert v.status == YES and v.method == "search"
    with warns(ReducibleCharpoly):
        v = glnz_conjugate(flip, IntegerMatrix([[1, 1], [0, -1]]))
    # [[1,1],[0,-1]] is not conjugate to the diagonal flip over Z
    assert v.status == UNKNOWN and v.bound == 20


def test_higher_dimension_is_search_only():
    a = IntegerMatrix([[0, 1, 0], [0, 0, 1], [1, 1, 0]])
    q = IntegerMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    b = q * a * q.inverse()
    v = glnz_conjugate(a, b, bound=2)
    assert v.status == YES and v.method == "search" and verifies(v.certificate, a, b)
    far = IntegerMatrix([[1, 3, 0], [0, 1, 0], [2, 6, 1]])
    w = glnz_conjugate(a, far * a * far.inverse(), bound=1)
    assert w.status in (YES, UNKNOWN)
    if w.status == UNKNOWN:
        assert w.bound == 1


def test_method_aliases():
    b = IntegerMatrix([[1, 1], [1, 2]])
    assert glnz_conjugate(CAT, b, method="latimer_macduffee").certificate == SWAP
    assert glnz_conjugate(CAT, b, method="bounded_search").certificate == SWAP
    with raises(ValueError):
        glnz_conjugate(CAT, b, method="guess")


def test_invariance_under_conjugation():
    rng = random.Random(12)
    hyperbolic = [m for m in unimodular_corpus(2) if is_hyperbolic_2x2(m)] + [NOT_SELF_INVERSE]
    for _ in range(150):
        a, b = rng.choice(hyperbolic), rng.choice(hyperbolic)
        if rng.random() < 0.3:
            b = a.inverse() if rng.random() < 0.5 else a
        q = random_unimodular(rng, 3)
        a2 = q * a * q.inverse()
        v1, v2 = toral_stack_equiv(a, b), toral_stack_equiv(a2, b)
        assert v1.status == v2.status
        for v, x in ((v1, a), (v2, a2)):
            if v.status == YES:
                target = b if v.branch == "direct" else b.inverse()
                assert verifies(v.certificate, x, target)


def test_conjugacy_is_an_equivalence_with_composed_certificates():
    hyperbolic = [m for m in unimodular_corpus(2) if is_hyperbolic_2x2(m) and m.trace() == 3 and m.det() == 1]
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for a, b, c in itertools.product(hyperbolic[:8], repeat=3):
            p = glnz_conjugate(a, b)
            q = glnz_conjugate(b, c)
            if p.status == YES and q.status == YES:
                r = glnz_conjugate(a, c)
                assert r.status == YES
                assert verifies(q.certificate * p.certificate, a, c)


def _naive_search(a, b, bound):
    hits = set()
    for e in itertools.product(range(-bound, bound + 1), repeat=4):
        p = IntegerMatrix([[e[0], e[1]], [e[2], e[3]]])
        if p.is_unimodular() and p * a == b * p:
            hits.add(normalize_sign(p))
    return min(hits, key=certificate_key) if hits else None


def test_bounded_search_matches_naive_scan():
    mats = [m for m in unimodular_corpus(2)][::7] + [CAT, NOT_SELF_INVERSE]
    rng = random.Random(5)
    for _ in range(60):
        a, b = rng.choice(mats), rng.choice(mats)
        if rng.random() < 0.5:
            q = random_unimodular(rng, 2)
            b = q * a * q.inverse()
        for bound in (1, 3):
            want = _naive_search(a, b, bound)
            got = bounded_search(a, b, bound)
            assert (got.status == YES) == (want is not None), (a, b, bound)
            if want is not None:
                assert got.certificate == want
