import math
from functools import reduce
from itertools import combinations

import sympy
from hypothesis import given, settings, strategies as st

from orbistack.exactmath import IntegerMatrix, hnf, integer_kernel


def minor_gcd(vectors, n):
    """gcd of the maximal minors: the index for full rank, by an independent route."""
    m = sympy.Matrix(vectors) if vectors else sympy.zeros(0, n)
    r = m.rank()
    if r < n:
        return math.inf
    dets = [abs(m.extract(list(rows), list(range(n))).det()) for rows in combinations(range(m.rows), n)]
    return reduce(math.gcd, (int(d) for d in dets))


def vector_sets(n, size=5):
    return st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=0, max_size=size)


def test_examples():
    assert hnf([(1, 0), (0, 1)], 2).tolist() == [[1, 0], [0, 1]]
    b = hnf([(2, 0), (0, 2)], 2)
    assert b.tolist() == [[2, 0], [0, 2]] and b.index == 4
    cat = IntegerMatrix([[2, 1], [1, 1]])
    assert hnf((IntegerMatrix.identity(2) - cat).columns(), 2).index == 1
    assert hnf([], 3).rank == 0
    assert hnf([(0, 0)], 2).index == math.inf


def test_shape_of_normal_form():
    b = hnf([(4, 6, 2), (2, 8, 10), (0, 3, 9)], 3)
    pivots = b.pivots()
    assert pivots == sorted(pivots)
    for i, v in enumerate(b.basis):
        assert v[pivots[i]] > 0
        for w in b.basis[:i]:
            assert 0 <= w[pivots[i]] < v[pivots[i]]


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), vector_sets(n))))
def test_index_matches_minor_gcd(nv):
    n, vs = nv
    assert hnf(vs, n).index == minor_gcd(vs, n)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), vector_sets(n))),
    st.randoms(use_true_random=False),
)
def test_uniqueness_and_idempotence(nv, rng):
    n, vs = nv
    b = hnf(vs, n)
    assert hnf(b.basis, n) == b
    # a different generating set of the same lattice
    mixed = [list(v) for v in vs]
    rng.shuffle(mixed)
    for i in range(len(mixed)):
        for j in range(len(mixed)):
            if i != j:
                k = rng.randint(-3, 3)
                mixed[i] = [x + k * y for x, y in zip(mixed[i], mixed[j])]
    mixed += [[x + y for x, y in zip(*pair)] for pair in combinations(vs, 2)]
    assert hnf(mixed, n) == b
    for v in vs:
        assert tuple(v) in b


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_integer_kernel(rows, cols, data):
    m = data.draw(st.lists(st.lists(st.integers(-4, 4), min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    ker = integer_kernel(m, cols)
    for v in ker:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m)
    assert len(ker) == cols - sympy.Matrix(m).rank()
    if ker:
        # saturated (spans every integer solution) iff the maximal minors are coprime
        t = sympy.Matrix([list(v) for v in ker])
        g = reduce(math.gcd, (int(abs(t.extract(list(range(len(ker))), list(c)).det())) for c in combinations(range(cols), len(ker))))
        assert g == 1
