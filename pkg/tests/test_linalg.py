from fractions import Fraction

from hypothesis import given, strategies as st

from evoclass.fields import PrimeField
from evoclass.linalg import Subspace, inverse, is_invertible, kernel, mat_mul, identity, rref, solve
from evoclass.polynomial import Polynomial2

F5 = PrimeField(5)
vec = st.lists(st.integers(0, 4), min_size=3, max_size=3).map(tuple)


def test_rref_is_canonical():
    a = Subspace.span(F5, 3, [(1, 2, 0), (0, 1, 1)])
    b = Subspace.span(F5, 3, [(1, 3, 1), (2, 4, 0)])
    assert a == b
    assert a.basis == ((1, 0, 3), (0, 1, 1))


def test_intersection_and_sum():
    x = Subspace.coordinate(F5, 3, [0, 1])
    y = Subspace.coordinate(F5, 3, [1, 2])
    assert x.intersect(y) == Subspace.coordinate(F5, 3, [1])
    assert (x + y).dim == 3


def test_solve_and_kernel():
    rows = [(1, 1, 0), (0, 1, 1)]
    x = solve(F5, rows, (2, 3), 3)
    assert tuple(F5.dot(r, x) for r in rows) == (2, 3)
    assert solve(F5, [(1, 1), (1, 1)], (0, 1), 2) is None
    for v in kernel(F5, rows, 3):
        assert all(F5.dot(r, v) == 0 for r in rows)


@given(st.lists(vec, min_size=3, max_size=3))
def test_inverse(rows):
    if is_invertible(F5, rows):
        assert mat_mul(F5, rows, inverse(F5, rows)) == [tuple(r) for r in identity(F5, 3)]


@given(st.lists(vec, min_size=1, max_size=4))
def test_span_membership(vectors):
    S = Subspace.span(F5, 3, vectors)
    assert all(v in S for v in vectors)
    assert S.dim == len(rref(F5, vectors)[1])


def test_polynomial_arithmetic():
    a, b = Polynomial2.alpha(), Polynomial2.beta()
    p = (a - b) * (a + b)
    assert p == a**2 - b**2
    assert p.degree() == (2, 2)
    assert p.evaluate(3, 2) == 5
    assert p.evaluate(3, 2, F5) == 0
    assert (-p).unit_ratio(p) == -1
    assert (p + 1).unit_ratio(p) is None
    assert Polynomial2({(1, 0): 0}).is_zero()
    assert Polynomial2.constant(Fraction(1, 2)) * 2 == 1
