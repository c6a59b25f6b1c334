import random

import pytest
from hypothesis import given, settings, strategies as st

from evoclass import catalog
from evoclass.algebra import EvolutionAlgebra
from evoclass.cocycles import (
    Unsupported, class_space, classes_independent, coboundary_space, delta, in_coboundaries,
    psi_subspace, psi_tuple, radical, radical_dim, same_class,
)
from evoclass.fields import PrimeField, Q
from evoclass.linalg import Subspace, is_invertible

from conftest import nilpotent_algebras

F5 = PrimeField(5)


def span(*vectors, F=Q):
    return Subspace.span(F, len(vectors[0]), vectors)


@pytest.mark.parametrize("name,B", [
    ("E_2_2", [(1, 0)]),
    ("E_3_3", [(1, 1, 0)]),
    ("E_4_8", [(1, 1, 0, 0), (1, 0, 1, 0)]),
])
def test_coboundaries(name, B):
    assert coboundary_space(catalog.get(name)) == span(*B)


def test_class_space_examples():
    assert class_space(catalog.get("E_2_2")) == [delta(Q, 2, 2)]
    assert class_space(catalog.get("E_4_9")) == [delta(Q, 4, 4)]
    assert len(class_space(EvolutionAlgebra.zero(Q, 3))) == 3


def test_radical_examples():
    assert radical_dim(Q, delta(Q, 3, 3)) == 2
    assert radical(Q, (1, 2, 3)).dim == 0
    assert radical(Q, (0, 0, 0, 0)).dim == 4


def test_psi_tuple():
    assert psi_tuple(Q, [delta(Q, 3, 1), delta(Q, 3, 2, 3)]) == (2, 1)
    assert psi_tuple(Q, [(0, 0, 0)]) == (3,)
    assert psi_tuple(Q, [delta(Q, 4, 4)]) == (3,)
    with pytest.raises(ValueError):
        psi_tuple(Q, [])


@pytest.mark.parametrize("F,method", [(Q, "zero_pattern"), (F5, "exhaustive")])
@pytest.mark.parametrize("name,theta,expected", [
    ("E_3_3", (0, 0, 1), (2,)),
    ("E_3_3", (0, 1, 1), (1,)),
    ("E_4_6", (0, 0, 1, 1), (2,)),
])
def test_psi_subspace_examples(F, method, name, theta, expected):
    A = catalog.get(name, field=F)
    assert psi_subspace(A, [F.vec(theta)], method) == expected


def test_psi_subspace_errors():
    A = catalog.get("E_3_1")
    with pytest.raises(ValueError):
        psi_subspace(A, [(1, 0, 0), (2, 0, 0)])
    with pytest.raises(Unsupported):
        psi_subspace(A, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], "zero_pattern")
    with pytest.raises(ValueError):
        psi_subspace(A, [(1, 0, 0)], "guess")


@pytest.mark.parametrize("name", catalog.names())
def test_dimension_count(name):
    A = catalog.get(name, catalog.sample_parameters(catalog.entry(name), Q)[0])
    B = coboundary_space(A)
    assert B.dim == A.square_space().dim
    assert B.dim + len(class_space(A)) == A.dim


@settings(max_examples=40, deadline=None)
@given(nilpotent_algebras(), st.integers(1, 4))
def test_coboundaries_closed_under_scaling(A, lam):
    for b in coboundary_space(A).basis:
        assert in_coboundaries(A, tuple(F5.mul(lam, x) for x in b))


@settings(max_examples=25, deadline=None)
@given(nilpotent_algebras(min_dim=2, max_dim=4), st.integers(0, 10**6))
def test_psi_invariant_under_basis_change(A, seed):
    rng = random.Random(seed)
    reps = class_space(A)
    if len(reps) < 2:
        return
    B = coboundary_space(A)
    t1 = tuple(rng.randrange(5) for _ in range(A.dim))
    t2 = tuple(rng.randrange(5) for _ in range(A.dim))
    if not classes_independent(A, [t1, t2], B):
        return
    while True:
        g = [[rng.randrange(5) for _ in range(2)] for _ in range(2)]
        if is_invertible(F5, g):
            break
    shift = B.basis[0] if B.dim else (0,) * A.dim
    u1 = tuple(F5.add(F5.add(F5.mul(g[0][0], a), F5.mul(g[0][1], b)), c) for a, b, c in zip(t1, t2, shift))
    u2 = tuple(F5.add(F5.mul(g[1][0], a), F5.mul(g[1][1], b)) for a, b in zip(t1, t2))
    assert psi_subspace(A, [t1, t2], "exhaustive") == psi_subspace(A, [u1, u2], "exhaustive")
    assert psi_subspace(A, [t1, t2], "exhaustive") == psi_subspace(A, [t1, t2], "zero_pattern")


def test_same_class():
    A = catalog.get("E_4_8")
    assert same_class(A, (1, 1, 1, 1), (0, 0, 1, 1))
    assert not same_class(A, (0, 0, 0, 1), (0, 1, 0, 1))
