import pytest
from hypothesis import given, settings, strategies as st

from evoclass import catalog
from evoclass.algebra import EvolutionAlgebra, load_algebra
from evoclass.fields import PrimeField, Q
from evoclass.linalg import Subspace

from conftest import nilpotent_algebras

F5 = PrimeField(5)


def e(i, n, F=Q):
    return tuple(F.one if j == i - 1 else F.zero for j in range(n))


def test_multiply_examples():
    E22 = catalog.get("E_2_2")
    assert E22.multiply(e(1, 2), e(1, 2)) == e(2, 2)
    assert E22.multiply(e(1, 2), e(2, 2)) == (0, 0)
    E34 = catalog.get("E_3_4")
    x = (1, 1, 0)
    assert E34.multiply(x, x) == (0, 1, 1)
    with pytest.raises(ValueError):
        E22.multiply((1,), (1, 0))


@pytest.mark.parametrize("name,dims", [
    ("E_1_1", (1, 0)), ("E_4_9", (4, 3, 2, 1, 0)), ("E_3_3", (3, 1, 0)),
])
def test_power_chain(name, dims):
    assert tuple(S.dim for S in catalog.get(name).power_chain()) == dims


def test_nilpotency_index():
    assert EvolutionAlgebra.zero(Q, 5).nilpotency_index() == 2
    assert catalog.get("E_4_9").nilpotency_index() == 5
    idempotent = EvolutionAlgebra(Q, ((1,),))
    assert idempotent.nilpotency_index() is None
    assert not idempotent.is_nilpotent()


@pytest.mark.parametrize("name,ann", [("E_2_2", [1]), ("E_4_5", [3]), ("E_1_1", [0])])
def test_annihilator(name, ann):
    A = catalog.get(name)
    assert A.annihilator() == Subspace.coordinate(Q, A.dim, ann)


def test_direct_sum():
    A = catalog.get("E_3_2").direct_sum(catalog.get("E_1_1"))
    assert A == catalog.get("E_4_2")
    zero0 = EvolutionAlgebra(Q, ())
    assert catalog.get("E_3_3").direct_sum(zero0) == catalog.get("E_3_3")
    assert catalog.get("E_1_1").direct_sum(catalog.get("E_1_1")) == EvolutionAlgebra.zero(Q, 2)
    with pytest.raises(ValueError):
        A.direct_sum(EvolutionAlgebra.zero(F5, 1))


def test_annihilator_component():
    assert EvolutionAlgebra.zero(Q, 5).has_annihilator_component() == (True, 0)
    assert catalog.get("E_4_9").has_annihilator_component() == (False, None)
    A = catalog.get("E_3_2").direct_sum(catalog.get("E_1_1"))
    found, r = A.has_annihilator_component()
    # E_3_2 already splits off e3, so the first witness precedes the added e4
    assert found and r == 2
    assert all(row[3] == 0 for row in A.squares) and not any(A.squares[3])


def test_json_roundtrip(tmp_path):
    A = catalog.get("E_5_18", "2/3")
    path = tmp_path / "a.json"
    import json
    path.write_text(json.dumps(A.to_json()))
    assert load_algebra(path) == A


def test_square_matrix_required():
    with pytest.raises(ValueError):
        EvolutionAlgebra(Q, ((0, 1),))


@pytest.mark.parametrize("name", catalog.names())
def test_catalog_annihilator_agrees_with_bruteforce(name):
    A = catalog.get(name, catalog.sample_parameters(catalog.entry(name), Q)[0])
    assert A.annihilator() == A.annihilator_bruteforce()
    dims = [S.dim for S in A.power_chain()]
    assert all(a > b for a, b in zip(dims, dims[1:])) and dims[-1] == 0


@settings(max_examples=60, deadline=None)
@given(nilpotent_algebras(max_dim=5))
def test_random_annihilator_agrees(A):
    assert A.annihilator() == A.annihilator_bruteforce()


@settings(max_examples=60, deadline=None)
@given(nilpotent_algebras(), st.data())
def test_multiply_bilinear_symmetric(A, data):
    n = A.dim
    v = st.lists(st.integers(0, 4), min_size=n, max_size=n).map(tuple)
    x, y, z = data.draw(v), data.draw(v), data.draw(v)
    a, b = data.draw(st.integers(0, 4)), data.draw(st.integers(0, 4))
    assert A.multiply(x, y) == A.multiply(y, x)
    lhs = A.multiply(tuple(F5.add(F5.mul(a, s), F5.mul(b, t)) for s, t in zip(x, z)), y)
    rhs = tuple(F5.add(F5.mul(a, s), F5.mul(b, t)) for s, t in zip(A.multiply(x, y), A.multiply(z, y)))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(nilpotent_algebras(max_dim=3), nilpotent_algebras(max_dim=3))
def test_direct_sum_properties(A, B):
    S = A.direct_sum(B)
    expected = A.annihilator().embed(S.dim) + B.annihilator().embed(S.dim, A.dim)
    assert S.annihilator() == expected
    assert S.nilpotency_index() == max(A.nilpotency_index(), B.nilpotency_index())
