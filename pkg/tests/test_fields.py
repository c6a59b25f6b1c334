from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from evoclass.fields import (
    FieldError, PrimeField, Q, QuadraticField, field_from_json, parse_field,
)

F5, F7 = PrimeField(5), PrimeField(7)
F9 = QuadraticField(3)


def test_prime_field_examples():
    assert F5.arith(2, 4, "add") == 1
    assert F5.arith(1, 2, "div") == 3
    assert Q.arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        F5.div(1, 0)
    with pytest.raises(ZeroDivisionError):
        Q.div(Q.one, Q.zero)
    with pytest.raises(ZeroDivisionError):
        F9.inv(F9.zero)


def test_unknown_operation():
    with pytest.raises(FieldError):
        F5.arith(1, 2, "pow")


@pytest.mark.parametrize("p", [2, 4, 9, 1])
def test_rejects_even_or_composite(p):
    with pytest.raises(FieldError):
        PrimeField(p)


def test_kth_root_examples():
    assert F7.kth_root(2, 2) == [3, 4]
    assert F7.kth_root(0, 3) == [0]
    assert sorted(Q.kth_root(4, 2)) == [-2, 2]
    assert Q.kth_root(2, 2) == []
    assert Q.kth_root(Fraction(-8, 27), 3) == [Fraction(-2, 3)]


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_square_root_counts(p):
    F = PrimeField(p)
    residues = {x * x % p for x in range(1, p)}
    for a in range(p):
        n = len(F.kth_root(a, 2))
        assert n == (2 if a in residues else 1 if a == 0 else 0)


def test_quadratic_field_has_all_base_square_roots():
    F = QuadraticField(13)
    for a in range(13):
        roots = F.kth_root(F(a), 2)
        assert roots and all(F.mul(r, r) == F(a) for r in roots)


def test_quadratic_coercion_is_idempotent():
    F = QuadraticField(5)
    w = F((0, 1))
    assert F(w) == w
    assert F.mul(w, w) == F(F.nonresidue)
    assert F.from_code(int(w)) == w


def test_parse_and_format_roundtrip():
    for F in (F5, F9, Q):
        for x in (F.elements() if F.finite else [Fraction(-3, 4), Fraction(7)]):
            assert F.parse(F.format(x)) == x


def test_field_specs():
    assert parse_field("fp:7") == F7
    assert parse_field("q") is Q
    assert parse_field("fp2:3") == F9
    assert field_from_json(F7.to_json()) == F7
    with pytest.raises(FieldError):
        parse_field("gf(8)")


elements5 = st.integers(0, 4)
elements9 = st.integers(0, 8).map(F9.from_code)
rationals = st.fractions(max_denominator=50)


@pytest.mark.parametrize("F,gen", [(F5, elements5), (F9, elements9), (Q, rationals)])
@given(data=st.data())
def test_field_axioms(F, gen, data):
    a, b, c = data.draw(gen), data.draw(gen), data.draw(gen)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, b) == F.add(b, a) and F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    if a != F.zero:
        assert F.mul(a, F.inv(a)) == F.one


@given(a=st.integers(0, 10), k=st.integers(1, 6))
def test_roots_are_roots(a, k):
    for x in F7.kth_root(a % 7, k):
        assert F7.pow(x, k) == a % 7
