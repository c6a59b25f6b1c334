import random

import pytest
from hypothesis import given, settings, strategies as st

from evoclass import catalog, classify
from evoclass.algebra import EvolutionAlgebra
from evoclass.automorphisms import is_isomorphism
from evoclass.fields import PrimeField, Q, QuadraticField
from evoclass.linalg import identity

from conftest import nilpotent_algebras

F3, F5, F13 = PrimeField(3), PrimeField(5), PrimeField(13)


def test_split_components():
    A = catalog.get("E_4_2").direct_sum(EvolutionAlgebra.zero(Q, 1))
    core, k = classify.split_components(A)
    assert k == 3 and core == catalog.get("E_2_2")
    assert classify.split_components(catalog.get("E_5_18", 2)) == (catalog.get("E_5_18", 2), 0)


def test_split_components_moves_hidden_summand():
    # e3 is a zero-square vector hidden inside e1^2; a basis change splits off one line
    A = EvolutionAlgebra.from_products(Q, 3, {1: {2: 1, 3: 1}})
    core, k = classify.split_components(A)
    assert k == 1 and core == catalog.get("E_2_2")


@settings(max_examples=40, deadline=None)
@given(nilpotent_algebras(max_dim=4), st.integers(0, 2))
def test_split_components_recovers_added_summands(A, extra):
    B = A.direct_sum(EvolutionAlgebra.zero(F5, extra)) if extra else A
    core_a, ka = classify.split_components(A)
    core_b, kb = classify.split_components(B)
    assert kb == ka + extra
    assert core_b.dim == core_a.dim
    assert classify.fingerprint(core_a) == classify.fingerprint(core_b)


def test_fingerprint_is_an_invariant_under_relabelling():
    rng = random.Random(3)
    for name in catalog.names(5, parametric=False):
        A = catalog.get(name)
        order = list(range(5))
        rng.shuffle(order)
        assert classify.fingerprint(A.permuted(order)) == classify.fingerprint(A)


def test_isocheck_psi_example():
    v = classify.isocheck(catalog.get("E_5_21"), catalog.get("E_5_22"))
    assert v.status == classify.NON_ISOMORPHIC
    assert v.invariant == "Psi" and v.values == ((3,), (2,))


def test_isocheck_family_witness():
    a = F13(4)
    A, B = catalog.get("E_5_18", a, F13), catalog.get("E_5_18", F13.inv(a), F13)
    v = classify.isocheck(A, B)
    assert v.status == classify.ISOMORPHIC
    assert is_isomorphism(A, B, v.witness)


def test_isocheck_self_is_identity():
    A = catalog.get("E_5_20")
    v = classify.isocheck(A, A)
    assert v.status == classify.ISOMORPHIC and v.witness == identity(Q, 5)


def test_isocheck_relabelled():
    A = catalog.get("E_5_22", field=F3)
    B = A.permuted([2, 0, 1, 3, 4])
    v = classify.isocheck(A, B)
    assert v.status == classify.ISOMORPHIC and is_isomorphism(A, B, v.witness)


def test_isocheck_orbit_refutation():
    E = lambda a: catalog.get("E_5_23", a, F3)
    assert classify.isocheck(E(0), E(1)).invariant == "Psi"
    v = classify.isocheck(E(1), E(2))
    assert v.status == classify.NON_ISOMORPHIC and v.invariant == classify.ORBIT_INVARIANT


def test_isocheck_inconclusive():
    v = classify.isocheck(catalog.get("E_5_18", 2), catalog.get("E_5_18", "1/2"))
    assert v.status == classify.INCONCLUSIVE
    F = QuadraticField(5)
    v = classify.isocheck(catalog.get("E_5_18", 2, F), catalog.get("E_5_18", 3, F), budget=5)
    assert v.status == classify.INCONCLUSIVE


def test_isocheck_preconditions():
    with pytest.raises(ValueError):
        classify.isocheck(catalog.get("E_2_2"), catalog.get("E_3_3"))
    with pytest.raises(ValueError):
        classify.isocheck(EvolutionAlgebra(Q, ((1,),)), EvolutionAlgebra(Q, ((1,),)))
    with pytest.raises(ValueError):
        classify.isocheck(catalog.get("E_2_2"), catalog.get("E_2_2", field=F3))


def test_extension_isomorphism_block_map():
    F = QuadraticField(5)
    base = catalog.get("E_4_5", field=F)
    theta, vartheta = [F.vec((0, 1, 2, 1))], [F.vec((0, 1, 4, 1))]
    from evoclass.automorphisms import same_orbit
    from evoclass.extensions import ExtensionSpec, extend
    found, phi = same_orbit(base, theta, vartheta)
    assert found
    block = classify.extension_isomorphism(base, theta, vartheta, phi)
    assert is_isomorphism(extend(ExtensionSpec(base, theta)), extend(ExtensionSpec(base, vartheta)), block)


@pytest.mark.parametrize("base,k,count,labels", [
    ("E_4_9", 1, 1, [["E_5_24"]]),
    ("E_1_1", 1, 1, [["E_2_2"]]),
])
def test_enumerate_examples(base, k, count, labels):
    r = classify.enumerate_extensions(catalog.get(base, field=F3), k, base_name=base)
    classify.match_catalog(r, catalog.entry(base).dim + k)
    assert len(r.buckets) == count
    assert [b.matches for b in r.buckets] == labels


def test_enumerate_e31_covers_both_patterns():
    r = classify.enumerate_extensions(catalog.get("E_3_1", field=F3), 2, base_name="E_3_1")
    located = classify.match_catalog(r, 5)
    assert located["E_5_26"] is not None and located["E_5_27"] is not None
    assert located["E_5_26"] != located["E_5_27"]
    assert sum(len(b.subspaces) for b in r.buckets) == r.admissible


def test_enumerate_is_deterministic_and_partial():
    base = catalog.get("E_4_5", field=F3)
    a = classify.enumerate_extensions(base, 1).to_json()
    b = classify.enumerate_extensions(base, 1).to_json()
    assert a == b
    p = classify.enumerate_extensions(base, 1, budget=3)
    assert p.partial and p.message


def test_report():
    rep = classify.report(5)
    assert rep["count"] == 29
    blocks = {b["name"]: b for b in rep["blocks"]}
    assert blocks["E_5_1"]["table"] == "all products are zero"
    assert "1/(1-alpha)" in blocks["E_5_18"]["isomorphisms"]
    text = classify.format_report(rep)
    assert text == classify.format_report(classify.report(5))
    assert text.count("\nE_5_") == 29


def test_run_config(monkeypatch):
    monkeypatch.setenv(classify.BUDGET_ENV, "77")
    assert classify.RunConfig().budget == 77
    with pytest.raises(ValueError):
        classify.RunConfig(budget=0)
    with pytest.raises(ValueError):
        classify.RunConfig(fmt="xml")
    monkeypatch.setenv(classify.BUDGET_ENV, "-1")
    with pytest.raises(ValueError):
        classify.default_budget()


def test_verify_dim():
    rep = classify.verify_dim(3)
    assert rep["pass"] and len(rep["entries"]) == 4
    assert "4/4 entries pass" in classify.format_verify(rep)
