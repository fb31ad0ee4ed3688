import pytest

from aal.algebra import FiniteAlgebra, QuasiEquation, direct_product
from aal.congruence import (
    classify_identity,
    congruence_lattice,
    greatest_proper_congruence,
    is_congruence,
    is_reduced_matrix,
    kollar_and_semisimple_report,
    leibniz_congruence,
    principal_congruence,
    relative_congruence_lattice,
)
from aal.demorgan import DMM, derived
from aal.filters import FilterSystem, filter_lattice
from aal.heyting import boolean_algebra, godel_chain
from aal.partition import Partition
from aal.terms import parse_term

from conftest import brute_congruences, compatible


@pytest.fixture(scope="module")
def samples(dmm_named, fork_heyting, chain2_modal, fork_modal):
    return {
        "B1": boolean_algebra(1), "B2": boolean_algebra(2), "G3": godel_chain(3), "fork": fork_heyting,
        "chain2": chain2_modal, "forkmodal": fork_modal, **{f"dmm-{k}": v for k, v in dmm_named.items()},
    }


NAMES = ["B1", "B2", "G3", "fork", "chain2", "forkmodal", "dmm-B2", "dmm-S3", "dmm-C4", "dmm-D4"]


@pytest.mark.parametrize("name", NAMES)
def test_lattice_matches_brute_force(samples, name):
    A = samples[name]
    clr = congruence_lattice(A)
    assert set(clr.congruences) == brute_congruences(A)
    assert clr.congruences[clr.identity_index].is_identity()
    assert clr.congruences[clr.total_index].is_total()


@pytest.mark.parametrize("name", NAMES)
def test_principal_is_least_containing(samples, name):
    A = samples[name]
    congs = congruence_lattice(A).congruences
    for a in A.universe:
        for b in A.universe:
            p = principal_congruence(A, a, b)
            above = [t for t in congs if t.related(a, b)]
            meet = above[0]
            for t in above[1:]:
                meet = meet.meet(t)
            assert p == meet


@pytest.mark.parametrize("name", NAMES)
def test_leibniz_is_largest_compatible(samples, name):
    A = samples[name]
    congs = congruence_lattice(A).congruences
    for mask in range(1 << A.size):
        F = {x for x in A.universe if mask >> x & 1}
        omega = leibniz_congruence(A, F)
        assert omega in congs and omega.is_union_of_blocks(F)
        for t in congs:
            if t.is_union_of_blocks(F):
                assert t.refines(omega)


def test_is_congruence_agrees_with_oracle(samples):
    A = samples["dmm-S3"]
    from conftest import set_partitions

    for lab in set_partitions(A.size):
        assert is_congruence(A, Partition.from_labels(lab)) == compatible(A, lab)


def test_examples(dmm_named, fork_heyting):
    trivial = FiniteAlgebra(boolean_algebra(1).signature, 1, {s: [0] for s, _ in boolean_algebra(1).signature})
    assert len(congruence_lattice(trivial).congruences) == 1
    for name in ("C4", "D4"):
        clr = congruence_lattice(dmm_named[name])
        assert len(clr.congruences) == 2
        assert classify_identity(clr) == "RS"
        assert greatest_proper_congruence(clr).is_identity()
    two = congruence_lattice(boolean_algebra(1))
    assert classify_identity(two) == "RS" and greatest_proper_congruence(two).is_identity()
    fork = congruence_lattice(fork_heyting)
    assert len(fork.congruences) == 5
    assert classify_identity(fork) == "RSI"
    assert greatest_proper_congruence(fork) is None


def test_leibniz_examples(dmm_named):
    C4 = dmm_named["C4"]
    up_e = {C4.element(x) for x in ("e", "f", "f2")}
    assert leibniz_congruence(C4, up_e).is_identity()
    assert leibniz_congruence(C4, C4.universe).is_total()
    assert is_reduced_matrix(C4, up_e)
    assert not is_reduced_matrix(C4, C4.universe)
    trivial = FiniteAlgebra(C4.signature, 1, {s: [0] for s, _ in C4.signature})
    assert is_reduced_matrix(trivial, {0})


@pytest.mark.parametrize("name", ["B2", "S3", "C4", "D4"])
def test_leibniz_biarrow_formula(dmm_named, name):
    A = dmm_named[name]
    d = derived(A)
    for F in filter_lattice(A, DMM).filters:
        expected = Partition.from_pairs(A.size, [(a, b) for a in A.universe for b in A.universe if d.biarrow[a * A.size + b] in F])
        assert leibniz_congruence(A, F) == expected


@pytest.mark.parametrize(
    "name, kind", [("B2", "heyting"), ("G3", "heyting"), ("fork", "heyting"), ("chain2", "modal"), ("forkmodal", "modal"),
                   ("dmm-C4", "dmm"), ("dmm-D4", "dmm"), ("dmm-S3", "dmm")],
)
def test_leibniz_monotone_on_filters(samples, name, kind):
    A = samples[name]
    filters = filter_lattice(A, FilterSystem.builtin(kind)).filters
    omega = {F: leibniz_congruence(A, F) for F in filters}
    for F in filters:
        for G in filters:
            if F <= G:
                assert omega[F].refines(omega[G])


def test_relative_lattice(dmm_named):
    C4 = dmm_named["C4"]
    assert relative_congruence_lattice(C4, []) == congruence_lattice(C4)
    vacuous = QuasiEquation(((parse_term("meet(v1, e)"), parse_term("meet(v1, f)")),), (parse_term("v1"), parse_term("v1")))
    S3 = dmm_named["S3"]
    assert set(relative_congruence_lattice(S3, [vacuous]).congruences) == set(congruence_lattice(S3).congruences)
    P = direct_product(C4, C4)
    dist = QuasiEquation.equation(parse_term("meet(v1, join(v2, v3))"), parse_term("join(meet(v1, v2), meet(v1, v3))"))
    rel = relative_congruence_lattice(P, [dist])
    assert set(rel.congruences) == set(congruence_lattice(P).congruences)


def test_trivial_algebra_satisfies_every_quasiequation(dmm_named):
    # so KExcludesTrivial can never fire for a well-formed K
    C4 = dmm_named["C4"]
    odd = QuasiEquation.equation(parse_term("v1"), parse_term("v2"))
    rel = relative_congruence_lattice(C4, [odd])
    assert [t.is_total() for t in rel.congruences] == [True]


def test_relative_shrinks_with_more_axioms(dmm_named):
    S3 = dmm_named["S3"]
    e_is_f = QuasiEquation.equation(parse_term("e"), parse_term("f"))
    full = set(congruence_lattice(S3).congruences)
    rel = set(relative_congruence_lattice(S3, [e_is_f]).congruences)
    assert rel <= full and any(t.is_total() for t in rel)


def test_kollar_report(dmm_named):
    r = kollar_and_semisimple_report([boolean_algebra(1)])
    assert r.kollar_witnesses == () and r.all_rsi_are_rs
    r = kollar_and_semisimple_report([dmm_named["S3"]])
    assert r.kollar_witnesses == (dmm_named["S3"].name,)
    r = kollar_and_semisimple_report([dmm_named["C4"], dmm_named["D4"]])
    assert r.kollar_witnesses == ()
    assert dict(r.classifications) == {dmm_named["C4"].name: "RS", dmm_named["D4"].name: "RS"}
    assert r.all_rsi_are_rs and "sample" in r.caveat
