from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from aal.congruence import congruence_lattice, leibniz_congruence
from aal.demorgan import DMM
from aal.filters import (
    FilterSystem,
    dmm_il_sequence,
    dmm_rule_system,
    filter_generate,
    filter_lattice,
    psi_iterate,
    s4_il_sequence,
    verify_double_star,
    verify_filter_generation_theorem,
    verify_il_sequence,
    weml_eml_on_filters,
)
from aal.heyting import boolean_algebra, godel_chain
from aal.terms import format_term

from conftest import brute_lattice_filters

HEYTING = FilterSystem.builtin("heyting")
MODAL = FilterSystem.builtin("modal")
DMM_NAMES = ["B2", "S3", "C4", "D4"]


def top_of(A):
    return next(x for x in A.universe if all(A.op("meet", x, y) == y for y in A.universe))


def subsets(A):
    return [set(c) for k in range(A.size + 1) for c in combinations(A.universe, k)]


@pytest.fixture(scope="module")
def heyting_samples(fork_heyting):
    return [boolean_algebra(1), boolean_algebra(2), godel_chain(3), godel_chain(4), fork_heyting]


@pytest.fixture(scope="module")
def modal_samples(chain2_modal, fork_modal):
    return [chain2_modal, fork_modal]


def test_builtins_match_brute_force(heyting_samples, modal_samples, dmm_named):
    for A in heyting_samples:
        assert set(filter_lattice(A, HEYTING).filters) == brute_lattice_filters(A, top_of(A))
    for A in modal_samples:
        assert set(filter_lattice(A, MODAL).filters) == brute_lattice_filters(A, top_of(A), box=True)
    for A in dmm_named.values():
        assert set(filter_lattice(A, DMM).filters) == brute_lattice_filters(A, A.const("e"))


@pytest.mark.parametrize("name", DMM_NAMES)
def test_rule_presentation_matches_builtin(dmm_named, name):
    A = dmm_named[name]
    rules = dmm_rule_system()
    for Y in subsets(A):
        assert filter_generate(A, rules, Y) == filter_generate(A, DMM, Y)


def test_subset_and_principal_methods_agree(heyting_samples, modal_samples, dmm_named):
    cases = [(A, HEYTING) for A in heyting_samples] + [(A, MODAL) for A in modal_samples]
    cases += [(A, DMM) for A in dmm_named.values()] + [(dmm_named["C4"], dmm_rule_system())]
    for A, system in cases:
        assert filter_lattice(A, system).filters == filter_lattice(A, system, "principal").filters


def test_unknown_method(dmm_named):
    with pytest.raises(ValueError):
        filter_lattice(dmm_named["C4"], DMM, "fast")


def test_generate_examples(dmm_named, fork_heyting):
    C4 = dmm_named["C4"]
    up_e = {C4.element(x) for x in ("e", "f", "f2")}
    assert filter_generate(C4, DMM, ()) == up_e
    assert filter_generate(C4, DMM, {C4.element("negf2")}) == set(C4.universe)
    H = fork_heyting
    assert {H.label(x) for x in filter_generate(H, HEYTING, {H.element("{1}")})} == {"{0,1,2}", "{1,2}", "{1}"}


def test_lattice_examples(dmm_named, fork_heyting):
    C4, D4 = dmm_named["C4"], dmm_named["D4"]
    fl = filter_lattice(C4, DMM)
    assert len(fl.filters) == 2 and fl.filters[0] == {C4.element(x) for x in ("e", "f", "f2")}
    assert filter_lattice(D4, DMM).filters[0] == {D4.element("e"), D4.element("f2")}
    # five filters, not six: the oracle confirms it
    fork = filter_lattice(fork_heyting, HEYTING)
    assert len(fork.filters) == 5
    L = fork.lattice
    proper = [i for i in L.elements() if i != L.top]
    assert not any(all(L.leq(j, i) for j in proper) for i in proper)


@pytest.mark.parametrize("name", DMM_NAMES)
def test_closure_operator(dmm_named, name):
    A = dmm_named[name]
    subs = subsets(A)
    gen = {frozenset(Y): filter_generate(A, DMM, Y) for Y in subs}
    for Y, F in gen.items():
        assert Y <= F and filter_generate(A, DMM, F) == F
        for Z, G in gen.items():
            if Y <= Z:
                assert F <= G


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(0, 7)), st.sets(st.integers(0, 7)))
def test_modal_closure_operator(fork_modal, Y, Z):
    F, G = filter_generate(fork_modal, MODAL, Y), filter_generate(fork_modal, MODAL, Y | Z)
    assert Y <= F <= G and filter_generate(fork_modal, MODAL, F) == F


def test_modal_filters_via_boxed_generators(modal_samples):
    for A in modal_samples:
        top = top_of(A)
        for Y in subsets(A):
            gens = {A.op("meet", A.op("box", y), y) for y in Y} | {top}
            meets = set(gens)
            for _ in range(len(gens)):
                meets |= {A.op("meet", a, b) for a in meets for b in meets}
            upset = {x for x in A.universe if any(A.op("meet", m, x) == m for m in meets)}
            assert filter_generate(A, MODAL, Y) == upset


@pytest.mark.parametrize("name", DMM_NAMES)
def test_omega_is_isomorphism_onto_congruences(dmm_named, name):
    A = dmm_named[name]
    filters = filter_lattice(A, DMM).filters
    congs = congruence_lattice(A).congruences
    image = [leibniz_congruence(A, F) for F in filters]
    assert sorted(image, key=str) == sorted(congs, key=str)
    e = A.const("e")
    for F, theta in zip(filters, image):
        assert {a for a in A.universe if theta.related(A.op("meet", a, e), e)} == F
        for G, phi in zip(filters, image):
            assert (F <= G) == theta.refines(phi)


@pytest.mark.parametrize("name", ["C4", "D4"])
def test_dmm_il(dmm_named, name):
    r = verify_il_sequence(dmm_named[name], DMM, dmm_il_sequence(), 2)
    assert r and r.checked == 4 + 16


def test_dmm_il_fails_on_s3(dmm_named):
    r = verify_il_sequence(dmm_named["S3"], DMM, dmm_il_sequence(), 1)
    assert not r and r.witness is not None


def test_s4_il(fork_modal, chain2_modal):
    for A in (fork_modal, chain2_modal):
        assert verify_il_sequence(A, MODAL, s4_il_sequence(), 2)


def test_il_implies_dpc(heyting_samples, dmm_named):
    from aal.filters import heyting_il_sequence
    from aal.order import is_dpc

    for A, system, psi in [(A, HEYTING, heyting_il_sequence()) for A in heyting_samples] + [
        (A, DMM, dmm_il_sequence()) for A in dmm_named.values()
    ]:
        if verify_il_sequence(A, system, psi, 1):
            assert is_dpc(filter_lattice(A, system).lattice)


def test_filter_generation_theorem(dmm_named):
    psi = dmm_il_sequence()
    C4 = dmm_named["C4"]
    up_e = filter_generate(C4, DMM, ())
    assert verify_filter_generation_theorem(C4, DMM, psi, up_e, (C4.element("negf2"),))
    assert verify_filter_generation_theorem(C4, DMM, psi, C4.universe, (C4.element("e"),))
    for name in ("C4", "D4"):
        A = dmm_named[name]
        for F in filter_lattice(A, DMM).filters:
            for n in (1, 2):
                for args in product(A.universe, repeat=n):
                    assert verify_filter_generation_theorem(A, DMM, psi, F, args)


def test_psi_iterate_golden():
    (t,) = psi_iterate(dmm_il_sequence(), 1)
    assert format_term(t) == "arrow(meet(arrow(meet(v1, e), meet(f, neg(fuse(f, f)))), e), meet(f, neg(fuse(f, f))))"
    assert len(psi_iterate(s4_il_sequence(), 3)) == 1


@pytest.mark.parametrize("name", ["C4", "D4"])
def test_double_star(dmm_named, name):
    for n in (1, 2):
        r = verify_double_star(dmm_named[name], DMM, dmm_il_sequence(), n)
        assert r and r.checked == 4 ** n


def test_weml_eml_examples(dmm_named, chain2_modal, fork_heyting):
    r = weml_eml_on_filters(dmm_named["C4"], DMM)
    assert r.dpc and r.weml_id and r.eml_id and r.distributive
    r = weml_eml_on_filters(chain2_modal, MODAL)
    assert r.weml_id and not r.eml_id and "EML_ID" in r.witnesses
    r = weml_eml_on_filters(fork_heyting, HEYTING)
    assert r.dpc and not r.weml_id


def test_system_validation():
    with pytest.raises(ValueError):
        FilterSystem.builtin("relevance")
    assert "literature" in DMM.provenance and "standard" in HEYTING.provenance
