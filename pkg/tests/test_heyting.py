import pytest

from aal.congruence import congruence_lattice, leibniz_congruence
from aal.enumeration import labeled_posets
from aal.filters import FilterSystem, filter_lattice, weml_eml_on_filters
from aal.heyting import (
    NotDistributive,
    boolean_algebra,
    godel_chain,
    heyting_from_lattice,
    is_principally_up_directed,
    kc_bridge_report,
    kc_holds,
    upset_algebra,
)
from aal.order import FinitePoset, chain, lattice_from_order

from conftest import FORK

HEYTING = FilterSystem.builtin("heyting")


def posets(points):
    for up, _ in labeled_posets(points):
        yield FinitePoset([[bool(up[i] >> j & 1) for j in range(points)] for i in range(points)])


@pytest.fixture(scope="module")
def samples(fork_heyting):
    return [boolean_algebra(0), boolean_algebra(1), boolean_algebra(2), boolean_algebra(3), godel_chain(3),
            godel_chain(4), fork_heyting, upset_algebra(FinitePoset.from_covers(3, [(1, 0), (2, 0)]), "V")]


def test_from_lattice():
    B = heyting_from_lattice(chain(2))
    assert B.size == 2 and kc_holds(B)
    M3 = lattice_from_order(FinitePoset.from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))
    with pytest.raises(NotDistributive) as info:
        heyting_from_lattice(M3)
    assert info.value.witness is not None
    G = heyting_from_lattice(chain(3))
    assert G.op("neg", 1) == G.const("bot")


def test_relative_pseudocomplement(samples):
    for H in samples:
        for x in H.universe:
            assert H.op("neg", x) == H.op("arrow", x, H.const("bot"))
            for y in H.universe:
                a = H.op("arrow", x, y)
                for z in H.universe:
                    below = H.op("meet", H.op("meet", x, z), y) == H.op("meet", x, z)
                    assert below == (H.op("meet", z, a) == z)


def test_upset_examples(fork_heyting):
    assert upset_algebra(FinitePoset.from_covers(1, [])).size == 2
    assert sorted(fork_heyting.label(x) for x in fork_heyting.universe) == sorted(["{}", "{1}", "{2}", "{1,2}", "{0,1,2}"])
    c2 = upset_algebra(FinitePoset.from_covers(2, [(0, 1)]))
    assert c2.size == 3 and kc_holds(c2)


def test_kc_examples(fork_heyting):
    for k in range(4):
        assert kc_holds(boolean_algebra(k))
    assert kc_holds(godel_chain(3))
    r = kc_holds(fork_heyting)
    assert not r
    a, value = r.witness
    assert fork_heyting.label(a) == "{1}" and fork_heyting.label(value) == "{1,2}"


@pytest.mark.parametrize("points", [1, 2, 3, 4])
def test_kc_for_up_directed_posets(points):
    seen_directed = 0
    for p in posets(points):
        if is_principally_up_directed(p):
            seen_directed += 1
            assert kc_holds(upset_algebra(p))
    assert seen_directed > 0


def test_not_up_directed_fork():
    assert not is_principally_up_directed(FORK)
    assert is_principally_up_directed(FinitePoset.from_covers(3, [(1, 0), (2, 0)]))


def test_triple_negation(samples):
    for H in samples:
        for x in H.universe:
            nx = H.op("neg", x)
            assert H.op("neg", H.op("neg", nx)) == nx


def test_filters_correspond_to_congruences(samples):
    for H in samples:
        fl = filter_lattice(H, HEYTING)
        congs = congruence_lattice(H).congruences
        image = [leibniz_congruence(H, F) for F in fl.filters]
        assert len(set(image)) == len(image) and set(image) == set(congs)


def test_kc_matches_filter_weml(samples):
    for H in samples:
        assert bool(kc_holds(H)) == bool(weml_eml_on_filters(H, HEYTING).weml_id)


def test_bridge_examples(fork_heyting):
    r = kc_bridge_report([boolean_algebra(1)])
    (e,) = r.entries
    assert e.kc and e.si and e.greatest_proper_exists and r.consistent
    r = kc_bridge_report([fork_heyting])
    (e,) = r.entries
    assert not e.kc and e.si and not e.greatest_proper_exists and r.consistent
    (e,) = kc_bridge_report([godel_chain(3)]).entries
    assert e.kc and e.si and e.greatest_proper_exists
    assert len(congruence_lattice(godel_chain(3)).congruences) == 3
    assert "sample" in r.wording


def test_si_cross_check_with_coatoms(samples):
    # a finite Heyting algebra is SI exactly when its top has a unique coatom below it
    for H in samples:
        if H.size == 1:
            continue
        top = H.const("top")
        below = [x for x in H.universe if x != top]
        coatoms = [x for x in below if not any(y != x and H.op("meet", x, y) == x for y in below)]
        (e,) = kc_bridge_report([H]).entries
        assert e.si == (len(coatoms) == 1)
