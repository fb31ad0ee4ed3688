import pytest

from aal.demorgan import DMM, named
from aal.filters import dmm_il_sequence, dmm_rule_system, filter_generate
from aal.formats import (
    FormatError,
    load,
    parse_psi,
    read_algebra,
    read_frame,
    read_poset,
    read_psi,
    read_system,
    write_algebra,
    write_frame,
    write_poset,
    write_system,
)
from aal.heyting import boolean_algebra, upset_algebra
from aal.modal import KripkeFrame, complex_algebra

from conftest import FORK, GOLDEN


def same_algebra(A, B):
    return A.size == B.size and A.signature == B.signature and all(A.table(s) == B.table(s) for s, _ in A.signature)


@pytest.mark.parametrize("name", ["B2", "S3", "C4", "D4"])
def test_golden_algebras_match_search(name):
    A = read_algebra(GOLDEN / f"{name}.alg")
    B = named(name)
    assert same_algebra(A, B)
    assert [A.label(x) for x in A.universe] == [B.label(x) for x in B.universe]


@pytest.mark.parametrize("A", [boolean_algebra(2), upset_algebra(FORK, "fork"), named("D4")], ids=str)
def test_algebra_round_trip(A):
    text = write_algebra(A)
    B = read_algebra(text)
    assert same_algebra(A, B) and write_algebra(B) == text


def test_poset_round_trip():
    name, p = read_poset(GOLDEN / "fork.poset")
    assert name == "fork" and p.leq == FORK.leq
    name2, q = read_poset(write_poset(p, name))
    assert name2 == name and q.leq == p.leq


def test_frame_round_trip(fork_modal):
    fr = read_frame(GOLDEN / "fork.frame")
    assert complex_algebra(fr).table("box") == fork_modal.table("box")
    again = read_frame(write_frame(fr))
    assert again.rel == fr.rel and again.name == fr.name
    c2 = read_frame(GOLDEN / "chain2.frame")
    assert c2.rel == KripkeFrame(2, [(0, 1)], closure="preorder").rel


def test_system_files(dmm_named):
    builtin = read_system(GOLDEN / "dmm.system")
    assert builtin == DMM
    rules = read_system(GOLDEN / "dmm_rules.system")
    assert rules == dmm_rule_system()
    assert read_system(write_system(rules)).rules == rules.rules
    C4 = dmm_named["C4"]
    for x in C4.universe:
        assert filter_generate(C4, rules, {x}) == filter_generate(C4, DMM, {x})


def test_psi_file_matches_builtin():
    psi = read_psi(GOLDEN / "dmm.psi")
    ref = dmm_il_sequence()
    for n in (1, 2, 3, 4):
        assert psi.psi(n) == ref.psi(n)


def test_parse_psi_fixed_arity():
    psi = parse_psi("psi 2 := meet(v1, v2); join(v1, v2)")
    assert len(psi.psi(2)) == 2
    with pytest.raises((ValueError, KeyError)):
        psi.psi(3)


def test_load_dispatch():
    assert load(GOLDEN / "C4.alg").size == 4
    assert isinstance(load(GOLDEN / "fork.frame"), KripkeFrame)


@pytest.mark.parametrize(
    "text, line",
    [
        ("algebra X\nsize two\n", 2),
        ("algebra X\nsize 2\nop neg/1\n0 5\n", 4),
        ("algebra X\nsize 2\nop neg/1\n0 1\n", None),
        ("poset P\nsize 2\ncover 0 1\ncover 1 0\n", None),
        ("frame F\npoints 2\nedge 0 7\n", 3),
        ("system S\nkind rule\nrule v1 => meet(v1\n", 3),
        ("system S\nkind heyting\naxiom e\n", None),
    ],
)
def test_format_errors(text, line):
    reader = {"algebra": read_algebra, "poset": read_poset, "frame": read_frame, "system": read_system}[text.split()[0]]
    with pytest.raises(FormatError) as info:
        reader(text)
    if line is not None:
        assert info.value.line == line


def test_missing_file():
    with pytest.raises(OSError):
        read_algebra("/nonexistent/where.alg")
