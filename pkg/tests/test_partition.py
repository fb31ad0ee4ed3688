from hypothesis import given, strategies as st

from aal.partition import Partition

labels = st.integers(1, 7).flatmap(lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n))


def test_serialization():
    p = Partition(4, [[2, 0], [3], [1]])
    assert str(p) == "{0,2|1|3}"
    assert Partition.parse("{0,2|1|3}") == p


def test_identity_and_total():
    assert Partition.identity(3).is_identity()
    assert Partition.total(3).is_total()
    assert Partition.identity(1) == Partition.total(1)


def test_from_pairs_is_transitive():
    p = Partition.from_pairs(5, [(0, 1), (1, 3)])
    assert p.related(0, 3) and not p.related(0, 2)


@given(labels)
def test_round_trip(lab):
    p = Partition.from_labels(lab)
    assert Partition.parse(str(p)) == p
    assert Partition.from_pairs(p.size, p.pairs()) == p


@given(labels, labels)
def test_meet_join_bounds(a, b):
    n = min(len(a), len(b))
    p, q = Partition.from_labels(a[:n]), Partition.from_labels(b[:n])
    m, j = p.meet(q), p.join(q)
    assert m.refines(p) and m.refines(q)
    assert p.refines(j) and q.refines(j)
    assert m.pairs() == p.pairs() & q.pairs()


def test_union_of_blocks():
    p = Partition.parse("{0,1|2|3}")
    assert p.is_union_of_blocks({0, 1, 3})
    assert not p.is_union_of_blocks({0, 2})
