"""Shared fixtures and brute-force oracles.

The oracles here deliberately avoid the library's algorithms: congruences
are found by testing every set partition for compatibility with every
operation row, and filters by testing every subset against the textbook
description.
"""

from itertools import product
from pathlib import Path

import pytest

from aal.algebra import FiniteAlgebra
from aal.demorgan import named
from aal.heyting import upset_algebra
from aal.modal import KripkeFrame, complex_algebra
from aal.order import FinitePoset
from aal.partition import Partition

GOLDEN = Path(__file__).parent / "golden"


def set_partitions(n):
    """Every partition of range(n), as label lists (restricted growth strings)."""
    def grow(prefix, top):
        if len(prefix) == n:
            yield list(prefix)
            return
        for b in range(top + 2):
            yield from grow(prefix + [b], max(top, b))

    if n == 0:
        yield []
        return
    yield from grow([0], 0)


def compatible(A: FiniteAlgebra, labels) -> bool:
    n = A.size
    for sym, k in A.signature:
        table = A.table(sym)
        seen = {}
        for i, args in enumerate(product(range(n), repeat=k)):
            key = tuple(labels[a] for a in args)
            val = labels[table[i]]
            if seen.setdefault(key, val) != val:
                return False
    return True


def brute_congruences(A: FiniteAlgebra) -> set:
    return {Partition.from_labels(lab) for lab in set_partitions(A.size) if compatible(A, lab)}


def brute_lattice_filters(A: FiniteAlgebra, seed: int, box=False) -> set:
    """Up-closed, meet-closed subsets containing ``seed`` (and box-closed if asked)."""
    n = A.size
    le = lambda a, b: A.op("meet", a, b) == a
    out = set()
    for mask in range(1 << n):
        F = {x for x in range(n) if mask >> x & 1}
        if seed not in F:
            continue
        if any(le(a, b) and b not in F for a in F for b in range(n)):
            continue
        if any(A.op("meet", a, b) not in F for a in F for b in F):
            continue
        if box and any(A.op("box", a) not in F for a in F):
            continue
        out.add(frozenset(F))
    return out


FORK = FinitePoset.from_covers(3, [(0, 1), (0, 2)])


@pytest.fixture(scope="session")
def fork_heyting():
    return upset_algebra(FORK, "fork")


@pytest.fixture(scope="session")
def dmm_named():
    return {name: named(name) for name in ("B2", "S3", "C4", "D4")}


@pytest.fixture(scope="session")
def chain2_modal():
    return complex_algebra(KripkeFrame(2, [(0, 1)], "chain2", "preorder"))


@pytest.fixture(scope="session")
def fork_modal():
    return complex_algebra(KripkeFrame(3, [(0, 1), (0, 2)], "fork", "preorder"))


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in __import__("sys").modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.TITLES):
        status = {True: "PASS", False: "FAIL"}.get(results.get(number), "NOT RUN")
        terminalreporter.write_line(f"criterion {number:2d} {mod.TITLES[number]}: {status}")
