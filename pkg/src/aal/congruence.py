"""Congruences of finite algebras: generation, lattices, the Leibniz
operator, and identity-congruence classification."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from .algebra import FiniteAlgebra, QuasiEquation, has_trivial_subalgebra, quotient, satisfies_quasiequation
from .config import DEFAULT_MAX_CONGRUENCE_UNIVERSE, check_cap
from .kernels import closure_labels, refine_labels
from .order import FiniteLattice, FinitePoset, IrrMode, lattice_from_order, meet_irreducibles
from .partition import Partition

__all__ = [
    "CongruenceLatticeResult",
    "KExcludesTrivial",
    "translations",
    "principal_congruence",
    "congruence_generated",
    "is_congruence",
    "congruence_lattice",
    "relative_congruence_lattice",
    "leibniz_congruence",
    "classify_identity",
    "greatest_proper_congruence",
    "is_reduced_matrix",
    "KollarReport",
    "kollar_and_semisimple_report",
]


class KExcludesTrivial(ValueError):
    pass


def translations(algebra: FiniteAlgebra) -> list[tuple[int, ...]]:
    """All basic translations x -> g(c1..x..ck) as lookup tuples over the universe."""
    n = algebra.size
    out = set()
    for sym, k in algebra.signature:
        if k == 0:
            continue
        table = algebra.table(sym)
        for pos in range(k):
            for ctx in product(range(n), repeat=k - 1):
                row = []
                for x in range(n):
                    idx = 0
                    for a in ctx[:pos] + (x,) + ctx[pos:]:
                        idx = idx * n + a
                    row.append(table[idx])
                out.add(tuple(row))
    return sorted(out)


def _flat(trans: Sequence[tuple[int, ...]]) -> list[int]:
    return [x for row in trans for x in row]


def _closure(n: int, trans: Sequence[tuple[int, ...]], pairs: Iterable[tuple[int, int]]) -> Partition:
    return Partition.from_labels(closure_labels(n, _flat(trans), list(pairs)))


def congruence_generated(algebra: FiniteAlgebra, pairs: Iterable[tuple[int, int]], _trans=None) -> Partition:
    """Least congruence containing ``pairs``."""
    trans = _trans if _trans is not None else translations(algebra)
    return _closure(algebra.size, trans, pairs)


def principal_congruence(algebra: FiniteAlgebra, a: int, b: int, _trans=None) -> Partition:
    return congruence_generated(algebra, [(a, b)], _trans)


def is_congruence(algebra: FiniteAlgebra, theta: Partition) -> bool:
    return all(theta.related(t[blk[0]], t[x]) for t in translations(algebra) for blk in theta.blocks for x in blk)


@dataclass(frozen=True)
class CongruenceLatticeResult:
    congruences: tuple
    lattice: FiniteLattice
    identity_index: int
    total_index: int

    def index(self, theta: Partition) -> int:
        return self.congruences.index(theta)


def _lattice_result(congs: Iterable[Partition], name: str = "") -> CongruenceLatticeResult:
    ordered = sorted(set(congs), key=lambda p: (-len(p), p.blocks))
    leq = [[p.refines(q) for q in ordered] for p in ordered]
    lat = lattice_from_order(FinitePoset(leq), name)
    return CongruenceLatticeResult(tuple(ordered), lat, lat.bottom, lat.top)


def congruence_lattice(algebra: FiniteAlgebra, cap: int = DEFAULT_MAX_CONGRUENCE_UNIVERSE) -> CongruenceLatticeResult:
    """All congruences: principal ones closed under binary joins."""
    check_cap(algebra.size, cap, "universe size")
    n = algebra.size
    trans = translations(algebra)
    principals = {principal_congruence(algebra, a, b, trans) for a in range(n) for b in range(a + 1, n)}
    found = {Partition.identity(n)} | principals
    frontier = list(found)
    while frontier:
        nxt = []
        for theta in frontier:
            for p in principals:
                j = theta.join(p)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return _lattice_result(found, f"Con({algebra.name})")


def relative_congruence_lattice(
    algebra: FiniteAlgebra, K: Sequence[QuasiEquation], cap: int = DEFAULT_MAX_CONGRUENCE_UNIVERSE
) -> CongruenceLatticeResult:
    """Congruences whose quotient satisfies every quasi-equation in K.

    Joins are recomputed inside the filtered set, which is closed under
    intersections but is not a sublattice of Con(A) in general.
    """
    full = congruence_lattice(algebra, cap)
    if not K:
        return full
    total = Partition.total(algebra.size)
    trivial = quotient(algebra, total)
    if not all(satisfies_quasiequation(trivial, q) for q in K):
        raise KExcludesTrivial("some quasi-equation fails on the trivial algebra")
    keep = [t for t in full.congruences if all(satisfies_quasiequation(quotient(algebra, t), q) for q in K)]
    return _lattice_result(keep, f"Con_K({algebra.name})")


def leibniz_congruence(algebra: FiniteAlgebra, F: Iterable[int]) -> Partition:
    """Largest congruence compatible with F, by partition refinement.

    Starts from {F, A \\ F} and splits blocks whose members are sent into
    different blocks by some basic translation, until stable.
    """
    n = algebra.size
    members = set(F)
    labels = [0 if x in members else 1 for x in range(n)]
    return Partition.from_labels(refine_labels(n, _flat(translations(algebra)), labels))


def classify_identity(clr: CongruenceLatticeResult) -> str:
    """RS, RSI, RFSI or NONE for the identity of a (relative) congruence lattice."""
    L = clr.lattice
    bottom = clr.identity_index
    if bottom in meet_irreducibles(L, IrrMode.COATOM):
        return "RS"
    if bottom in meet_irreducibles(L, IrrMode.COMPLETELY_MEET_IRR):
        return "RSI"
    if bottom in meet_irreducibles(L, IrrMode.MEET_IRR):
        return "RFSI"
    return "NONE"


def greatest_proper_congruence(clr: CongruenceLatticeResult) -> Optional[Partition]:
    L = clr.lattice
    proper = [i for i in L.elements() if i != clr.total_index]
    for i in proper:
        if all(L.leq(j, i) for j in proper):
            return clr.congruences[i]
    return None


def is_reduced_matrix(algebra: FiniteAlgebra, F: Iterable[int]) -> bool:
    return leibniz_congruence(algebra, F).is_identity()


@dataclass(frozen=True)
class KollarReport:
    kollar_witnesses: tuple
    rsi_list: tuple
    all_rsi_are_rs: bool
    classifications: tuple
    caveat: str = "checked on the supplied finite sample only, not on the generated quasivariety"


def kollar_and_semisimple_report(algebras: Sequence[FiniteAlgebra], K: Sequence[QuasiEquation] = ()) -> KollarReport:
    witnesses = []
    rsi = []
    classes = []
    all_rs = True
    for A in algebras:
        if A.size > 1 and has_trivial_subalgebra(A) is not None:
            witnesses.append(A.name)
        label = classify_identity(relative_congruence_lattice(A, K))
        classes.append((A.name, label))
        if label in ("RS", "RSI"):
            rsi.append(A.name)
            if label != "RS":
                all_rs = False
    return KollarReport(tuple(witnesses), tuple(rsi), all_rs, tuple(classes))
