"""Finite Heyting algebras and the weak excluded middle ¬x ∨ ¬¬x."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import FiniteAlgebra, Signature
from .config import DEFAULT_MAX_POWERSET_POINTS, check_cap
from .congruence import classify_identity, congruence_lattice, greatest_proper_congruence
from .order import FiniteLattice, FinitePoset, boolean_lattice, chain, distributivity_witness

__all__ = [
    "HEYTING_SIGNATURE",
    "NotDistributive",
    "heyting_from_lattice",
    "upset_algebra",
    "kc_holds",
    "KCResult",
    "BridgeEntry",
    "BridgeReport",
    "kc_bridge_report",
    "godel_chain",
    "boolean_algebra",
    "is_principally_up_directed",
]

HEYTING_SIGNATURE = Signature([("meet", 2), ("join", 2), ("arrow", 2), ("neg", 1), ("bot", 0), ("top", 0)])


class NotDistributive(ValueError):
    def __init__(self, witness):
        super().__init__(f"lattice is not distributive: witness (x, y, z) = {witness}")
        self.witness = witness


def heyting_from_lattice(L: FiniteLattice, name: str = "", labels=None) -> FiniteAlgebra:
    """Relative pseudo-complement a → b = max{z : a ∧ z ≤ b}."""
    w = distributivity_witness(L)
    if w is not None:
        raise NotDistributive(w)
    n = L.size
    arrow = []
    for a in range(n):
        for b in range(n):
            cands = [z for z in range(n) if L.leq(L.meet[a][z], b)]
            arrow.append(next(z for z in cands if all(L.leq(y, z) for y in cands)))
    tables = {
        "meet": [L.meet[a][b] for a in range(n) for b in range(n)],
        "join": [L.join[a][b] for a in range(n) for b in range(n)],
        "arrow": arrow,
        "neg": [arrow[a * n + L.bottom] for a in range(n)],
        "bot": [L.bottom],
        "top": [L.top],
    }
    return FiniteAlgebra(HEYTING_SIGNATURE, n, tables, name or L.name, labels)


def upset_algebra(p: FinitePoset, name: str = "", cap: int = DEFAULT_MAX_POWERSET_POINTS) -> FiniteAlgebra:
    """Heyting algebra of up-closed subsets of ``p``.

    Elements are numbered by (size, bitmask) so ∅ is 0 and the whole poset
    is last; labels show the member points.
    """
    check_cap(p.size, cap, "poset points")
    k = p.size
    ups = [m for m in range(1 << k) if all(p.up[i] & ~m == 0 for i in range(k) if m >> i & 1)]
    ups.sort(key=lambda m: (bin(m).count("1"), m))
    index = {m: i for i, m in enumerate(ups)}
    n = len(ups)

    def arrow(u: int, v: int) -> int:
        # w is in U → V iff every w' ≥ w in U lies in V
        return sum(1 << w for w in range(k) if p.up[w] & u & ~v == 0)

    tables = {
        "meet": [index[ups[a] & ups[b]] for a in range(n) for b in range(n)],
        "join": [index[ups[a] | ups[b]] for a in range(n) for b in range(n)],
        "arrow": [index[arrow(ups[a], ups[b])] for a in range(n) for b in range(n)],
        "neg": [index[arrow(ups[a], 0)] for a in range(n)],
        "bot": [0],
        "top": [n - 1],
    }
    labels = {i: "{" + ",".join(str(x) for x in range(k) if m >> x & 1) + "}" for i, m in enumerate(ups)}
    return FiniteAlgebra(HEYTING_SIGNATURE, n, tables, name, labels)


def godel_chain(n: int) -> FiniteAlgebra:
    return heyting_from_lattice(chain(n), f"G{n}")


def boolean_algebra(atoms: int) -> FiniteAlgebra:
    return heyting_from_lattice(boolean_lattice(atoms), f"B{1 << atoms}")


def is_principally_up_directed(p: FinitePoset) -> bool:
    n = p.size
    return all(
        any(p.leq[y][w] and p.leq[z][w] for w in range(n))
        for x in range(n) for y in range(n) for z in range(n)
        if p.leq[x][y] and p.leq[x][z]
    )


@dataclass(frozen=True)
class KCResult:
    holds: bool
    witness: Optional[tuple] = None  # (a, value of ¬a ∨ ¬¬a)

    def __bool__(self) -> bool:
        return self.holds


def kc_holds(H: FiniteAlgebra) -> KCResult:
    top = H.const("top")
    for a in H.universe:
        na = H.op("neg", a)
        val = H.op("join", na, H.op("neg", na))
        if val != top:
            return KCResult(False, (a, val))
    return KCResult(True)


@dataclass(frozen=True)
class BridgeEntry:
    name: str
    kc: bool
    classification: str
    si: bool
    greatest_proper_exists: bool


@dataclass(frozen=True)
class BridgeReport:
    entries: tuple
    consistent: bool
    wording: str = "sample-consistent (finite instances only, not a proof)"


def kc_bridge_report(Hs: Sequence[FiniteAlgebra]) -> BridgeReport:
    """KC versus greatest proper congruences of the subdirectly irreducible members."""
    entries = []
    for H in Hs:
        clr = congruence_lattice(H)
        label = classify_identity(clr)
        si = label in ("RS", "RSI")
        gp = greatest_proper_congruence(clr) is not None
        entries.append(BridgeEntry(H.name, bool(kc_holds(H)), label, si, gp))
    all_kc = all(e.kc for e in entries)
    si_ok = all(e.greatest_proper_exists for e in entries if e.si)
    # KC everywhere forces greatest proper congruences on SI members;
    # contrapositively a bad SI member forces some KC failure
    return BridgeReport(tuple(entries), si_ok or not all_kc)
