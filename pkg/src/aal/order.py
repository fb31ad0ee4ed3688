"""Finite posets and lattices, dual pseudo-complements and the identities
and interval conditions that characterize weak and strong excluded middle
laws on lattices of filters or congruences."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

__all__ = [
    "FinitePoset",
    "FiniteLattice",
    "NotALattice",
    "PropertyRequiresDPC",
    "Property",
    "PropertyResult",
    "IrrMode",
    "TheoremCheck",
    "lattice_from_order",
    "lattice_of_algebra",
    "dual_pseudocomplement",
    "is_dpc",
    "semilattice_property",
    "distributivity_witness",
    "is_distributive",
    "meet_irreducibles",
    "compact_elements",
    "interval",
    "greatest_of",
    "theorem_conditions",
    "lattice_isomorphism",
    "are_isomorphic",
    "sublattice",
    "chain",
    "boolean_lattice",
]


class NotALattice(ValueError):
    def __init__(self, a: int, b: int, bound: str):
        super().__init__(f"elements {a} and {b} have no {bound}")
        self.pair = (a, b)
        self.bound = bound


class PropertyRequiresDPC(ValueError):
    pass


class FinitePoset:
    """A partial order on ``range(size)`` stored as a boolean matrix."""

    __slots__ = ("size", "leq", "up", "down")

    def __init__(self, leq: Sequence[Sequence[bool]]):
        n = len(leq)
        if n < 1:
            raise ValueError("posets are non-empty")
        rows = tuple(tuple(bool(x) for x in row) for row in leq)
        if any(len(r) != n for r in rows):
            raise ValueError("leq must be square")
        for i in range(n):
            if not rows[i][i]:
                raise ValueError(f"not reflexive at {i}")
            for j in range(n):
                if i != j and rows[i][j] and rows[j][i]:
                    raise ValueError(f"not antisymmetric at ({i}, {j})")
                if rows[i][j]:
                    for k in range(n):
                        if rows[j][k] and not rows[i][k]:
                            raise ValueError(f"not transitive at ({i}, {j}, {k})")
        self.size = n
        self.leq = rows
        self.up = tuple(sum(1 << j for j in range(n) if rows[i][j]) for i in range(n))
        self.down = tuple(sum(1 << j for j in range(n) if rows[j][i]) for i in range(n))

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]]) -> "FinitePoset":
        """Reflexive-transitive closure of the pairs ``i < j``."""
        rel = [[i == j for j in range(n)] for i in range(n)]
        for i, j in covers:
            rel[i][j] = True
        for k in range(n):
            for i in range(n):
                if rel[i][k]:
                    for j in range(n):
                        if rel[k][j]:
                            rel[i][j] = True
        return cls(rel)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq[a][b]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (i, j) with j covering i, in lexicographic order."""
        out = []
        for i in range(self.size):
            for j in range(self.size):
                if self.lt(i, j) and not any(self.lt(i, k) and self.lt(k, j) for k in range(self.size)):
                    out.append((i, j))
        return out

    def upper_covers(self, a: int) -> list[int]:
        return [j for (i, j) in self.covers() if i == a]

    def __eq__(self, other) -> bool:
        return isinstance(other, FinitePoset) and self.leq == other.leq

    def __hash__(self) -> int:
        return hash(self.leq)

    def __repr__(self) -> str:
        return f"FinitePoset(size={self.size}, covers={self.covers()})"


@dataclass(frozen=True)
class FiniteLattice:
    poset: FinitePoset
    join: tuple
    meet: tuple
    bottom: int
    top: int
    name: str = field(default="", compare=False)

    @property
    def size(self) -> int:
        return self.poset.size

    def leq(self, a: int, b: int) -> bool:
        return self.poset.leq[a][b]

    def elements(self) -> range:
        return range(self.poset.size)

    def upper_covers(self, a: int) -> list[int]:
        up = [x for x in self.elements() if self.poset.lt(a, x)]
        return [x for x in up if not any(self.poset.lt(y, x) for y in up)]


def lattice_from_order(p: FinitePoset, name: str = "") -> FiniteLattice:
    """Join and meet tables from the order; raises NotALattice with a witness pair."""
    n = p.size

    def least(mask: int) -> Optional[int]:
        for x in range(n):
            if mask >> x & 1 and p.up[x] & mask == mask:
                return x
        return None

    def greatest(mask: int) -> Optional[int]:
        for x in range(n):
            if mask >> x & 1 and p.down[x] & mask == mask:
                return x
        return None

    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            j = least(p.up[a] & p.up[b])
            if j is None:
                raise NotALattice(a, b, "least upper bound")
            m = greatest(p.down[a] & p.down[b])
            if m is None:
                raise NotALattice(a, b, "greatest lower bound")
            join[a][b] = join[b][a] = j
            meet[a][b] = meet[b][a] = m
    full = (1 << n) - 1
    bottom = least(full)
    top = greatest(full)
    return FiniteLattice(p, tuple(map(tuple, join)), tuple(map(tuple, meet)), bottom, top, name)


def lattice_of_algebra(algebra, meet: str = "meet", join: str = "join", name: str = "") -> FiniteLattice:
    """The lattice reduct of an algebra, ordered by a <= b iff a ∧ b = a."""
    n = algebra.size
    leq = [[algebra.op(meet, a, b) == a for b in range(n)] for a in range(n)]
    lat = lattice_from_order(FinitePoset(leq), name or algebra.name)
    for a, b in product(range(n), repeat=2):
        if lat.join[a][b] != algebra.op(join, a, b):
            raise ValueError(f"{join} disagrees with the order of {meet} at ({a}, {b})")
    return lat


def chain(n: int, name: str = "") -> FiniteLattice:
    return lattice_from_order(FinitePoset([[i <= j for j in range(n)] for i in range(n)]), name or f"chain{n}")


def boolean_lattice(atoms: int, name: str = "") -> FiniteLattice:
    n = 1 << atoms
    leq = [[i & j == i for j in range(n)] for i in range(n)]
    return lattice_from_order(FinitePoset(leq), name or f"B{atoms}")


def dual_pseudocomplement(L: FiniteLattice, a: int) -> Optional[int]:
    """Least b with a + b = 1, if the set of such b has a least element."""
    cands = [b for b in L.elements() if L.join[a][b] == L.top]
    for b in cands:
        if all(L.leq(b, c) for c in cands):
            return b
    return None


def is_dpc(L: FiniteLattice) -> bool:
    return all(dual_pseudocomplement(L, a) is not None for a in L.elements())


class Property(enum.Enum):
    DPC = "DPC"
    FRINK = "FRINK"
    WEML_ID = "WEML_ID"
    EML_ID = "EML_ID"
    STAR_MEET_ZERO = "STAR_MEET_ZERO"
    STAR_STARSTAR_MEET_ZERO = "STAR_STARSTAR_MEET_ZERO"


@dataclass(frozen=True)
class PropertyResult:
    prop: Property
    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.holds


def semilattice_property(L: FiniteLattice, prop) -> PropertyResult:
    """Exhaustive check; the witness is the lexicographically first failing tuple."""
    prop = Property(prop)
    n = L.size
    if prop is Property.DPC:
        for a in range(n):
            if dual_pseudocomplement(L, a) is None:
                return PropertyResult(prop, False, (a,))
        return PropertyResult(prop, True)
    star = [dual_pseudocomplement(L, a) for a in range(n)]
    if None in star:
        raise PropertyRequiresDPC(f"{prop.value} needs a dually pseudo-complemented lattice")
    J, M = L.join, L.meet
    if prop is Property.FRINK:
        for a, b in product(range(n), repeat=2):
            if star[star[J[a][b]]] != J[star[star[a]]][star[star[b]]]:
                return PropertyResult(prop, False, (a, b))
    elif prop is Property.WEML_ID:
        for x, y in product(range(n), repeat=2):
            if M[J[x][star[y]]][J[x][star[star[y]]]] != x:
                return PropertyResult(prop, False, (x, y))
    elif prop is Property.EML_ID:
        for x, y in product(range(n), repeat=2):
            if M[J[x][y]][J[x][star[y]]] != x:
                return PropertyResult(prop, False, (x, y))
    elif prop is Property.STAR_MEET_ZERO:
        for y in range(n):
            if M[y][star[y]] != L.bottom:
                return PropertyResult(prop, False, (y,))
    elif prop is Property.STAR_STARSTAR_MEET_ZERO:
        for y in range(n):
            if M[star[y]][star[star[y]]] != L.bottom:
                return PropertyResult(prop, False, (y,))
    return PropertyResult(prop, True)


def distributivity_witness(L: FiniteLattice) -> Optional[tuple[int, int, int]]:
    """First (x, y, z) with x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z), or None."""
    J, M = L.join, L.meet
    for x, y, z in product(L.elements(), repeat=3):
        if M[x][J[y][z]] != J[M[x][y]][M[x][z]]:
            return (x, y, z)
    return None


def is_distributive(L: FiniteLattice) -> bool:
    return distributivity_witness(L) is None


class IrrMode(enum.Enum):
    MEET_IRR = "MEET_IRR"
    COMPLETELY_MEET_IRR = "COMPLETELY_MEET_IRR"
    COATOM = "COATOM"


def meet_irreducibles(L: FiniteLattice, mode=IrrMode.MEET_IRR) -> frozenset[int]:
    mode = IrrMode(mode)
    out = set()
    for a in L.elements():
        if a == L.top:
            continue
        if mode is IrrMode.MEET_IRR:
            if all(a in (x, y) for x in L.elements() for y in L.elements() if L.meet[x][y] == a):
                out.add(a)
        elif mode is IrrMode.COMPLETELY_MEET_IRR:
            ups = L.upper_covers(a)
            if len(ups) == 1 and all(L.leq(ups[0], x) for x in L.elements() if L.poset.lt(a, x)):
                out.add(a)
        else:
            if L.upper_covers(a) == [L.top]:
                out.add(a)
    return frozenset(out)


def compact_elements(L: FiniteLattice) -> tuple[int, ...]:
    # every element of a finite lattice is compact
    return tuple(L.elements())


def interval(L: FiniteLattice, lower: int, half_open: bool = False) -> frozenset[int]:
    """[lower, 1], or [lower, 1) when ``half_open``."""
    out = {d for d in L.elements() if L.leq(lower, d)}
    if half_open:
        out.discard(L.top)
    return frozenset(out)


def greatest_of(L: FiniteLattice, subset: Iterable[int]) -> Optional[int]:
    s = list(subset)
    for x in s:
        if all(L.leq(y, x) for y in s):
            return x
    return None


@dataclass(frozen=True)
class TheoremCheck:
    which: str
    conditions: dict
    agreement: bool

    def failing(self) -> list[str]:
        return [k for k, v in self.conditions.items() if not v]


def _top_join_irreducible_above(L: FiniteLattice, a: int) -> bool:
    above = sorted(interval(L, a))
    return all(
        x == L.top or y == L.top
        for x in above
        for y in above
        if L.join[x][y] == L.top
    )


def theorem_conditions(L: FiniteLattice, which: str = "MAIN") -> TheoremCheck:
    """Evaluate the equivalent conditions of the WEML (MAIN) or EML lattice theorem.

    MAIN: (0) the identity over compact a, c; (i) over all a and compact c;
    (ii) meet-irreducible a != 1 have a largest element in [a, 1);
    (iii) 1 is join-irreducible in [a, 1] for completely meet-irreducible a.
    EML: (0') and (i') as above with c, c* in place of c*, c**;
    (ii'), (iii') ask [a, 1] = {a, 1} for (completely) meet-irreducible a.
    """
    which = which.upper()
    if not is_dpc(L):
        raise PropertyRequiresDPC("theorem conditions need a dually pseudo-complemented lattice")
    n = L.size
    star = [dual_pseudocomplement(L, a) for a in range(n)]
    J, M = L.join, L.meet
    S = compact_elements(L)
    mi = meet_irreducibles(L, IrrMode.MEET_IRR)
    cmi = meet_irreducibles(L, IrrMode.COMPLETELY_MEET_IRR)
    conds: dict[str, bool] = {}
    if which == "MAIN":
        def ident(a, c):
            return M[J[a][star[c]]][J[a][star[star[c]]]] == a

        conds["(0)"] = all(ident(a, c) for a in S for c in S)
        conds["(i)"] = all(ident(a, c) for a in range(n) for c in S)
        conds["(ii)"] = all(greatest_of(L, interval(L, a, half_open=True)) is not None for a in mi)
        conds["(iii)"] = all(_top_join_irreducible_above(L, a) for a in cmi)
    elif which == "EML":
        def ident(a, c):
            return M[J[a][c]][J[a][star[c]]] == a

        conds["(0')"] = all(ident(a, c) for a in S for c in S)
        conds["(i')"] = all(ident(a, c) for a in range(n) for c in S)
        conds["(ii')"] = all(interval(L, a) == {a, L.top} for a in mi)
        conds["(iii')"] = all(interval(L, a) == {a, L.top} for a in cmi)
    else:
        raise ValueError(f"unknown theorem {which!r}; expected MAIN or EML")
    values = set(conds.values())
    return TheoremCheck(which, conds, len(values) == 1)


def _signature(L: FiniteLattice, x: int) -> tuple[int, int, int, int]:
    p = L.poset
    lower = sum(1 for y in L.elements() if p.lt(y, x) and not any(p.lt(y, z) and p.lt(z, x) for z in L.elements()))
    return (bin(p.down[x]).count("1"), bin(p.up[x]).count("1"), len(L.upper_covers(x)), lower)


def lattice_isomorphism(A: FiniteLattice, B: FiniteLattice) -> Optional[tuple[int, ...]]:
    """An order isomorphism A -> B as a tuple, found by backtracking over
    elements with matching degree signatures; None if there is none."""
    if A.size != B.size:
        return None
    sa = [_signature(A, x) for x in A.elements()]
    sb = [_signature(B, x) for x in B.elements()]
    if sorted(sa) != sorted(sb):
        return None
    order = sorted(A.elements(), key=lambda x: (sa[x], x))
    cands = {x: [y for y in B.elements() if sb[y] == sa[x]] for x in A.elements()}
    image = [-1] * A.size
    used = [False] * B.size

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in cands[x]:
            if used[y]:
                continue
            if all(A.leq(x, z) == B.leq(y, image[z]) and A.leq(z, x) == B.leq(image[z], y) for z in order[:i]):
                image[x] = y
                used[y] = True
                if extend(i + 1):
                    return True
                used[y] = False
        image[x] = -1
        return False

    return tuple(image) if extend(0) else None


def are_isomorphic(A: FiniteLattice, B: FiniteLattice) -> bool:
    return lattice_isomorphism(A, B) is not None


def sublattice(L: FiniteLattice, elements: Iterable[int], name: str = "") -> tuple[FiniteLattice, tuple[int, ...]]:
    """Materialize a subset closed under join and meet as a lattice.

    Returns the lattice on ``range(k)`` and the embedding tuple mapping its
    elements back into ``L``.
    """
    members = tuple(sorted(set(elements)))
    index = {x: i for i, x in enumerate(members)}
    for a in members:
        for b in members:
            if L.join[a][b] not in index or L.meet[a][b] not in index:
                raise ValueError(f"subset is not closed under join and meet at ({a}, {b})")
    leq = [[L.leq(a, b) for b in members] for a in members]
    return lattice_from_order(FinitePoset(leq), name), members
