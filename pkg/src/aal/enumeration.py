"""Small lattices up to isomorphism, plus a brute-force labeled-order oracle.

The generator places bottom at 0 and top at n-1 and runs over naturally
labeled posets on the n-2 inner elements; the oracle runs over every
labeled partial order on n elements and deduplicates by a canonical form.
The two share no code path beyond the lattice type.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterator

from .config import DEFAULT_MAX_LATTICE, check_cap
from .order import FiniteLattice, FinitePoset, NotALattice, lattice_from_order, lattice_isomorphism, _signature

__all__ = [
    "enumerate_lattices",
    "natural_posets",
    "labeled_posets",
    "bruteforce_lattice_classes",
    "canonical_form",
]


def natural_posets(k: int) -> Iterator[tuple[int, ...]]:
    """Posets on range(k) where i < j in the order implies i < j as integers.

    Each poset is yielded once as a tuple of strict down-set bitmasks.
    """
    if k == 0:
        yield ()
        return

    for prev in natural_posets(k - 1):
        for mask in range(1 << (k - 1)):
            # new element k-1 is maximal; its strict down-set must be down-closed
            if all(prev[i] & ~mask == 0 for i in range(k - 1) if mask >> i & 1):
                yield prev + (mask,)


def enumerate_lattices(n: int, cap: int = DEFAULT_MAX_LATTICE) -> Iterator[FiniteLattice]:
    """Every lattice on n elements exactly once up to isomorphism."""
    if n < 1:
        raise ValueError("lattices are non-empty")
    check_cap(n, cap, "lattice size")
    if n == 1:
        yield lattice_from_order(FinitePoset([[True]]), "L1.0")
        return
    seen: dict[tuple, list[FiniteLattice]] = {}
    count = 0
    for inner in natural_posets(n - 2):
        leq = [[False] * n for _ in range(n)]
        for i in range(n):
            leq[0][i] = leq[i][n - 1] = leq[i][i] = True
        for j, mask in enumerate(inner):
            for i in range(n - 2):
                if mask >> i & 1:
                    leq[i + 1][j + 1] = True
        try:
            L = lattice_from_order(FinitePoset(leq))
        except NotALattice:
            continue
        key = tuple(sorted(_signature(L, x) for x in L.elements()))
        bucket = seen.setdefault(key, [])
        if any(lattice_isomorphism(L, M) is not None for M in bucket):
            continue
        bucket.append(L)
        L = FiniteLattice(L.poset, L.join, L.meet, L.bottom, L.top, f"L{n}.{count}")
        count += 1
        yield L


def labeled_posets(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every partial order on range(n), as (up-set masks, down-set masks)."""
    if n == 0:
        yield (), ()
        return
    for up, down in labeled_posets(n - 1):
        k = n - 1
        full = (1 << k) - 1
        downsets = [m for m in range(full + 1) if all(down[i] & ~m == 0 for i in range(k) if m >> i & 1)]
        upsets = [m for m in range(full + 1) if all(up[i] & ~m == 0 for i in range(k) if m >> i & 1)]
        bit = 1 << k
        for D in downsets:
            common = full
            for i in range(k):
                if D >> i & 1:
                    common &= up[i]
            for U in upsets:
                if U & D or U & ~common:
                    continue
                nup = list(up)
                ndown = list(down)
                for i in range(k):
                    if D >> i & 1:
                        nup[i] |= bit
                    if U >> i & 1:
                        ndown[i] |= bit
                yield tuple(nup) + (U | bit,), tuple(ndown) + (D | bit,)


def _is_lattice(n: int, up, down) -> bool:
    for a in range(n):
        for b in range(a + 1, n):
            ub = up[a] & up[b]
            if not any(ub >> x & 1 and up[x] & ub == ub for x in range(n)):
                return False
            lb = down[a] & down[b]
            if not any(lb >> x & 1 and down[x] & lb == lb for x in range(n)):
                return False
    return True


def canonical_form(n: int, up) -> tuple[int, ...]:
    """Minimal relabeled up-set encoding over relabelings that sort elements
    by (down-set size, up-set size); an isomorphism invariant."""
    down_count = [sum(1 for j in range(n) if up[j] >> i & 1) for i in range(n)]
    inv = [(down_count[i], bin(up[i]).count("1")) for i in range(n)]
    groups: dict[tuple, list[int]] = {}
    for i in range(n):
        groups.setdefault(inv[i], []).append(i)
    keys = sorted(groups)
    best = None
    for choice in product(*(permutations(groups[k]) for k in keys)):
        order = [x for block in choice for x in block]
        pos = {x: i for i, x in enumerate(order)}
        code = tuple(sum(1 << pos[j] for j in range(n) if up[x] >> j & 1) for x in order)
        if best is None or code < best:
            best = code
    return best


def bruteforce_lattice_classes(n: int) -> tuple[int, int, set]:
    """Return (labeled posets, labeled lattices, canonical forms of lattices)."""
    posets = lattices = 0
    forms = set()
    full = (1 << n) - 1
    for up, down in labeled_posets(n):
        posets += 1
        if not any(m == full for m in up) or not any(m == full for m in down):
            continue
        if not _is_lattice(n, up, down):
            continue
        lattices += 1
        forms.add(canonical_form(n, up))
    return posets, lattices, forms
