"""De Morgan monoids: axioms, derived operations, the four small named
algebras, and the filter/congruence and IL/WEML checks for relevance logic."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Optional

from .algebra import FiniteAlgebra, Signature
from .congruence import (
    classify_identity,
    congruence_lattice,
    greatest_proper_congruence,
    leibniz_congruence,
)
from .filters import FilterSystem, dmm_il_sequence, filter_lattice, verify_il_sequence, weml_eml_on_filters
from .kernels import fusion_violation
from .order import FinitePoset, IrrMode, lattice_from_order, meet_irreducibles, sublattice
from .partition import Partition

__all__ = [
    "DMM_SIGNATURE",
    "EXPANDED_DMM_SIGNATURE",
    "AxiomReport",
    "validate_dmm",
    "expand_dmm",
    "Derived",
    "derived",
    "NAMED",
    "NamedSearchError",
    "fusion_solutions",
    "named",
    "StructureFlags",
    "structure_flags",
    "IsoCheck",
    "filter_congruence_iso_check",
    "bottom_meet_irreducible_below_e",
    "RtCheck",
    "rt_il_weml_check",
]

DMM_SIGNATURE = Signature([("fuse", 2), ("meet", 2), ("join", 2), ("neg", 1), ("e", 0)])
# f = ¬e and x → y = ¬(x · ¬y) are term-definable; carrying them as tables
# lets IL terms be written directly without changing congruences or subalgebras
EXPANDED_DMM_SIGNATURE = DMM_SIGNATURE.extend([("f", 0), ("arrow", 2)])

DMM = FilterSystem.builtin("dmm")


@dataclass(frozen=True)
class AxiomReport:
    results: dict  # name -> witness tuple, or None when the law holds

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.results.values())

    def failures(self) -> dict:
        return {k: w for k, w in self.results.items() if w is not None}

    def __bool__(self) -> bool:
        return self.ok


def _first(n: int, arity: int, pred):
    for args in product(range(n), repeat=arity):
        if not pred(*args):
            return args
    return None


def validate_dmm(A: FiniteAlgebra) -> AxiomReport:
    """Check every De Morgan monoid axiom and derived law exhaustively."""
    for s, k in DMM_SIGNATURE:
        if s not in A.signature or A.signature.arity(s) != k:
            raise ValueError(f"algebra lacks {s}/{k}")
    n = A.size
    M = lambda a, b: A.op("meet", a, b)
    J = lambda a, b: A.op("join", a, b)
    F = lambda a, b: A.op("fuse", a, b)
    N = lambda a: A.op("neg", a)
    e = A.const("e")
    le = lambda a, b: M(a, b) == a
    arrow = lambda a, b: N(F(a, N(b)))
    r = {}
    r["meet_commutative"] = _first(n, 2, lambda x, y: M(x, y) == M(y, x))
    r["join_commutative"] = _first(n, 2, lambda x, y: J(x, y) == J(y, x))
    r["meet_associative"] = _first(n, 3, lambda x, y, z: M(x, M(y, z)) == M(M(x, y), z))
    r["join_associative"] = _first(n, 3, lambda x, y, z: J(x, J(y, z)) == J(J(x, y), z))
    r["idempotent"] = _first(n, 1, lambda x: M(x, x) == x and J(x, x) == x)
    r["absorption"] = _first(n, 2, lambda x, y: M(x, J(x, y)) == x and J(x, M(x, y)) == x)
    r["distributive"] = _first(n, 3, lambda x, y, z: M(x, J(y, z)) == J(M(x, y), M(x, z)))
    r["fuse_associative"] = _first(n, 3, lambda x, y, z: F(x, F(y, z)) == F(F(x, y), z))
    r["fuse_commutative"] = _first(n, 2, lambda x, y: F(x, y) == F(y, x))
    r["fuse_identity"] = _first(n, 1, lambda x: F(e, x) == x)
    r["square_increasing"] = _first(n, 1, lambda x: le(x, F(x, x)))
    r["double_negation"] = _first(n, 1, lambda x: N(N(x)) == x)
    r["involution_law"] = _first(n, 3, lambda x, y, z: le(F(x, y), z) == le(F(x, N(z)), N(y)))
    r["residuation"] = _first(n, 3, lambda x, y, z: le(F(x, y), z) == le(y, arrow(x, z)))
    r["order_equation"] = _first(n, 2, lambda x, z: le(x, z) == le(e, arrow(x, z)))
    r["e_arrow"] = _first(n, 1, lambda x: arrow(e, x) == x)
    r["de_morgan"] = _first(n, 2, lambda x, y: N(M(x, y)) == J(N(x), N(y)) and N(J(x, y)) == M(N(x), N(y)))
    r["e_not_least"] = None if n == 1 or not all(le(e, x) for x in range(n)) else (e,)
    if "f" in A.signature:
        r["f_is_neg_e"] = None if A.const("f") == N(e) else (A.const("f"),)
    if "arrow" in A.signature:
        r["arrow_definition"] = _first(n, 2, lambda x, y: A.op("arrow", x, y) == arrow(x, y))
    return AxiomReport(r)


def expand_dmm(A: FiniteAlgebra) -> FiniteAlgebra:
    """Add tables for f and arrow if absent."""
    if "f" in A.signature and "arrow" in A.signature:
        return A
    n = A.size
    neg = A.table("neg")
    fuse = A.table("fuse")
    arrow = [neg[fuse[x * n + neg[y]]] for x in range(n) for y in range(n)]
    base = A.reduct(DMM_SIGNATURE.names())
    return base.expand({"f": (0, [neg[A.const("e")]]), "arrow": (2, arrow)})


@dataclass(frozen=True)
class Derived:
    f: int
    arrow: tuple
    biarrow: tuple
    bottom: Optional[int]
    top: Optional[int]

    def arrow_of(self, n: int, a: int, b: int) -> int:
        return self.arrow[a * n + b]


def derived(A: FiniteAlgebra) -> Derived:
    n = A.size
    neg = A.table("neg")
    fuse = A.table("fuse")
    meet = A.table("meet")
    arrow = tuple(neg[fuse[x * n + neg[y]]] for x in range(n) for y in range(n))
    biarrow = tuple(meet[arrow[a * n + b] * n + arrow[b * n + a]] for a in range(n) for b in range(n))
    lows = [a for a in range(n) if all(meet[a * n + b] == a for b in range(n))]
    highs = [a for a in range(n) if all(meet[b * n + a] == b for b in range(n))]
    return Derived(neg[A.const("e")], arrow, biarrow, lows[0] if lows else None, highs[0] if highs else None)


@dataclass(frozen=True)
class _Diagram:
    labels: tuple
    covers: tuple
    e: str
    neg: dict  # label -> label
    f_squared: Optional[str]  # label the diagram gives to f·f, if any


# Orders and involutions read off the labeled Hasse diagrams: ¬ swaps e and f
# and swaps f² with ¬f², and is an order anti-automorphism.
NAMED = {
    "B2": _Diagram(("f", "e"), (("f", "e"),), "e", {"f": "e", "e": "f"}, None),
    "S3": _Diagram(("bot", "e", "top"), (("bot", "e"), ("e", "top")), "e", {"bot": "top", "e": "e", "top": "bot"}, None),
    "C4": _Diagram(
        ("negf2", "e", "f", "f2"), (("negf2", "e"), ("e", "f"), ("f", "f2")), "e",
        {"negf2": "f2", "e": "f", "f": "e", "f2": "negf2"}, "f2",
    ),
    "D4": _Diagram(
        ("negf2", "e", "f", "f2"), (("negf2", "e"), ("negf2", "f"), ("e", "f2"), ("f", "f2")), "e",
        {"negf2": "f2", "e": "f", "f": "e", "f2": "negf2"}, "f2",
    ),
}


class NamedSearchError(RuntimeError):
    pass


def _diagram_algebra(d: _Diagram, fuse: list[int], name: str) -> FiniteAlgebra:
    n = len(d.labels)
    idx = {s: i for i, s in enumerate(d.labels)}
    lat = lattice_from_order(FinitePoset.from_covers(n, [(idx[a], idx[b]) for a, b in d.covers]))
    tables = {
        "fuse": fuse,
        "meet": [lat.meet[a][b] for a in range(n) for b in range(n)],
        "join": [lat.join[a][b] for a in range(n) for b in range(n)],
        "neg": [idx[d.neg[s]] for s in d.labels],
        "e": [idx[d.e]],
    }
    return FiniteAlgebra(DMM_SIGNATURE, n, tables, name, dict(enumerate(d.labels)))


def fusion_solutions(name: str, use_square_label: bool = True) -> list[FiniteAlgebra]:
    """Every fusion table making the diagram a De Morgan monoid.

    Commutativity and the identity e are built into the search space; the
    diagonal is pruned by square-increasingness; each complete candidate is
    checked against every axiom. With ``use_square_label`` the label f² is
    read as a constraint f·f = f².
    """
    d = NAMED[name]
    n = len(d.labels)
    idx = {s: i for i, s in enumerate(d.labels)}
    e = idx[d.e]
    probe = _diagram_algebra(d, [0] * (n * n), name)
    le = lambda a, b: probe.op("meet", a, b) == a
    f = probe.op("neg", e)
    free = [(i, j) for i in range(n) for j in range(i, n) if e not in (i, j)]
    domains = []
    for i, j in free:
        dom = list(range(n))
        if i == j:
            dom = [v for v in dom if le(i, v)]
        if use_square_label and d.f_squared is not None and (i, j) == (f, f):
            dom = [v for v in dom if v == idx[d.f_squared]]
        domains.append(dom)
    meet, neg = probe.table("meet"), probe.table("neg")
    out = []
    for choice in product(*domains):
        table = [0] * (n * n)
        for x in range(n):
            table[e * n + x] = table[x * n + e] = x
        for (i, j), v in zip(free, choice):
            table[i * n + j] = table[j * n + i] = v
        # the kernel sweeps only the laws involving fusion; survivors get the full check
        if fusion_violation(n, table, meet, neg, e) >= 0:
            continue
        A = _diagram_algebra(d, table, name)
        if validate_dmm(A).ok:
            out.append(A)
    return out


@lru_cache(maxsize=None)
def named(name: str) -> FiniteAlgebra:
    """The named De Morgan monoid (B2, S3, C4 or D4), expanded with f and arrow.

    Raises NamedSearchError unless the constraint search finds exactly one
    fusion table.
    """
    name = name.upper()
    if name not in NAMED:
        raise KeyError(f"unknown named algebra {name!r}; choose from {sorted(NAMED)}")
    sols = fusion_solutions(name)
    if len(sols) != 1:
        raise NamedSearchError(f"{name}: {len(sols)} fusion tables satisfy the diagram, expected 1")
    return expand_dmm(sols[0])


@dataclass(frozen=True)
class StructureFlags:
    bounded: bool
    rigorously_compact: Optional[bool]
    rigorously_compact_via_arrow: Optional[bool]
    idempotent: bool
    f_below_e: bool
    anti_idempotent: bool
    fsi_proxy: bool
    classification: str


def structure_flags(A: FiniteAlgebra) -> StructureFlags:
    n = A.size
    d = derived(A)
    bounded = d.bottom is not None and d.top is not None
    fuse = A.table("fuse")
    meet = A.table("meet")
    le = lambda a, b: meet[a * n + b] == a
    rc = rc_arrow = None
    if bounded:
        rest = [a for a in range(n) if a != d.bottom]
        rc = all(fuse[a * n + d.top] == d.top for a in rest)
        rc_arrow = all(d.arrow[a * n + d.bottom] == d.bottom for a in rest)
    f2 = fuse[d.f * n + d.f]
    label = classify_identity(congruence_lattice(A))
    return StructureFlags(
        bounded=bounded,
        rigorously_compact=rc,
        rigorously_compact_via_arrow=rc_arrow,
        idempotent=all(fuse[a * n + a] == a for a in range(n)),
        f_below_e=le(d.f, A.const("e")),
        anti_idempotent=all(le(x, f2) for x in range(n)),
        fsi_proxy=label != "NONE",
        classification=label,
    )


@dataclass(frozen=True)
class IsoCheck:
    ok: bool
    pairs: tuple = ()  # (filter, congruence) matches
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _omega_formula(A: FiniteAlgebra, F: frozenset, d: Derived) -> Optional[Partition]:
    n = A.size
    rel = {(a, b) for a in range(n) for b in range(n) if d.biarrow[a * n + b] in F}
    theta = Partition.from_pairs(n, rel)
    return theta if theta.pairs() == rel else None


def filter_congruence_iso_check(A: FiniteAlgebra) -> IsoCheck:
    """Ω by partition refinement agrees with {(a, b) : a ↔ b ∈ F} on every
    filter, and F ↦ Ω F, θ ↦ {a : a ∧ e ≡θ e} are inverse lattice isomorphisms."""
    n = A.size
    d = derived(A)
    e = A.const("e")
    meet = A.table("meet")
    fl = filter_lattice(A, DMM)
    clr = congruence_lattice(A)
    matches = []
    for F in fl.filters:
        generic = leibniz_congruence(A, F)
        formula = _omega_formula(A, F, d)
        if formula is None:
            return IsoCheck(False, tuple(matches), f"a ↔ b ∈ {sorted(F)} is not an equivalence relation")
        if generic != formula:
            return IsoCheck(False, tuple(matches), f"filter {sorted(F)}: refinement gives {generic}, formula gives {formula}")
        if frozenset(a for a in range(n) if generic.related(meet[a * n + e], e)) != F:
            return IsoCheck(False, tuple(matches), f"inverse map does not recover {sorted(F)}")
        matches.append((F, generic))
    images = [t for _, t in matches]
    if sorted(images) != sorted(clr.congruences) or len(set(images)) != len(images):
        return IsoCheck(False, tuple(matches), "F ↦ ΩF is not a bijection onto the congruences")
    for (F, s) in matches:
        for (G, t) in matches:
            if (F <= G) != s.refines(t):
                return IsoCheck(False, tuple(matches), f"order not preserved between {sorted(F)} and {sorted(G)}")
    for theta in clr.congruences:
        back = frozenset(a for a in range(n) if theta.related(meet[a * n + e], e))
        if back not in fl.filters or leibniz_congruence(A, back) != theta:
            return IsoCheck(False, tuple(matches), f"θ = {theta} does not round-trip")
    return IsoCheck(True, tuple(matches))


def bottom_meet_irreducible_below_e(A: FiniteAlgebra) -> Optional[bool]:
    """Is ⊥ meet-irreducible in the sublattice (e] = {a : a ≤ e}? None if unbounded."""
    d = derived(A)
    if d.bottom is None:
        return None
    n = A.size
    e = A.const("e")
    lat = lattice_from_order(FinitePoset([[A.op("meet", a, b) == a for b in range(n)] for a in range(n)]))
    down_e = [a for a in range(n) if lat.leq(a, e)]
    sub, members = sublattice(lat, down_e)
    return members.index(d.bottom) in meet_irreducibles(sub, IrrMode.MEET_IRR)


@dataclass(frozen=True)
class RtCheck:
    il_ok: bool
    least_is_fmeet: bool
    weml_id: Optional[bool]
    greatest_proper_when_fsi: bool
    detail: dict = field(default_factory=dict)
    note: str = "singleton Ψn justified by the deduction-detachment form (α ∧ e) → β"

    @property
    def all_ok(self) -> bool:
        return self.il_ok and self.least_is_fmeet and bool(self.weml_id) and self.greatest_proper_when_fsi


def rt_il_weml_check(A: FiniteAlgebra, nmax: int = 2) -> RtCheck:
    A = expand_dmm(A)
    n = A.size
    d = derived(A)
    il = verify_il_sequence(A, DMM, dmm_il_sequence(), nmax)
    fuse = A.table("fuse")
    f2 = fuse[d.f * n + d.f]
    fmeet = A.op("meet", d.f, A.op("neg", f2))
    least = d.bottom is not None and fmeet == d.bottom
    laws = weml_eml_on_filters(A, DMM)
    clr = congruence_lattice(A)
    fsi = classify_identity(clr) != "NONE"
    bounded = d.bottom is not None and d.top is not None
    gp = greatest_proper_congruence(clr) is not None
    detail = {"il": il.detail or f"{il.checked} tuples", "f_meet_neg_f2": A.label(fmeet), "classification": classify_identity(clr)}
    return RtCheck(il.ok, least, laws.weml_id, (not (bounded and n > 1 and fsi)) or gp, detail)
