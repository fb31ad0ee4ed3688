"""Deductive filters of finite algebras.

A filter system is either a rule presentation (axioms plus rules whose
instances are closed over) or one of three built-in descriptions:
``heyting`` (lattice filters containing 1), ``modal`` (lattice filters
containing 1 and closed under box) and ``dmm`` (lattice filters containing
the monoid identity e). The heyting and modal descriptions are the standard
ones for those logics; the dmm description is quoted from the literature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from .algebra import FiniteAlgebra, term_values
from .config import CapExceeded, check_cap, max_universe
from .order import (
    FiniteLattice,
    FinitePoset,
    Property,
    dual_pseudocomplement,
    distributivity_witness,
    is_dpc,
    lattice_from_order,
    semilattice_property,
)
from .terms import App, Term, Var, conjunction, format_term, substitute

__all__ = [
    "Filter",
    "FilterSystem",
    "FilterEngine",
    "ILSequence",
    "filter_generate",
    "filter_lattice",
    "FilterLattice",
    "ILVerification",
    "verify_il_sequence",
    "verify_filter_generation_theorem",
    "psi_iterate",
    "verify_double_star",
    "FilterLawReport",
    "weml_eml_on_filters",
    "dmm_il_sequence",
    "heyting_il_sequence",
    "s4_il_sequence",
    "modal_il_sequence",
    "dmm_rule_system",
]

Filter = frozenset

BUILTIN_KINDS = ("heyting", "modal", "dmm")


@dataclass(frozen=True)
class FilterSystem:
    kind: str
    axioms: tuple = ()
    rules: tuple = ()
    name: str = ""

    def __post_init__(self):
        if self.kind not in BUILTIN_KINDS + ("rule",):
            raise ValueError(f"unknown filter system kind {self.kind!r}")
        if self.kind != "rule" and (self.axioms or self.rules):
            raise ValueError("built-in systems take no axioms or rules")

    @classmethod
    def builtin(cls, kind: str) -> "FilterSystem":
        kind = kind.lower()
        aliases = {"modal_global": "modal"}
        kind = aliases.get(kind, kind)
        return cls(kind, name=kind)

    @classmethod
    def rule_closure(cls, axioms: Iterable[Term], rules: Iterable[tuple[Sequence[Term], Term]], name: str = "") -> "FilterSystem":
        return cls("rule", tuple(axioms), tuple((tuple(p), c) for p, c in rules), name)

    @property
    def provenance(self) -> str:
        return {
            "dmm": "lattice filters containing e (literature description)",
            "heyting": "lattice filters containing top (standard description)",
            "modal": "box-closed lattice filters containing top (standard description)",
            "rule": "closure under the supplied axioms and rules",
        }[self.kind]


class FilterEngine:
    """Filter generation for one algebra and one system, with instances precomputed."""

    def __init__(self, algebra: FiniteAlgebra, system: FilterSystem):
        self.algebra = algebra
        self.system = system
        n = algebra.size
        self.full = (1 << n) - 1
        if system.kind == "rule":
            seed = 0
            for ax in system.axioms:
                for _, (v,) in term_values(algebra, [ax]):
                    seed |= 1 << v
            self.seed = seed
            inst = set()
            for prem, concl in system.rules:
                for _, vals in term_values(algebra, list(prem) + [concl]):
                    mask = 0
                    for v in vals[:-1]:
                        mask |= 1 << v
                    inst.add((mask, 1 << vals[-1]))
            self.instances = sorted(inst)
        else:
            meet = algebra.table("meet")
            self._meet = meet
            self._upset = [0] * n
            for a in range(n):
                self._upset[a] = sum(1 << b for b in range(n) if meet[a * n + b] == a)
            if system.kind == "dmm":
                self.seed = 1 << algebra.const("e")
            else:
                self.seed = 1 << algebra.const("top")
            self._box = algebra.table("box") if system.kind == "modal" else None

    def _meet_all(self, mask: int) -> int:
        n = self.algebra.size
        acc = None
        for x in range(n):
            if mask >> x & 1:
                acc = x if acc is None else self._meet[acc * n + x]
        return acc

    def closure(self, mask: int) -> int:
        cur = mask | self.seed
        if self.system.kind == "rule":
            changed = True
            while changed:
                changed = False
                for prem, concl in self.instances:
                    if prem & cur == prem and not concl & cur:
                        cur |= concl
                        changed = True
            return cur
        while True:
            cur = self._upset[self._meet_all(cur)]
            if self._box is None:
                return cur
            boxed = cur
            for x in range(self.algebra.size):
                if cur >> x & 1:
                    boxed |= 1 << self._box[x]
            if boxed == cur:
                return cur
            cur = boxed

    def generate(self, Y: Iterable[int]) -> Filter:
        mask = 0
        for y in Y:
            mask |= 1 << y
        return _to_set(self.closure(mask))


def _to_set(mask: int) -> Filter:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return frozenset(out)


def _to_mask(s: Iterable[int]) -> int:
    m = 0
    for x in s:
        m |= 1 << x
    return m


@lru_cache(maxsize=256)
def _engine(algebra: FiniteAlgebra, system: FilterSystem) -> FilterEngine:
    return FilterEngine(algebra, system)


def filter_generate(algebra: FiniteAlgebra, system: FilterSystem, Y: Iterable[int] = ()) -> Filter:
    """Least filter of ``algebra`` containing Y."""
    return _engine(algebra, system).generate(Y)


@dataclass(frozen=True)
class FilterLattice:
    filters: tuple
    lattice: FiniteLattice

    def index(self, F: Iterable[int]) -> int:
        return self.filters.index(frozenset(F))

    def __iter__(self):
        return iter((self.filters, self.lattice))


def filter_lattice(algebra: FiniteAlgebra, system: FilterSystem, method: str = "subsets", cap: Optional[int] = None) -> FilterLattice:
    """All filters ordered by inclusion.

    ``subsets`` closes every subset of the universe (bounded by the universe
    cap); ``principal`` closes Fg(∅) and the principal filters under joins.
    """
    eng = _engine(algebra, system)
    n = algebra.size
    if method == "subsets":
        check_cap(n, cap if cap is not None else max_universe(), "universe size for the 2^n subset sweep")
        masks = {eng.closure(m) for m in range(1 << n)}
    elif method == "principal":
        gens = {eng.closure(1 << a) for a in range(n)}
        masks = {eng.closure(0)} | gens
        frontier = list(masks)
        while frontier:
            nxt = []
            for F in frontier:
                for G in gens:
                    J = eng.closure(F | G)
                    if J not in masks:
                        masks.add(J)
                        nxt.append(J)
            frontier = nxt
    else:
        raise ValueError(f"unknown method {method!r}")
    filters = sorted((_to_set(m) for m in masks), key=lambda F: (len(F), sorted(F)))
    leq = [[F <= G for G in filters] for F in filters]
    lat = lattice_from_order(FinitePoset(leq), f"Fi({algebra.name})")
    return FilterLattice(tuple(filters), lat)


class ILSequence:
    """A family n -> Ψn of finite nonempty term sets over v1..vn."""

    def __init__(self, generator: Callable[[int], Iterable[Term]], name: str = ""):
        self._generator = generator
        self.name = name

    @lru_cache(maxsize=None)
    def psi(self, n: int) -> tuple[Term, ...]:
        if n < 1:
            raise ValueError("IL-sequences are indexed by positive integers")
        terms = tuple(sorted(set(self._generator(n)), key=format_term))
        if not terms:
            raise ValueError(f"Ψ{n} of {self.name or 'sequence'} is empty")
        return terms

    def __repr__(self) -> str:
        return f"ILSequence({self.name})"


def _vars(n: int) -> list[Term]:
    return [Var(i) for i in range(1, n + 1)]


def dmm_il_sequence() -> ILSequence:
    """Ψn = {(v1 ∧ ... ∧ vn ∧ e) → (f ∧ ¬f²)} over the expanded De Morgan monoid signature."""
    bottom = App("meet", (App("f"), App("neg", (App("fuse", (App("f"), App("f"))),))))
    return ILSequence(lambda n: [App("arrow", (conjunction(_vars(n) + [App("e")]), bottom))], "dmm")


def heyting_il_sequence() -> ILSequence:
    """Ψn = {¬(v1 ∧ ... ∧ vn)}."""
    return ILSequence(lambda n: [App("neg", (conjunction(_vars(n)),))], "heyting")


def s4_il_sequence() -> ILSequence:
    """Ψk = {¬□(v1 ∧ ... ∧ vk)}, valid for every normal extension of S4."""
    return ILSequence(lambda n: [App("neg", (App("box", (conjunction(_vars(n)),)),))], "s4")


def modal_il_sequence(depth: int) -> ILSequence:
    """Ψk = {¬⊞^depth(v1 ∧ ... ∧ vk)} for a normal modal logic with IL index ``depth``."""
    from .modal import boxplus

    return ILSequence(lambda n: [App("neg", (boxplus(conjunction(_vars(n)), depth),))], f"modal{depth}")


def dmm_rule_system() -> FilterSystem:
    """Rule presentation whose closures should be the dmm filters.

    Axiom e; adjunction x, y / x ∧ y; detachment x, (x ∧ e) → y / y;
    weakening x / x ∨ y. Needs the expanded signature with ``arrow``.
    """
    x, y = Var(1), Var(2)
    axioms = [App("e")]
    rules = [
        ([x, y], App("meet", (x, y))),
        ([x, App("arrow", (App("meet", (x, App("e"))), y))], y),
        ([x], App("join", (x, y))),
    ]
    return FilterSystem.rule_closure(axioms, rules, "dmm-rules")


@dataclass(frozen=True)
class ILVerification:
    ok: bool
    checked: int
    detail: str = ""
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def _psi_values(algebra: FiniteAlgebra, terms: Sequence[Term], args: Sequence[int]) -> set[int]:
    from .terms import eval_term

    asg = {i + 1: a for i, a in enumerate(args)}
    return {eval_term(algebra, t, asg) for t in terms}


def verify_il_sequence(algebra: FiniteAlgebra, system: FilterSystem, psi: ILSequence, nmax: int, method: str = "subsets") -> ILVerification:
    """For every n ≤ nmax and tuple ā: (Fg ā)* = Fg Ψn(ā), and Ψn(ā) ∪ ā generates A."""
    fl = filter_lattice(algebra, system, method)
    L = fl.lattice
    if not is_dpc(L):
        w = semilattice_property(L, Property.DPC).witness
        return ILVerification(False, 0, f"filter lattice is not dually pseudo-complemented at filter {sorted(fl.filters[w[0]])}", w)
    full = frozenset(algebra.universe)
    checked = 0
    for n in range(1, nmax + 1):
        terms = psi.psi(n)
        for args in product(algebra.universe, repeat=n):
            checked += 1
            gen = filter_generate(algebra, system, args)
            star = fl.filters[dual_pseudocomplement(L, fl.index(gen))]
            vals = _psi_values(algebra, terms, args)
            image = filter_generate(algebra, system, vals)
            if image != star:
                return ILVerification(
                    False, checked,
                    f"n={n} args={args}: (Fg ā)* = {sorted(star)} but Fg Ψ(ā) = {sorted(image)}", args,
                )
            if filter_generate(algebra, system, vals | set(args)) != full:
                return ILVerification(False, checked, f"n={n} args={args}: Ψ(ā) ∪ ā is consistent", args)
    return ILVerification(True, checked)


def verify_filter_generation_theorem(
    algebra: FiniteAlgebra, system: FilterSystem, psi: ILSequence, F: Iterable[int], args: Sequence[int]
) -> bool:
    """A = F + Fg ā exactly when Ψn(ā) ⊆ F."""
    F = frozenset(F)
    lhs = filter_generate(algebra, system, F | set(args)) == frozenset(algebra.universe)
    rhs = _psi_values(algebra, psi.psi(len(args)), args) <= F
    return lhs == rhs


def psi_iterate(psi: ILSequence, n: int) -> tuple[Term, ...]:
    """Ψ_{#n} with the members of Ψn, in serialization order, put for v1..v#n."""
    members = psi.psi(n)
    outer = psi.psi(len(members))
    mapping = {i + 1: t for i, t in enumerate(members)}
    return tuple(sorted({substitute(t, mapping) for t in outer}, key=format_term))


def verify_double_star(algebra: FiniteAlgebra, system: FilterSystem, psi: ILSequence, n: int, method: str = "subsets") -> ILVerification:
    """(Fg ā)** = Fg Ψ#nΨn(ā), and ā derives Ψ#nΨn(ā), for every n-tuple ā."""
    fl = filter_lattice(algebra, system, method)
    L = fl.lattice
    if not is_dpc(L):
        return ILVerification(False, 0, "filter lattice is not dually pseudo-complemented")
    iterated = psi_iterate(psi, n)
    checked = 0
    for args in product(algebra.universe, repeat=n):
        checked += 1
        gen = filter_generate(algebra, system, args)
        ss = fl.filters[dual_pseudocomplement(L, dual_pseudocomplement(L, fl.index(gen)))]
        vals = _psi_values(algebra, iterated, args)
        if filter_generate(algebra, system, vals) != ss:
            return ILVerification(False, checked, f"args={args}: (Fg ā)** = {sorted(ss)}", args)
        if not vals <= gen:
            return ILVerification(False, checked, f"args={args}: Ψ#nΨn(ā) not inside Fg ā", args)
    return ILVerification(True, checked)


@dataclass(frozen=True)
class FilterLawReport:
    dpc: bool
    weml_id: Optional[bool]
    eml_id: Optional[bool]
    distributive: bool
    witnesses: dict = field(default_factory=dict)
    wording: str = "identity holds on the filter lattice of the supplied algebra"


def weml_eml_on_filters(algebra: FiniteAlgebra, system: FilterSystem, method: str = "subsets") -> FilterLawReport:
    fl = filter_lattice(algebra, system, method)
    L = fl.lattice
    dw = distributivity_witness(L)
    witnesses = {}
    if dw is not None:
        witnesses["distributive"] = dw
    dpc = semilattice_property(L, Property.DPC)
    if not dpc:
        witnesses["DPC"] = dpc.witness
        return FilterLawReport(False, None, None, dw is None, witnesses)
    weml = semilattice_property(L, Property.WEML_ID)
    eml = semilattice_property(L, Property.EML_ID)
    if not weml:
        witnesses["WEML_ID"] = weml.witness
    if not eml:
        witnesses["EML_ID"] = eml.witness
    return FilterLawReport(True, weml.holds, eml.holds, dw is None, witnesses)
