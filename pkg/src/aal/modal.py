"""Kripke frames, complex modal algebras and the modal IL / WEML conditions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .algebra import FiniteAlgebra, Signature, term_values
from .config import DEFAULT_MAX_POWERSET_POINTS, check_cap
from .terms import App, Term, Var, format_term

__all__ = [
    "MODAL_SIGNATURE",
    "KripkeFrame",
    "FrameProperties",
    "complex_algebra",
    "frame_properties",
    "TermKind",
    "boxplus",
    "diamondplus",
    "diamondplus_direct",
    "implies",
    "diamond",
    "modal_term",
    "Validity",
    "valid_in_class",
    "stabilization_index",
    "ModalReport",
    "modal_condition_report",
]

MODAL_SIGNATURE = Signature([("meet", 2), ("join", 2), ("neg", 1), ("box", 1), ("bot", 0), ("top", 0)])


class KripkeFrame:
    """A finite set of points with an accessibility relation."""

    def __init__(self, points: int, edges, name: str = "", closure: str = "none"):
        if points < 1:
            raise ValueError("frames are non-empty")
        rel = [[False] * points for _ in range(points)]
        for i, j in edges:
            rel[i][j] = True
        if closure in ("reflexive", "preorder"):
            for i in range(points):
                rel[i][i] = True
        if closure in ("transitive", "preorder"):
            for k in range(points):
                for i in range(points):
                    if rel[i][k]:
                        for j in range(points):
                            if rel[k][j]:
                                rel[i][j] = True
        elif closure not in ("none", "reflexive"):
            raise ValueError(f"unknown closure {closure!r}")
        self.points = points
        self.rel = tuple(tuple(r) for r in rel)
        self.name = name

    @classmethod
    def from_poset(cls, poset, name: str = "") -> "KripkeFrame":
        n = poset.size
        return cls(n, [(i, j) for i in range(n) for j in range(n) if poset.leq[i][j]], name)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.points) for j in range(self.points) if self.rel[i][j]]

    def __repr__(self) -> str:
        return f"KripkeFrame({self.name or '?'}, points={self.points}, edges={self.edges()})"


def complex_algebra(frame: KripkeFrame, cap: int = DEFAULT_MAX_POWERSET_POINTS) -> FiniteAlgebra:
    """Powerset algebra of the frame; element i is the subset with bitmask i.

    box(S) = {x : every R-successor of x lies in S}.
    """
    check_cap(frame.points, cap, "frame points")
    p = frame.points
    n = 1 << p
    full = n - 1
    succ = [sum(1 << j for j in range(p) if frame.rel[i][j]) for i in range(p)]
    box = [sum(1 << x for x in range(p) if succ[x] & ~s == 0) for s in range(n)]
    tables = {
        "meet": [a & b for a in range(n) for b in range(n)],
        "join": [a | b for a in range(n) for b in range(n)],
        "neg": [full & ~a for a in range(n)],
        "box": box,
        "bot": [0],
        "top": [full],
    }
    labels = {s: "{" + ",".join(str(x) for x in range(p) if s >> x & 1) + "}" for s in range(n)}
    return FiniteAlgebra(MODAL_SIGNATURE, n, tables, f"Cm({frame.name})" if frame.name else "", labels)


@dataclass(frozen=True)
class FrameProperties:
    reflexive: bool
    transitive: bool
    up_directed: bool
    up_directed_witness: Optional[tuple] = None


def frame_properties(frame: KripkeFrame) -> FrameProperties:
    R = frame.rel
    pts = range(frame.points)
    refl = all(R[x][x] for x in pts)
    trans = all(R[x][z] for x in pts for y in pts for z in pts if R[x][y] and R[y][z])
    witness = None
    for x, y, z in product(pts, repeat=3):
        if R[x][y] and R[x][z] and not any(R[y][w] and R[z][w] for w in pts):
            witness = (x, y, z)
            break
    return FrameProperties(refl, trans, witness is None, witness)


def implies(a: Term, b: Term) -> Term:
    return App("join", (App("neg", (a,)), b))


def diamond(a: Term) -> Term:
    return App("neg", (App("box", (App("neg", (a,)),)),))


def _box_power(t: Term, k: int) -> Term:
    for _ in range(k):
        t = App("box", (t,))
    return t


def boxplus(t: Term, n: int) -> Term:
    """φ ∧ □φ ∧ ... ∧ □^n φ, nested to the right; n = 0 gives φ."""
    if n < 0:
        raise ValueError("depth must be nonnegative")
    parts = [_box_power(t, k) for k in range(n + 1)]
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = App("meet", (p, out))
    return out


def diamondplus(t: Term, n: int) -> Term:
    """¬⊞^n ¬φ, the dual of boxplus."""
    if n == 0:
        return t
    return App("neg", (boxplus(App("neg", (t,)), n),))


def diamondplus_direct(t: Term, n: int) -> Term:
    """φ ∨ ◇φ ∨ ... ∨ ◇^n φ, for cross-checking :func:`diamondplus`."""
    parts = [t]
    for _ in range(n):
        parts.append(diamond(parts[-1]))
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = App("join", (p, out))
    return out


class TermKind(enum.Enum):
    BOXPLUS = "BOXPLUS"
    DIAMONDPLUS = "DIAMONDPLUS"
    IL_COND = "IL_COND"
    WEML_COND = "WEML_COND"
    CONVERGENCE = "CONVERGENCE"
    S4_AX = "S4_AX"


def modal_term(kind, *params: int):
    """Build the named modal term in v1.

    BOXPLUS(n), DIAMONDPLUS(n); IL_COND(n) = ⊞^n v → ⟐^n ⊞^{n+1} v;
    WEML_COND(m, n) = ⊞^m ¬⊞^n v ∨ ⊞^m ¬⊞^n ¬⊞^n v;
    CONVERGENCE = ◇□v → □◇v; S4_AX returns the pair (□v → v, □v → □□v).
    """
    kind = TermKind(kind)
    if any(p < 0 for p in params):
        raise ValueError("parameters must be nonnegative")
    v = Var(1)
    if kind is TermKind.BOXPLUS:
        (n,) = params
        return boxplus(v, n)
    if kind is TermKind.DIAMONDPLUS:
        (n,) = params
        return diamondplus(v, n)
    if kind is TermKind.IL_COND:
        (n,) = params
        return implies(boxplus(v, n), diamondplus(boxplus(v, n + 1), n))
    if kind is TermKind.WEML_COND:
        m, n = params
        not_bn = App("neg", (boxplus(v, n),))
        left = boxplus(not_bn, m)
        right = boxplus(App("neg", (boxplus(not_bn, n),)), m)
        return App("join", (left, right))
    if kind is TermKind.CONVERGENCE:
        return implies(diamond(App("box", (v,))), App("box", (diamond(v),)))
    box_v = App("box", (v,))
    return (implies(box_v, v), implies(box_v, App("box", (box_v,))))


@dataclass(frozen=True)
class Validity:
    valid: bool
    witness: Optional[tuple] = None  # (algebra name, assignment)
    wording: str = "valid in supplied class"

    def __bool__(self) -> bool:
        return self.valid


def valid_in_class(algebras: Sequence[FiniteAlgebra], t: Term) -> Validity:
    """Value is top under every assignment in every algebra."""
    for A in algebras:
        top = A.const("top")
        for asg, (val,) in term_values(A, [t]):
            if val != top:
                return Validity(False, (A.name, asg))
    return Validity(True)


def stabilization_index(algebra: FiniteAlgebra) -> int:
    """Least m with ⊞^{m+1} a = ⊞^m a for all a."""
    box = algebra.table("box")
    meet = algebra.table("meet")
    n = algebra.size
    cur = list(range(n))
    powered = list(range(n))
    m = 0
    while True:
        powered = [box[x] for x in powered]
        nxt = [meet[cur[a] * n + powered[a]] for a in range(n)]
        if nxt == cur:
            return m
        cur = nxt
        m += 1


@dataclass(frozen=True)
class ModalReport:
    il_n: Optional[int]
    weml_at_n: Optional[bool]
    m_bound: int
    s4: bool
    convergence: bool
    cross_check: Optional[bool]
    weml_witness: Optional[tuple] = None
    note: str = ""


def modal_condition_report(algebras: Sequence[FiniteAlgebra], nmax: int) -> ModalReport:
    """IL index, WEML condition and the S4.2 cross-check on a finite class.

    The quantifier over all m is cut at the largest stabilization index in
    the class: past it ⊞^m x = ⊞^s x for every x, so both disjuncts repeat.
    """
    il_n = None
    for n in range(nmax + 1):
        if valid_in_class(algebras, modal_term(TermKind.IL_COND, n)):
            il_n = n
            break
    bound = max((stabilization_index(A) for A in algebras), default=0)
    weml = None
    witness = None
    if il_n is not None:
        weml = True
        for m in range(bound + 1):
            res = valid_in_class(algebras, modal_term(TermKind.WEML_COND, m, il_n))
            if not res:
                weml = False
                witness = (m,) + res.witness
                break
    ax1, ax2 = modal_term(TermKind.S4_AX)
    s4 = bool(valid_in_class(algebras, ax1)) and bool(valid_in_class(algebras, ax2))
    conv = bool(valid_in_class(algebras, modal_term(TermKind.CONVERGENCE)))
    cross = (weml == conv) if (s4 and weml is not None) else None
    note = f"m checked in 0..{bound} (stabilization bound); validity is in the supplied class only"
    return ModalReport(il_n, weml, bound, s4, conv, cross, witness, note)
