"""Finite algebras given by dense operation tables.

Elements are the integers ``0..n-1``. A k-ary table is a flat tuple of
length n**k indexed in mixed radix with the first argument most
significant. Human-readable names live in an optional label map.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from .partition import Partition
from .terms import Term, compile_term, variables

__all__ = [
    "Signature",
    "FiniteAlgebra",
    "AlgebraError",
    "SignatureMismatch",
    "IncompatiblePartition",
    "QuasiEquation",
    "satisfies_quasiequation",
    "quasiequation_witness",
    "subuniverse_generated",
    "has_trivial_subalgebra",
    "quotient",
    "direct_product",
    "term_values",
]


class AlgebraError(ValueError):
    pass


class SignatureMismatch(AlgebraError):
    pass


class IncompatiblePartition(AlgebraError):
    def __init__(self, symbol: str, args: tuple, other: tuple):
        super().__init__(
            f"partition is not compatible with {symbol}: "
            f"arguments {args} and {other} are related but their values are not"
        )
        self.symbol = symbol
        self.args = args
        self.other = other


class Signature:
    """Ordered list of (symbol, arity) pairs with unique symbols."""

    __slots__ = ("symbols", "_arity")

    def __init__(self, symbols: Iterable[tuple[str, int]]):
        self.symbols = tuple((str(s), int(k)) for s, k in symbols)
        self._arity = {}
        for s, k in self.symbols:
            if s in self._arity:
                raise AlgebraError(f"duplicate symbol {s!r}")
            if k < 0:
                raise AlgebraError(f"negative arity for {s!r}")
            self._arity[s] = k

    def arity(self, symbol: str) -> int:
        return self._arity[symbol]

    def __contains__(self, symbol) -> bool:
        return symbol in self._arity

    def __iter__(self):
        return iter(self.symbols)

    def names(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.symbols)

    def constants(self) -> tuple[str, ...]:
        return tuple(s for s, k in self.symbols if k == 0)

    def extend(self, more: Iterable[tuple[str, int]]) -> "Signature":
        return Signature(self.symbols + tuple(more))

    def __eq__(self, other) -> bool:
        return isinstance(other, Signature) and self._arity == other._arity

    def __hash__(self) -> int:
        return hash(frozenset(self._arity.items()))

    def __repr__(self) -> str:
        return "Signature(" + ", ".join(f"{s}/{k}" for s, k in self.symbols) + ")"


class FiniteAlgebra:
    """An algebra on ``range(size)``; immutable after construction."""

    def __init__(
        self,
        signature: Signature,
        size: int,
        tables: Mapping[str, Sequence[int]],
        name: str = "",
        labels: Optional[Mapping[int, str]] = None,
    ):
        if size < 1:
            raise AlgebraError("universes are non-empty")
        if set(tables) != set(signature.names()):
            missing = set(signature.names()) - set(tables)
            extra = set(tables) - set(signature.names())
            raise AlgebraError(f"tables do not match signature (missing {sorted(missing)}, extra {sorted(extra)})")
        self.signature = signature
        self.size = size
        self.name = name
        self._tables = {}
        for sym, k in signature:
            table = tuple(int(x) for x in tables[sym])
            if len(table) != size ** k:
                raise AlgebraError(f"table for {sym}/{k} has {len(table)} entries, expected {size ** k}")
            for i, x in enumerate(table):
                if not 0 <= x < size:
                    raise AlgebraError(f"table for {sym} entry {i} is {x}, out of range")
            self._tables[sym] = table
        self.labels = dict(labels or {})

    def table(self, symbol: str) -> tuple[int, ...]:
        try:
            return self._tables[symbol]
        except KeyError:
            raise SignatureMismatch(f"algebra {self.name or '?'} has no symbol {symbol!r}") from None

    def op(self, symbol: str, *args: int) -> int:
        table = self.table(symbol)
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return table[idx]

    def const(self, symbol: str) -> int:
        return self.table(symbol)[0]

    @property
    def universe(self) -> range:
        return range(self.size)

    def label(self, x: int) -> str:
        return self.labels.get(x, str(x))

    def element(self, label: str) -> int:
        for x, s in self.labels.items():
            if s == label:
                return x
        raise KeyError(f"no element labeled {label!r}")

    def renamed(self, name: str) -> "FiniteAlgebra":
        return FiniteAlgebra(self.signature, self.size, self._tables, name, self.labels)

    def reduct(self, symbols: Iterable[str]) -> "FiniteAlgebra":
        keep = set(symbols)
        sig = Signature((s, k) for s, k in self.signature if s in keep)
        return FiniteAlgebra(sig, self.size, {s: self._tables[s] for s in sig.names()}, self.name, self.labels)

    def expand(self, more: Mapping[str, tuple[int, Sequence[int]]]) -> "FiniteAlgebra":
        """Add symbols given as ``{symbol: (arity, table)}``."""
        sig = self.signature.extend((s, k) for s, (k, _) in more.items())
        tables = dict(self._tables)
        tables.update({s: t for s, (_, t) in more.items()})
        return FiniteAlgebra(sig, self.size, tables, self.name, self.labels)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteAlgebra)
            and self.size == other.size
            and self.signature == other.signature
            and self._tables == other._tables
        )

    def __hash__(self) -> int:
        return hash((self.size, tuple(sorted(self._tables.items()))))

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.name or '?'}, size={self.size}, {self.signature!r})"


def term_values(algebra: FiniteAlgebra, terms: Sequence[Term]):
    """Yield (assignment, values) over every assignment to the occurring variables."""
    occurring = sorted(set().union(*(variables(t) for t in terms))) if terms else []
    fs = [compile_term(algebra, t, occurring) for t in terms]
    for vals in product(range(algebra.size), repeat=len(occurring)):
        yield dict(zip(occurring, vals)), [f(vals) for f in fs]


@dataclass(frozen=True)
class QuasiEquation:
    premises: tuple
    conclusion: tuple

    @classmethod
    def equation(cls, lhs: Term, rhs: Term) -> "QuasiEquation":
        return cls((), (lhs, rhs))

    def __str__(self) -> str:
        lhs = " & ".join(f"{s} = {t}" for s, t in self.premises)
        eq = f"{self.conclusion[0]} = {self.conclusion[1]}"
        return f"{lhs} => {eq}" if lhs else eq

    def terms(self) -> list[Term]:
        out = []
        for s, t in self.premises:
            out += [s, t]
        return out + list(self.conclusion)


def _check_terms(algebra: FiniteAlgebra, terms: Sequence[Term]) -> None:
    def walk(t):
        if hasattr(t, "symbol"):
            if t.symbol not in algebra.signature or algebra.signature.arity(t.symbol) != len(t.args):
                raise SignatureMismatch(f"symbol {t.symbol}/{len(t.args)} not in {algebra.signature!r}")
            for a in t.args:
                walk(a)

    for t in terms:
        walk(t)


def quasiequation_witness(algebra: FiniteAlgebra, q: QuasiEquation) -> Optional[dict]:
    """First assignment satisfying the premises but not the conclusion, if any."""
    terms = q.terms()
    _check_terms(algebra, terms)
    for asg, vals in term_values(algebra, terms):
        if all(vals[2 * i] == vals[2 * i + 1] for i in range(len(q.premises))):
            if vals[-2] != vals[-1]:
                return asg
    return None


def satisfies_quasiequation(algebra: FiniteAlgebra, q: QuasiEquation) -> bool:
    return quasiequation_witness(algebra, q) is None


def subuniverse_generated(algebra: FiniteAlgebra, seed: Iterable[int]) -> frozenset[int]:
    """Least subset containing ``seed`` and every constant, closed under all operations."""
    current = set(seed)
    for s in algebra.signature.constants():
        current.add(algebra.const(s))
    ops = [(s, k) for s, k in algebra.signature if k > 0]
    while True:
        new = set()
        for s, k in ops:
            table = algebra.table(s)
            n = algebra.size
            for args in product(sorted(current), repeat=k):
                idx = 0
                for a in args:
                    idx = idx * n + a
                new.add(table[idx])
        if new <= current:
            return frozenset(current)
        current |= new


def has_trivial_subalgebra(algebra: FiniteAlgebra) -> Optional[int]:
    """Least element forming a one-element subalgebra, or None."""
    for a in algebra.universe:
        if subuniverse_generated(algebra, [a]) == {a}:
            return a
    return None


def quotient(algebra: FiniteAlgebra, theta: Partition) -> FiniteAlgebra:
    """The quotient by a congruence; elements are block indices of ``theta``."""
    n = algebra.size
    if theta.size != n:
        raise AlgebraError(f"partition on {theta.size} elements, algebra has {n}")
    m = len(theta)
    tables = {}
    for s, k in algebra.signature:
        table = algebra.table(s)
        out = [-1] * (m ** k)
        witness = [None] * (m ** k)
        for args in product(range(n), repeat=k):
            idx = 0
            bidx = 0
            for a in args:
                idx = idx * n + a
                bidx = bidx * m + theta.block_of(a)
            val = theta.block_of(table[idx])
            if out[bidx] == -1:
                out[bidx] = val
                witness[bidx] = args
            elif out[bidx] != val:
                raise IncompatiblePartition(s, witness[bidx], args)
        tables[s] = out
    labels = {i: "{" + ",".join(algebra.label(x) for x in b) + "}" for i, b in enumerate(theta.blocks)}
    name = f"{algebra.name}/{theta}" if algebra.name else ""
    return FiniteAlgebra(algebra.signature, m, tables, name, labels)


def direct_product(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """A × B with pair (x, y) encoded as x * |B| + y."""
    if a.signature != b.signature:
        raise SignatureMismatch("factors have different signatures")
    m = b.size
    size = a.size * m
    tables = {}
    for s, k in a.signature:
        out = []
        for args in product(range(size), repeat=k):
            left = a.op(s, *(x // m for x in args))
            right = b.op(s, *(x % m for x in args))
            out.append(left * m + right)
        tables[s] = out
    labels = {x * m + y: f"({a.label(x)},{b.label(y)})" for x in a.universe for y in b.universe}
    return FiniteAlgebra(a.signature, size, tables, f"{a.name}x{b.name}", labels)
