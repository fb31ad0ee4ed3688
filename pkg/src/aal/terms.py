"""Terms over a finite signature: AST, parser, printer, evaluation."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence, Union

__all__ = [
    "Var",
    "App",
    "Term",
    "TermSyntaxError",
    "UnknownSymbolError",
    "ArityError",
    "UnassignedVariableError",
    "parse_term",
    "format_term",
    "variables",
    "max_variable",
    "substitute",
    "eval_term",
    "compile_term",
    "conjunction",
]


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"variable index must be positive, got {self.index}")

    def __str__(self) -> str:
        return f"v{self.index}"


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = ()

    def __str__(self) -> str:
        return format_term(self)


Term = Union[Var, App]


class TermSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownSymbolError(ValueError):
    pass


class ArityError(ValueError):
    pass


class UnassignedVariableError(KeyError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),])|(?P<bad>\S))")
_VAR = re.compile(r"v[0-9]+\Z")


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastgroup)
        if m.lastgroup == "bad":
            raise TermSyntaxError(f"unexpected character {m.group('bad')!r}", start)
        yield m.lastgroup, m.group(m.lastgroup), start
        pos = m.end()
    if text[pos:].strip():
        raise TermSyntaxError("trailing input", pos)
    yield "end", "", len(text)


def parse_term(text: str, sig=None) -> Term:
    """Parse ``text`` into a term.

    With a signature, symbols and arities are checked against it. A bare
    symbol is a constant; ``v`` followed by digits is always a variable.
    """
    toks = list(_tokens(text))
    pos = 0

    def peek():
        return toks[pos]

    def take(kind: str, value: str | None = None):
        nonlocal pos
        k, v, at = toks[pos]
        if k != kind or (value is not None and v != value):
            want = value if value is not None else kind
            got = v if v else "end of input"
            raise TermSyntaxError(f"expected {want!r}, got {got!r}", at)
        pos += 1
        return v, at

    def term() -> Term:
        name, at = take("name")
        if _VAR.match(name):
            index = int(name[1:])
            if index < 1:
                raise TermSyntaxError("variable index must be positive", at)
            return Var(index)
        args = []
        k, v, _ = peek()
        if k == "punct" and v == "(":
            take("punct", "(")
            args.append(term())
            while peek()[:2] == ("punct", ","):
                take("punct", ",")
                args.append(term())
            take("punct", ")")
        if sig is not None:
            if name not in sig:
                raise UnknownSymbolError(f"unknown symbol {name!r} at position {at}")
            if sig.arity(name) != len(args):
                raise ArityError(
                    f"symbol {name!r} has arity {sig.arity(name)}, "
                    f"applied to {len(args)} argument(s) at position {at}"
                )
        return App(name, tuple(args))

    result = term()
    take("end")
    return result


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"v{t.index}"
    if not t.args:
        return t.symbol
    return f"{t.symbol}({', '.join(format_term(a) for a in t.args)})"


def variables(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset((t.index,))
    out: set[int] = set()
    for a in t.args:
        out |= variables(a)
    return frozenset(out)


def max_variable(t: Term) -> int:
    return max(variables(t), default=0)


def substitute(t: Term, mapping: Mapping[int, Term]) -> Term:
    """Simultaneously replace variables by terms; unmapped variables stay."""
    if isinstance(t, Var):
        return mapping.get(t.index, t)
    return App(t.symbol, tuple(substitute(a, mapping) for a in t.args))


def conjunction(terms: Sequence[Term], meet: str = "meet") -> Term:
    """Right-nested meet of ``terms``: t1 ∧ (t2 ∧ (... ∧ tk))."""
    if not terms:
        raise ValueError("empty conjunction")
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = App(meet, (t, out))
    return out


def eval_term(algebra, t: Term, asg: Mapping[int, int]) -> int:
    if isinstance(t, Var):
        try:
            return asg[t.index]
        except KeyError:
            raise UnassignedVariableError(f"v{t.index} is not assigned") from None
    return algebra.op(t.symbol, *(eval_term(algebra, a, asg) for a in t.args))


def compile_term(algebra, t: Term, order: Sequence[int]) -> Callable[[Sequence[int]], int]:
    """Closure evaluating ``t`` on a value tuple aligned with ``order``.

    Used by exhaustive sweeps, where re-walking the AST per assignment is the
    dominant cost.
    """
    slot = {v: i for i, v in enumerate(order)}
    missing = variables(t) - slot.keys()
    if missing:
        raise UnassignedVariableError(f"v{min(missing)} is not assigned")
    n = algebra.size

    def build(s: Term):
        if isinstance(s, Var):
            i = slot[s.index]
            return lambda vals: vals[i]
        table = algebra.table(s.symbol)
        if not s.args:
            c = table[0]
            return lambda vals: c
        if len(s.args) == 1:
            f = build(s.args[0])
            return lambda vals: table[f(vals)]
        if len(s.args) == 2:
            f, g = build(s.args[0]), build(s.args[1])
            return lambda vals: table[f(vals) * n + g(vals)]
        fs = [build(a) for a in s.args]

        def apply(vals):
            idx = 0
            for h in fs:
                idx = idx * n + h(vals)
            return table[idx]

        return apply

    return build(t)
