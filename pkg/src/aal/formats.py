"""Line-oriented text formats for algebras, posets, frames, filter systems
and IL-sequences. Every reader accepts '#' comments and blank lines."""

from __future__ import annotations

import re
from itertools import product
from pathlib import Path
from typing import Iterable, Optional, Union

from .algebra import FiniteAlgebra, Signature
from .filters import FilterSystem, ILSequence
from .modal import KripkeFrame
from .order import FinitePoset
from .terms import App, Term, Var, conjunction, format_term, parse_term

__all__ = [
    "FormatError",
    "read_algebra",
    "write_algebra",
    "read_poset",
    "write_poset",
    "read_frame",
    "write_frame",
    "read_system",
    "write_system",
    "read_psi",
    "parse_psi",
    "load",
]

Source = Union[str, Path]


class FormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


_KEYWORDS = ("algebra", "poset", "frame", "system", "psi")


def _text(source: Source) -> str:
    """Multi-line strings and strings opening with a format keyword are
    contents; anything else is a path."""
    if isinstance(source, str) and ("\n" in source or source.split(maxsplit=1)[:1] in ([k] for k in _KEYWORDS)):
        return source
    return Path(source).read_text(encoding="utf-8")


def _lines(source: Source) -> Iterable[tuple[int, list[str], str]]:
    for no, raw in enumerate(_text(source).splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split(), line


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", no) from None


def _header(lines, keyword: str) -> tuple[str, list]:
    lines = list(lines)
    if not lines or lines[0][1][0] != keyword:
        raise FormatError(f"file must start with '{keyword} <name>'", lines[0][0] if lines else None)
    return " ".join(lines[0][1][1:]), lines[1:]


def _size(lines, keyword: str) -> tuple[int, list]:
    if not lines or lines[0][1][0] != keyword or len(lines[0][1]) != 2:
        raise FormatError(f"expected '{keyword} <n>'", lines[0][0] if lines else None)
    n = _int(lines[0][1][1], lines[0][0])
    if n < 1:
        raise FormatError(f"{keyword} must be positive", lines[0][0])
    return n, lines[1:]


# -- algebras ---------------------------------------------------------------

def read_algebra(source: Source) -> FiniteAlgebra:
    name, rest = _header(_lines(source), "algebra")
    n, rest = _size(rest, "size")
    labels: dict[int, str] = {}
    symbols: list[tuple[str, int]] = []
    rows: dict[str, dict[tuple, int]] = {}
    current = None
    for no, toks, _ in rest:
        if toks[0] == "labels":
            for item in toks[1:]:
                elem, sep, tok = item.partition("=")
                if not sep or not tok:
                    raise FormatError(f"bad label {item!r}", no)
                labels[_int(elem, no)] = tok
        elif toks[0] == "op":
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)/(\d+)", toks[1]) if len(toks) == 2 else None
            if not m:
                raise FormatError("expected 'op <symbol>/<arity>'", no)
            current = (m.group(1), int(m.group(2)))
            if current[0] in rows:
                raise FormatError(f"operation {current[0]} declared twice", no)
            symbols.append(current)
            rows[current[0]] = {}
        else:
            if current is None:
                raise FormatError(f"unexpected {toks[0]!r}", no)
            sym, k = current
            if len(toks) != k + 1:
                raise FormatError(f"row for {sym}/{k} needs {k + 1} columns", no)
            vals = tuple(_int(t, no) for t in toks)
            if any(not 0 <= v < n for v in vals):
                raise FormatError(f"value out of range 0..{n - 1}", no)
            if vals[:k] in rows[sym]:
                raise FormatError(f"duplicate row {vals[:k]} for {sym}", no)
            rows[sym][vals[:k]] = vals[k]
    tables = {}
    for sym, k in symbols:
        missing = [args for args in product(range(n), repeat=k) if args not in rows[sym]]
        if missing:
            raise FormatError(f"operation {sym} missing row for {missing[0]}")
        tables[sym] = [rows[sym][args] for args in product(range(n), repeat=k)]
    bad = [e for e in labels if not 0 <= e < n]
    if bad:
        raise FormatError(f"label for element {bad[0]} out of range")
    return FiniteAlgebra(Signature(symbols), n, tables, name, labels)


def write_algebra(A: FiniteAlgebra) -> str:
    out = [f"algebra {A.name or 'A'}", f"size {A.size}"]
    if A.labels:
        out.append("labels " + " ".join(f"{e}={A.labels[e]}" for e in sorted(A.labels)))
    for sym, k in A.signature:
        out.append(f"op {sym}/{k}")
        table = A.table(sym)
        for i, args in enumerate(product(range(A.size), repeat=k)):
            out.append(" ".join(str(x) for x in args + (table[i],)))
    return "\n".join(out) + "\n"


# -- posets and frames ------------------------------------------------------

def _pairs(rest, keyword: str, n: int) -> list[tuple[int, int]]:
    out = []
    for no, toks, _ in rest:
        if toks[0] != keyword or len(toks) != 3:
            raise FormatError(f"expected '{keyword} <i> <j>'", no)
        i, j = _int(toks[1], no), _int(toks[2], no)
        if not (0 <= i < n and 0 <= j < n):
            raise FormatError(f"point out of range 0..{n - 1}", no)
        out.append((i, j))
    return out


def read_poset(source: Source) -> tuple[str, FinitePoset]:
    name, rest = _header(_lines(source), "poset")
    n, rest = _size(rest, "size")
    covers = _pairs(rest, "cover", n)
    try:
        return name, FinitePoset.from_covers(n, covers)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_poset(p: FinitePoset, name: str = "P") -> str:
    return "\n".join([f"poset {name}", f"size {p.size}"] + [f"cover {i} {j}" for i, j in p.covers()]) + "\n"


def read_frame(source: Source) -> KripkeFrame:
    name, rest = _header(_lines(source), "frame")
    n, rest = _size(rest, "points")
    closure = "none"
    edges_lines = []
    for item in rest:
        no, toks, _ = item
        if toks[0] == "closure":
            if len(toks) != 2 or toks[1] not in ("none", "reflexive", "transitive", "preorder"):
                raise FormatError("closure must be none, reflexive, transitive or preorder", no)
            closure = toks[1]
        else:
            edges_lines.append(item)
    return KripkeFrame(n, _pairs(edges_lines, "edge", n), name, closure)


def write_frame(frame: KripkeFrame) -> str:
    return "\n".join([f"frame {frame.name or 'F'}", f"points {frame.points}"] + [f"edge {i} {j}" for i, j in frame.edges()]) + "\n"


# -- filter systems ---------------------------------------------------------

def _split_top(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def _term(text: str, no: int) -> Term:
    try:
        return parse_term(text)
    except ValueError as exc:
        raise FormatError(f"bad term {text!r}: {exc}", no) from None


def read_system(source: Source) -> FilterSystem:
    name, rest = _header(_lines(source), "system")
    if not rest or rest[0][1][0] != "kind" or len(rest[0][1]) != 2:
        raise FormatError("expected 'kind rule|heyting|modal|dmm'", rest[0][0] if rest else None)
    kind = rest[0][1][1]
    axioms, rules = [], []
    for no, toks, line in rest[1:]:
        body = line[len(toks[0]):].strip()
        if toks[0] == "axiom":
            axioms.append(_term(body, no))
        elif toks[0] == "rule":
            lhs, sep, rhs = body.partition("=>")
            if not sep:
                raise FormatError("rule needs '=>'", no)
            prem = [_term(p, no) for p in _split_top(lhs)] if lhs.strip() else []
            rules.append((prem, _term(rhs.strip(), no)))
        else:
            raise FormatError(f"unexpected {toks[0]!r}", no)
    if kind == "rule":
        return FilterSystem.rule_closure(axioms, rules, name)
    if axioms or rules:
        raise FormatError(f"kind {kind} takes no axioms or rules")
    try:
        return FilterSystem(FilterSystem.builtin(kind).kind, name=name)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_system(system: FilterSystem) -> str:
    out = [f"system {system.name or system.kind}", f"kind {system.kind}"]
    out += [f"axiom {format_term(a)}" for a in system.axioms]
    out += [f"rule {', '.join(format_term(p) for p in prem)} => {format_term(c)}" for prem, c in system.rules]
    return "\n".join(out) + "\n"


# -- IL-sequences -----------------------------------------------------------

_RANGE = re.compile(r"v1\s*\.\.\s*vn")


def _expand_conj(t: Term) -> Term:
    if isinstance(t, Var):
        return t
    args = tuple(_expand_conj(a) for a in t.args)
    if t.symbol == "conj":
        if not args:
            raise ValueError("conj needs arguments")
        return conjunction(args)
    return App(t.symbol, args)


def _instantiate(template: str, n: int) -> list[Term]:
    text = _RANGE.sub(", ".join(f"v{i}" for i in range(1, n + 1)), template)
    return [_expand_conj(parse_term(part.strip())) for part in text.split(";") if part.strip()]


def parse_psi(source: Source, name: str = "") -> ILSequence:
    """Read 'psi <n> := t1; t2' lines.

    A line with the literal parameter ``n`` is a template used for every
    arity without its own line: ``v1..vn`` expands to v1, ..., vn and the
    pseudo-operation ``conj(...)`` to a right-nested meet of its arguments.
    """
    fixed: dict[int, str] = {}
    template = None
    for no, toks, line in _lines(source):
        m = re.fullmatch(r"psi\s+(\d+|n)\s*:=\s*(.+)", line)
        if not m:
            raise FormatError("expected 'psi <n> := <term>; ...'", no)
        key, body = m.group(1), m.group(2).rstrip(";")
        try:
            _instantiate(body, 1 if key == "n" else int(key))
        except ValueError as exc:
            raise FormatError(str(exc), no) from None
        if key == "n":
            template = body
        else:
            fixed[int(key)] = body

    def generate(n: int) -> list[Term]:
        if n in fixed:
            return _instantiate(fixed[n], n)
        if template is None:
            raise ValueError(f"no psi line for n = {n}")
        return _instantiate(template, n)

    return ILSequence(generate, name)


def read_psi(path: Source) -> ILSequence:
    return parse_psi(Path(path).read_text(encoding="utf-8"), Path(path).stem)


def load(path: Source):
    """Dispatch on the first keyword of the file."""
    text = _text(path)
    first = next((toks[0] for _, toks, _ in _lines(text)), None)
    readers = {"algebra": read_algebra, "poset": read_poset, "frame": read_frame, "system": read_system, "psi": parse_psi}
    if first not in readers:
        raise FormatError(f"unrecognised file kind {first!r}")
    return readers[first](text)
