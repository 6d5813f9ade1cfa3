"""Intuitionistic propositional formulas: AST, parser, printer, substitution.

Grammar (lowest to highest precedence)::

    formula := imp ("<->" imp)?
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := neg ("&" neg)*
    neg     := "~" neg | atom | "_|_" | "(" formula ")"
    atom    := [A-Za-z][A-Za-z0-9_]*

Unicode spellings ``¬ ∧ ∨ → ↔ ⊥`` are accepted as well.  Negation is sugar
for ``Imp(f, Bottom)`` and ``a <-> b`` for ``(a -> b) & (b -> a)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

__all__ = [
    "Atom",
    "Bottom",
    "BOTTOM",
    "And",
    "Or",
    "Imp",
    "Formula",
    "ParseError",
    "parse",
    "render",
    "atoms",
    "substitute",
    "neg",
    "iff",
]


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Bottom:
    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return render(self)


Formula = Union[Atom, Bottom, And, Or, Imp]
BOTTOM = Bottom()

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def neg(f: Formula) -> Formula:
    return Imp(f, BOTTOM)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


# --------------------------------------------------------------------------
# Parsing

class ParseError(ValueError):
    """Syntax error at a byte offset of the UTF-8 encoded input."""

    def __init__(self, text: str, pos: int, expected):
        self.text = text
        self.offset = len(text[:pos].encode("utf-8"))
        self.expected = tuple(sorted(expected))
        found = text[pos:pos + 8] if pos < len(text) else "end of input"
        super().__init__(
            f"syntax error at byte {self.offset}: expected one of "
            f"{', '.join(self.expected)}; found {found!r}"
        )


# (canonical kind, spellings); longer spellings first where prefixes collide
_TOKENS = [
    ("<->", ("<->", "↔")),
    ("->", ("->", "→")),
    ("_|_", ("_|_", "⊥")),
    ("~", ("~", "¬")),
    ("&", ("&", "∧")),
    ("|", ("|", "∨")),
    ("(", ("(",)),
    (")", (")",)),
]


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _IDENT.match(text, pos)
        if m:
            yield "atom", m.group(), pos
            pos = m.end()
            continue
        for kind, spellings in _TOKENS:
            hit = next((s for s in spellings if text.startswith(s, pos)), None)
            if hit is not None:
                yield kind, hit, pos
                pos += len(hit)
                break
        else:
            raise ParseError(text, pos, ["atom", "_|_", "~", "("])
    yield "eof", "", n


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(_tokenize(text))
        self.i = 0

    @property
    def kind(self):
        return self.tokens[self.i][0]

    def error(self, expected):
        raise ParseError(self.text, self.tokens[self.i][2], expected)

    def take(self, kind):
        if self.kind != kind:
            self.error([kind])
        self.i += 1

    def formula(self):
        left = self.imp()
        if self.kind == "<->":
            self.i += 1
            left = iff(left, self.imp())
        return left

    def imp(self):
        left = self.disj()
        if self.kind == "->":
            self.i += 1
            return Imp(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        while self.kind == "|":
            self.i += 1
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.kind == "&":
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        kind, value, _ = self.tokens[self.i]
        if kind == "~":
            self.i += 1
            return neg(self.unary())
        if kind == "atom":
            self.i += 1
            return Atom(value)
        if kind == "_|_":
            self.i += 1
            return BOTTOM
        if kind == "(":
            self.i += 1
            inner = self.formula()
            self.take(")")
            return inner
        self.error(["atom", "_|_", "~", "("])


def parse(text: str) -> Formula:
    """Parse ``text`` into a :data:`Formula`; raises :class:`ParseError`."""
    p = _Parser(text)
    f = p.formula()
    if p.kind != "eof":
        p.error(["end of input", "->", "<->", "|", "&"])
    return f


# --------------------------------------------------------------------------
# Printing

_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_NEG, _PREC_ATOM = range(1, 6)


def _is_neg(f) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Bottom)


def _prec(f) -> int:
    if isinstance(f, (Atom, Bottom)):
        return _PREC_ATOM
    if _is_neg(f):
        return _PREC_NEG
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, Or):
        return _PREC_OR
    return _PREC_IMP


def _wrap(f, parens: bool) -> str:
    s = render(f)
    return f"({s})" if parens else s


def render(f: Formula) -> str:
    """Render with ASCII tokens and as few parentheses as the grammar allows."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Bottom):
        return "_|_"
    if _is_neg(f):
        return "~" + _wrap(f.left, _prec(f.left) < _PREC_NEG)
    if isinstance(f, Imp):
        return (_wrap(f.left, _prec(f.left) <= _PREC_IMP) + " -> "
                + _wrap(f.right, _prec(f.right) < _PREC_IMP))
    op, level = (" & ", _PREC_AND) if isinstance(f, And) else (" | ", _PREC_OR)
    return (_wrap(f.left, _prec(f.left) < level) + op
            + _wrap(f.right, _prec(f.right) <= level))


# --------------------------------------------------------------------------
# Traversal

def atoms(f: Formula) -> list[str]:
    """Distinct atom names in first-occurrence (left-to-right) order."""
    seen: dict[str, None] = {}
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            seen.setdefault(g.name)
        elif not isinstance(g, Bottom):
            stack.append(g.right)
            stack.append(g.left)
    return list(seen)


def substitute(schema: Formula, binding: Mapping[str, Formula]) -> Formula:
    """Simultaneously replace every atom of ``schema`` by its image in ``binding``."""
    if isinstance(schema, Atom):
        try:
            return binding[schema.name]
        except KeyError:
            raise KeyError(f"atom {schema.name!r} is not bound") from None
    if isinstance(schema, Bottom):
        return schema
    return type(schema)(substitute(schema.left, binding),
                        substitute(schema.right, binding))
