"""Formulas and sequents of the modal language with ->, [] and <>.

Concrete syntax (ASCII): ``p<digits>``, ``top``, ``bot``, ``/\\``, ``\\/``,
``->``, ``[]``, ``<>``, ``|-`` and parentheses.  Unary operators bind
tightest, then ``/\\`` (left), ``\\/`` (left), ``->`` (right).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("variable index must be non-negative")


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Box:
    arg: "Formula"


@dataclass(frozen=True)
class Dia:
    arg: "Formula"


Formula = Union[Var, Top, Bot, And, Or, Imp, Box, Dia]
TOP = Top()
BOT = Bot()
BINARY = (And, Or, Imp)
UNARY = (Box, Dia)


@dataclass(frozen=True)
class Sequent:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"{to_text(self.left)} |- {to_text(self.right)}"


# ---------------------------------------------------------------- printing

_PREC = {Imp: 1, Or: 2, And: 3}
_SYM = {Imp: "->", Or: "\\/", And: "/\\"}


def to_text(phi: Formula) -> str:
    """Print with the minimal parentheses that still round-trip."""
    return _fmt(phi, 0)


def _fmt(phi: Formula, ctx: int) -> str:
    if isinstance(phi, Var):
        return f"p{phi.index}"
    if isinstance(phi, Top):
        return "top"
    if isinstance(phi, Bot):
        return "bot"
    if isinstance(phi, Box):
        return "[]" + _fmt(phi.arg, 4)
    if isinstance(phi, Dia):
        return "<>" + _fmt(phi.arg, 4)
    prec = _PREC[type(phi)]
    if isinstance(phi, Imp):
        text = f"{_fmt(phi.left, prec + 1)} -> {_fmt(phi.right, prec)}"
    else:
        text = f"{_fmt(phi.left, prec)} {_SYM[type(phi)]} {_fmt(phi.right, prec + 1)}"
    return f"({text})" if prec < ctx else text


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<word>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>/\\|\\/|->|\[\]|<>|\|-|\(|\)))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unknown token {text[pos]!r}", pos)
        start = m.start("word") if m.group("word") else m.start("sym")
        tok = m.group("word") or m.group("sym")
        if m.group("word") and not (tok in ("top", "bot") or re.fullmatch(r"p\d+", tok)):
            raise FormulaSyntaxError(f"unknown token {tok!r}", start)
        tokens.append((tok, start))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect_end(self):
        if self.peek() != "":
            raise FormulaSyntaxError(f"unexpected {self.peek()!r}", self.pos())

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek() == "\\/":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek() == "/\\":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "[]":
            self.take()
            return Box(self.unary())
        if tok == "<>":
            self.take()
            return Dia(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok, pos = self.tokens[self.i]
        if tok == "(":
            self.take()
            inner = self.imp()
            if self.peek() != ")":
                raise FormulaSyntaxError("expected ')'", self.pos())
            self.take()
            return inner
        if tok == "top":
            self.take()
            return TOP
        if tok == "bot":
            self.take()
            return BOT
        if tok.startswith("p") and tok[1:].isdigit():
            self.take()
            return Var(int(tok[1:]))
        what = "end of input" if tok == "" else repr(tok)
        raise FormulaSyntaxError(f"unexpected {what}", pos)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    phi = p.imp()
    p.expect_end()
    return phi


def parse_sequent(text: str) -> Sequent:
    parts = text.split("|-")
    if len(parts) != 2:
        raise FormulaSyntaxError("expected exactly one '|-'", len(parts[0]) if len(parts) > 2 else 0)
    left = parse_formula(parts[0])
    try:
        right = parse_formula(parts[1])
    except FormulaSyntaxError as exc:
        raise FormulaSyntaxError(str(exc).rsplit(" at position", 1)[0],
                                 exc.position + len(parts[0]) + 2) from None
    return Sequent(left, right)


# --------------------------------------------------------------- utilities

def children(phi: Formula) -> tuple[Formula, ...]:
    if isinstance(phi, BINARY):
        return (phi.left, phi.right)
    if isinstance(phi, UNARY):
        return (phi.arg,)
    return ()


def subformulas(phi: Formula) -> set[Formula]:
    out: set[Formula] = set()
    stack = [phi]
    while stack:
        f = stack.pop()
        if f not in out:
            out.add(f)
            stack.extend(children(f))
    return out


def size(phi: Formula) -> int:
    return 1 + sum(size(c) for c in children(phi))


def depth(phi: Formula) -> int:
    return 1 + max((depth(c) for c in children(phi)), default=0)


def variables(phi: Formula) -> set[int]:
    return {f.index for f in subformulas(phi) if isinstance(f, Var)}


def connectives(phi: Formula) -> set[type]:
    return {type(f) for f in subformulas(phi)}


def substitute(phi: Formula, mapping: dict[int, Formula]) -> Formula:
    """Simultaneously replace variables by formulas."""
    if isinstance(phi, Var):
        return mapping.get(phi.index, phi)
    if isinstance(phi, BINARY):
        return type(phi)(substitute(phi.left, mapping), substitute(phi.right, mapping))
    if isinstance(phi, UNARY):
        return type(phi)(substitute(phi.arg, mapping))
    return phi


def match(pattern: Formula, target: Formula, binding: dict[int, Formula] | None = None,
          metavars: set[int] | None = None) -> dict[int, Formula] | None:
    """Match ``pattern`` against ``target`` treating variables as metavariables.

    If ``metavars`` is given, only those variable indices are bindable and
    the remaining variables must match literally.  Returns the extended
    binding or None.
    """
    binding = dict(binding or {})
    stack = [(pattern, target)]
    while stack:
        pat, tgt = stack.pop()
        if isinstance(pat, Var) and (metavars is None or pat.index in metavars):
            bound = binding.get(pat.index)
            if bound is None:
                binding[pat.index] = tgt
            elif bound != tgt:
                return None
            continue
        if type(pat) is not type(tgt):
            return None
        if isinstance(pat, Var):
            if pat.index != tgt.index:
                return None
            continue
        stack.extend(zip(children(pat), children(tgt)))
    return binding
