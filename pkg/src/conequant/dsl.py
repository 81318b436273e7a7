"""A small text language for differential operators.

Grammar (``^`` binds tighter than ``*``, which binds tighter than ``+``/``-``)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ("^" INT)?
    atom    := INT ("/" INT)? | "i" | "z"INT | "d"INT
             | "(" expr ")" | "[" expr "," expr "]"

``zK`` is the coordinate, ``dK`` the derivative along it (1-based), ``i`` the
imaginary unit and ``[x, y]`` the commutator.  Errors carry the 0-based
character position where parsing stopped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .scalar import I, QI, as_qi

__all__ = [
    "ParseError",
    "Num",
    "Sym",
    "Neg",
    "BinOp",
    "Pow",
    "Bracket",
    "tokenize",
    "parse_expr",
    "elaborate",
    "parse_operator",
    "format_expr",
]


class ParseError(ValueError):
    """Malformed expression; ``position`` is the 0-based offending column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


# -- AST ---------------------------------------------------------------------
@dataclass(frozen=True)
class Num:
    value: QI


@dataclass(frozen=True)
class Sym:
    kind: str  # "z" or "d"
    index: int  # 0-based


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"


Node = Union[Num, Sym, Neg, BinOp, Pow, Bracket]

# -- lexer -------------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<sym>[zd]\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^(),\[\]]))")


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    """List of ``(kind, value, position)``; kind is int/sym/i/op/end."""
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        kind, val = m.lastgroup, m.group(m.lastgroup)
        if kind == "name":
            if val != "i":
                raise ParseError(f"unknown symbol {val!r}", start)
            kind = "i"
        out.append((kind, val, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


# -- parser ------------------------------------------------------------------
class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = tokenize(text)
        self.k = 0
        self.n = n

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value or kind != "op":
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", pos)

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] == "*" and self.peek()[0] == "op":
            self.take()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", pos)
            return Pow(base, int(val))
        return base

    def atom(self) -> Node:
        kind, val, pos = self.take()
        if kind == "int":
            if self.peek()[1] == "/" and self.peek()[0] == "op":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "int":
                    raise ParseError("denominator must be an integer", p2)
                if int(v2) == 0:
                    raise ParseError("zero denominator", p2)
                return Num(as_qi(Fraction(int(val), int(v2))))
            return Num(as_qi(int(val)))
        if kind == "i":
            return Num(I)
        if kind == "sym":
            idx = int(val[1:])
            if not 1 <= idx <= self.n:
                raise ParseError(f"index {idx} out of range 1..{self.n}", pos)
            return Sym(val[0], idx - 1)
        if val == "(" and kind == "op":
            node = self.expr()
            self.expect(")")
            return node
        if val == "[" and kind == "op":
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Bracket(left, right)
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {found}", pos)


def parse_expr(text: str, n: int) -> Node:
    """Parse ``text`` into an AST over n variables."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = _Parser(text, n)
    node = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return node


def elaborate(node: Node, n: int):
    """Evaluate an AST to a normal-ordered WeylElement."""
    from .weyl import WeylElement, commutator

    if isinstance(node, Num):
        return WeylElement.scalar(n, node.value)
    if isinstance(node, Sym):
        return WeylElement.z(n, node.index) if node.kind == "z" else WeylElement.d(n, node.index)
    if isinstance(node, Neg):
        return -elaborate(node.operand, n)
    if isinstance(node, Pow):
        return elaborate(node.base, n) ** node.exponent
    if isinstance(node, Bracket):
        return commutator(elaborate(node.left, n), elaborate(node.right, n))
    left, right = elaborate(node.left, n), elaborate(node.right, n)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def parse_operator(text: str, n: int):
    """Parse and elaborate in one step."""
    return elaborate(parse_expr(text, n), n)


# -- printer -----------------------------------------------------------------
def _monomial(a, alpha) -> str:
    parts = []
    for sym, exps in (("z", a), ("d", alpha)):
        for i, k in enumerate(exps):
            if k:
                parts.append(f"{sym}{i + 1}" + (f"^{k}" if k > 1 else ""))
    return "*".join(parts)


def _signed_coeff(c: QI) -> Tuple[bool, str]:
    """(negative?, magnitude text); empty text means a unit coefficient."""
    if not c.im:
        neg = c.re < 0
        mag = abs(c.re)
        return neg, "" if mag == 1 else str(mag)
    if not c.re:
        neg = c.im < 0
        mag = abs(c.im)
        return neg, "i" if mag == 1 else f"{mag}*i"
    return False, str(c)


def format_expr(e) -> str:
    """Deterministic text for a WeylElement (graded order, highest first)."""
    if not e.terms:
        return "0"

    def key(item):
        (a, alpha), _ = item
        return (sum(a) + sum(alpha), a, alpha)

    out = []
    for (a, alpha), c in sorted(e.terms.items(), key=key, reverse=True):
        neg, mag = _signed_coeff(c)
        mono = _monomial(a, alpha)
        if mono and mag:
            body = f"{mag}*{mono}"
        else:
            body = mono or mag or "1"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
