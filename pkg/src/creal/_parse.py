"""Tiny recursive-descent parser for arithmetic literals.

The grammar is shared by element, polynomial and matrix literals::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Juxtaposition is not multiplication; write ``2*w``.  Whitespace is ignored.
The parser is generic: it evaluates into whatever ring the caller supplies
through a :class:`Ring` adapter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable, Mapping

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    from_int: Callable[[int], Any]
    add: Callable[[Any, Any], Any]
    sub: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    div: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    pow: Callable[[Any, int], Any]
    symbols: Mapping[str, Any]


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def parse_expr(text: str, ring: Ring):
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty literal")
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None)

    def take(kind=None, value=None):
        nonlocal i
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected token {tok[1]!r} in {text!r}")
        i += 1
        return tok

    def expr():
        acc = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = ring.add(acc, rhs) if op == "+" else ring.sub(acc, rhs)
        return acc

    def term():
        acc = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            acc = ring.mul(acc, rhs) if op == "*" else ring.div(acc, rhs)
        return acc

    def unary():
        if peek() == ("op", "-"):
            take()
            return ring.neg(unary())
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            return ring.pow(base, int(take("int")[1]))
        return base

    def atom():
        kind, val = peek()
        if kind == "int":
            take()
            return ring.from_int(int(val))
        if kind == "name":
            take()
            if val not in ring.symbols:
                raise ParseError(f"unknown symbol {val!r} in {text!r}")
            return ring.symbols[val]
        if (kind, val) == ("op", "("):
            take()
            v = expr()
            take("op", ")")
            return v
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    value = expr()
    if i != len(toks):
        raise ParseError(f"trailing input {toks[i][1]!r} in {text!r}")
    return value


def split_matrix_literal(text: str) -> list[list[str]]:
    """Split ``"[[a,b];[c,d]]"`` into entry strings (``[a,b;c,d]`` also accepted)."""
    s = "".join(text.split())
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"matrix literal must be bracketed: {text!r}")
    body = s[1:-1]
    rows = []
    for chunk in body.split(";"):
        chunk = chunk.strip()
        if chunk.startswith("[") and chunk.endswith("]"):
            chunk = chunk[1:-1]
        if not chunk:
            raise ParseError(f"empty matrix row in {text!r}")
        rows.append(_split_top_level(chunk))
    if len({len(r) for r in rows}) != 1:
        raise ParseError(f"ragged matrix literal {text!r}")
    return rows


def _split_top_level(chunk: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in chunk:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts
