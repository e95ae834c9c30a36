"""S-expression reader and printer.

Values are plain Python data: a word is a ``str``, a number is a
non-negative ``int`` and a list is a ``tuple`` of values.  The empty
tuple is the empty list ``()``.
"""

from __future__ import annotations

import re
from typing import Union

from .errors import BadToken, EmptyInput, TrailingInput, UnbalancedParens

SExpr = Union[str, int, tuple]

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def is_word(x) -> bool:
    return isinstance(x, str)


def is_number(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def is_list(x) -> bool:
    return isinstance(x, tuple)


def _atom(tok: str) -> SExpr:
    if tok.isdigit() and tok.isascii():
        return int(tok)
    if tok[0].isdigit():
        raise BadToken(f"token {tok!r} starts with a digit but is not a number")
    return tok


def parse(text: str) -> SExpr:
    """Parse exactly one S-expression from ``text``.

    Raises EmptyInput, UnbalancedParens, TrailingInput or BadToken.
    """
    tokens = _TOKEN.findall(text)
    if not tokens:
        raise EmptyInput("no expression in input")
    expr, pos = _read(tokens, 0)
    if pos != len(tokens):
        if tokens[pos] == ")":
            raise UnbalancedParens("unexpected ')'")
        raise TrailingInput(f"extra input after expression at token {pos}")
    return expr


def parse_many(text: str) -> list:
    """Parse a sequence of S-expressions (possibly empty)."""
    tokens = _TOKEN.findall(text)
    out = []
    pos = 0
    while pos < len(tokens):
        if tokens[pos] == ")":
            raise UnbalancedParens("unexpected ')'")
        expr, pos = _read(tokens, pos)
        out.append(expr)
    return out


def _read(tokens: list, pos: int) -> tuple:
    # iterative so deep nesting cannot hit the recursion limit
    tok = tokens[pos]
    if tok == ")":
        raise UnbalancedParens("unexpected ')'")
    if tok != "(":
        return _atom(tok), pos + 1
    stack: list = [[]]
    pos += 1
    while stack:
        if pos >= len(tokens):
            raise UnbalancedParens(f"{len(stack)} unclosed '('")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            stack.append([])
        elif tok == ")":
            done = tuple(stack.pop())
            if not stack:
                return done, pos
            stack[-1].append(done)
        else:
            stack[-1].append(_atom(tok))
    raise AssertionError("unreachable")


def to_str(expr) -> str:
    """Canonical text: single spaces between siblings, none inside parens."""
    out = []
    stack = [expr]
    while stack:
        e = stack.pop()
        if isinstance(e, tuple):
            out.append("(")
            stack.append(_CLOSE)
            for i in range(len(e) - 1, -1, -1):
                stack.append(e[i])
                if i:
                    stack.append(_SPACE)
        elif e is _CLOSE:
            out.append(")")
        elif e is _SPACE:
            out.append(" ")
        else:
            # words, numbers, and evaluator function values
            out.append(str(e))
    return "".join(out)


_CLOSE = object()
_SPACE = object()


# the printer under the name used throughout the docs
print_sexpr = to_str
