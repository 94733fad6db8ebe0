"""
Parser for the session language.

Statements end with ``;`` and ``#`` starts a comment::

    ring A = GF(32003)[x,y] local / (x^2, y^2);
    module M = coker(x);
    show betti(M, 4);
    check size(mingens(ideal(x, x^2))) == 1;
"""

import re
from typing import List, Optional, Tuple

from algebra.errors import ScriptError
from algebra.polycore.parser import split_top_level

from ..schemas.script import Expr, Script, Statement

KEYWORDS = ("ring", "poly", "ideal", "module", "let", "show", "check")
COMPARISONS = ("==", "!=", "<=", ">=", "<", ">")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_BINDING = re.compile(r"(?P<name>[A-Za-z_][A-Za-z_0-9]*)\s*=(?!=)\s*(?P<rest>.*)", re.S)
_IN = re.compile(r"\sin\s")


def _strip_comments(source: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in source.splitlines())


def _position(source: str, offset: int) -> Tuple[int, int]:
    line = source.count("\n", 0, offset) + 1
    column = offset - (source.rfind("\n", 0, offset) + 1) + 1
    return line, column


def split_statements(source: str) -> List[Tuple[str, int, int]]:
    """Split on top-level ``;``; returns ``(text, line, column)`` per statement."""
    text = _strip_comments(source)
    out = []
    depth, start = 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                line, col = _position(text, i)
                raise ScriptError(f"unbalanced '{ch}'", line, col)
        elif ch == ";" and depth == 0:
            chunk = text[start:i]
            if chunk.strip():
                lead = len(chunk) - len(chunk.lstrip())
                line, col = _position(text, start + lead)
                out.append((chunk.strip(), line, col))
            start = i + 1
    tail = text[start:]
    if tail.strip():
        lead = len(tail) - len(tail.lstrip())
        line, col = _position(text, start + lead)
        raise ScriptError("statement is missing its terminating ';'", line, col)
    if depth:
        raise ScriptError("unbalanced brackets at end of script")
    return out


def _closes_at_end(text: str, open_at: int) -> bool:
    depth = 0
    for i in range(open_at, len(text)):
        if text[i] in "([":
            depth += 1
        elif text[i] in ")]":
            depth -= 1
            if depth == 0:
                return i == len(text) - 1
    return False


def parse_expr(text: str, line: int, column: int) -> Expr:
    """Parse one expression; anything that is not a call, list, name or integer is polynomial text."""
    text = text.strip()
    if not text:
        raise ScriptError("empty expression", line, column)
    if text.startswith("[") and _closes_at_end(text, 0):
        args = [parse_expr(piece, line, column + off + 1) for piece, off in split_top_level(text[1:-1])]
        return Expr(kind="list", text=text, args=args)
    match = _IDENT.match(text)
    if match and match.end() < len(text) and text[match.end()] == "(" and _closes_at_end(text, match.end()):
        inner = text[match.end() + 1 : -1]
        args = [parse_expr(piece, line, column + match.end() + 1 + off) for piece, off in split_top_level(inner)]
        return Expr(kind="call", text=text, name=match.group(0), args=args)
    if _IDENT.fullmatch(text):
        return Expr(kind="name", text=text)
    if re.fullmatch(r"-?\d+", text):
        return Expr(kind="number", text=text)
    return Expr(kind="poly", text=text)


def _split_comparison(text: str) -> Tuple[str, Optional[str], Optional[str]]:
    depth = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0:
            for op in COMPARISONS:
                if text.startswith(op, i):
                    return text[:i], op, text[i + len(op) :]
            match = _IN.match(text, i)
            if match:
                return text[:i], "in", text[match.end() :]
        i += 1
    return text, None, None


def parse_statement(text: str, line: int, column: int) -> Statement:
    match = _IDENT.match(text)
    keyword = match.group(0) if match else ""
    if keyword not in KEYWORDS:
        raise ScriptError(f"unknown statement {keyword or text[:10]!r}; expected one of {', '.join(KEYWORDS)}", line, column)
    rest = text[match.end() :].strip()
    rest_col = column + (len(text) - len(text[match.end() :].lstrip()))

    if keyword == "show":
        return Statement(keyword="show", line=line, column=column, source=text, expr=parse_expr(rest, line, rest_col))
    if keyword == "check":
        lhs, op, rhs = _split_comparison(rest)
        return Statement(
            keyword="check",
            line=line,
            column=column,
            source=text,
            expr=parse_expr(lhs, line, rest_col),
            op=op,
            rhs=parse_expr(rhs, line, rest_col + len(lhs)) if rhs is not None else None,
        )
    binding = _BINDING.fullmatch(rest)
    if not binding:
        raise ScriptError(f"expected '{keyword} NAME = ...'", line, column)
    name = binding.group("name")
    body = binding.group("rest").strip()
    body_col = rest_col + binding.start("rest")
    if keyword == "ring":
        return Statement(keyword="ring", line=line, column=column, source=text, target=name, ring_text=body)
    return Statement(keyword=keyword, line=line, column=column, source=text, target=name, expr=parse_expr(body, line, body_col))


def parse_script(source: str) -> Script:
    """
    Parse a whole script.

    Raises:
        ScriptError: syntax error or a name bound twice
    """
    statements = [parse_statement(text, line, col) for text, line, col in split_statements(source)]
    seen = set()
    for stmt in statements:
        if stmt.target is None:
            continue
        if stmt.target in seen:
            raise ScriptError(f"name {stmt.target!r} is already bound", stmt.line, stmt.column)
        seen.add(stmt.target)
    return Script(statements=statements)
