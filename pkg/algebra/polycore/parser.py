"""Text parser for polynomials and ring declarations.

Grammar::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := base ('^' uint)?
    base    := ident | literal | '(' expr ')' | '-' factor
    literal := int ('/' uint)?

A '/' is only accepted when the divisor evaluates to a nonzero constant.
"""

import re
from dataclasses import dataclass
from typing import Optional

from sympy.polys.rings import PolyElement

from ..errors import NonLiteralDivisionError, PolySyntaxError, UnknownVariableError
from .fields import FieldSpec
from .orders import OrderKind
from .rings import RingSpec

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()\[\],]))")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, n = 0, len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        match = _TOKEN.match(text, pos)
        if not match:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", n))
    return tokens


class _PolyParser:
    def __init__(self, text: str, ring: RingSpec):
        self.ring = ring
        self.tokens = tokenize(text)
        self.i = 0
        self.variables = dict(zip(ring.vars, ring.gens))

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self, value: Optional[str] = None) -> Token:
        tok = self.tok
        if value is not None and tok.value != value:
            found = tok.value or "end of input"
            raise PolySyntaxError(f"expected {value!r}, found {found!r}", tok.pos)
        self.i += 1
        return tok

    def parse(self) -> PolyElement:
        if self.tok.kind == "end":
            raise PolySyntaxError("empty expression", self.tok.pos)
        result = self.expr()
        if self.tok.kind != "end":
            raise PolySyntaxError(f"unexpected {self.tok.value!r}", self.tok.pos)
        return result

    def expr(self) -> PolyElement:
        sign = 1
        if self.tok.kind == "op" and self.tok.value in ("+", "-"):
            sign = -1 if self.take().value == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while self.tok.kind == "op" and self.tok.value in ("+", "-"):
            op = self.take().value
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> PolyElement:
        result = self.factor()
        while self.tok.kind == "op" and self.tok.value in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op.value == "*":
                result = result * rhs
            else:
                if not rhs.is_ground:
                    raise NonLiteralDivisionError("division by a non-constant", op.pos)
                if not rhs:
                    raise PolySyntaxError("division by zero", op.pos)
                result = result.quo_ground(rhs.const())
        return result

    def factor(self) -> PolyElement:
        base = self.base()
        if self.tok.kind == "op" and self.tok.value == "^":
            self.take()
            tok = self.tok
            if tok.kind != "int":
                raise PolySyntaxError("exponent must be a nonnegative integer", tok.pos)
            self.take()
            base = base ** int(tok.value)
        return base

    def base(self) -> PolyElement:
        tok = self.tok
        if tok.kind == "int":
            self.take()
            return self.ring.poly_ring.ground_new(self.ring.field.convert(int(tok.value)))
        if tok.kind == "ident":
            self.take()
            try:
                return self.variables[tok.value]
            except KeyError:
                raise UnknownVariableError(f"unknown variable {tok.value!r}", tok.pos) from None
        if tok.value == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if tok.value == "-":
            self.take()
            return -self.factor()
        found = tok.value or "end of input"
        raise PolySyntaxError(f"unexpected {found!r}", tok.pos)


def parse_poly(text: str, ring: RingSpec) -> PolyElement:
    """
    Parse and expand a polynomial expression.

    Args:
        text: Expression such as ``"(x+y)^2 - 3/2*x"``
        ring: Ring whose variables may appear

    Returns:
        Canonical polynomial in ``ring.poly_ring``
    """
    try:
        return _PolyParser(text, ring).parse()
    except ZeroDivisionError as exc:
        raise PolySyntaxError(str(exc)) from None


_RING = re.compile(
    r"^\s*(?P<field>QQ|GF\(\s*(?P<p>\d+)\s*\)|k)\s*\[(?P<vars>[^\]]*)\]\s*"
    r"(?P<order>[A-Za-z]+)?\s*(?:/\s*\((?P<quot>.*)\)\s*)?$",
    re.S,
)


def split_top_level(text: str, sep: str = ",") -> list[tuple[str, int]]:
    """Split on ``sep`` outside brackets; returns (piece, offset) pairs."""
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            pieces.append((text[start:i], start))
            start = i + 1
    pieces.append((text[start:], start))
    return [(p, off) for p, off in pieces if p.strip()]


def parse_ring(text: str, default_characteristic: int = 32003) -> RingSpec:
    """
    Parse a ring declaration like ``GF(32003)[x,y,z] local / (x^2+y^2+z^2)``.

    Args:
        text: Declaration; the field is ``QQ``, ``GF(p)`` or ``k``
        default_characteristic: Characteristic used for ``k``

    Returns:
        The declared ring
    """
    match = _RING.match(text)
    if not match:
        raise PolySyntaxError(f"malformed ring declaration {text!r}", 0)
    if match.group("field") == "QQ":
        field = FieldSpec.rationals()
    elif match.group("p"):
        field = FieldSpec.prime(int(match.group("p")))
    else:
        field = FieldSpec.from_characteristic(default_characteristic)
    names = [v.strip() for v in match.group("vars").split(",") if v.strip()]
    for name in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise PolySyntaxError(f"bad variable name {name!r}", match.start("vars"))
    order = OrderKind.parse(match.group("order")) if match.group("order") else OrderKind.LOCAL
    ring = RingSpec(field, tuple(names), order)
    quot = match.group("quot")
    if quot is None:
        return ring
    offset = match.start("quot")
    gens = []
    for piece, at in split_top_level(quot):
        try:
            gens.append(parse_poly(piece, ring))
        except PolySyntaxError as exc:
            pos = None if exc.position is None else exc.position + offset + at
            raise type(exc)(str(exc).split(" (at position")[0], pos) from None
    return ring.quotient_by(gens)
