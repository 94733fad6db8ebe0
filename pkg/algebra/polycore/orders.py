"""Monomial orders.

Two orders are supported: degree reverse lexicographic (a well-order, global)
and its local counterpart, where lower total degree is *larger* so that 1 is
the biggest monomial. Both are ``sympy`` ``MonomialOrder`` objects, so they
plug straight into ``PolyRing`` and ``PolyElement.LM``.
"""

from enum import Enum
from typing import Sequence

from sympy.polys.orderings import MonomialOrder, grevlex

from ..errors import LengthMismatchError, PreconditionError

Monomial = tuple[int, ...]


class LocalRevlexOrder(MonomialOrder):
    """Negative degree reverse lexicographic order.

    Ties in total degree are broken exactly like grevlex.
    """

    alias = "ds"
    is_global = False

    def __call__(self, monomial):
        return (-sum(monomial), tuple(reversed([-m for m in monomial])))


local_revlex = LocalRevlexOrder()


class OrderKind(str, Enum):
    GREVLEX = "grevlex"
    LOCAL = "local"

    @property
    def sympy_order(self) -> MonomialOrder:
        return grevlex if self is OrderKind.GREVLEX else local_revlex

    @property
    def is_local(self) -> bool:
        return self is OrderKind.LOCAL

    @classmethod
    def parse(cls, text: str) -> "OrderKind":
        aliases = {
            "grevlex": cls.GREVLEX,
            "global": cls.GREVLEX,
            "dp": cls.GREVLEX,
            "local": cls.LOCAL,
            "ds": cls.LOCAL,
        }
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise PreconditionError(f"unknown monomial order {text!r}") from None


class Comparison(str, Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


def compare_monomials(a: Sequence[int], b: Sequence[int], order: OrderKind) -> Comparison:
    """
    Compare two exponent vectors.

    Args:
        a: Exponent vector
        b: Exponent vector of the same length
        order: Order to compare in

    Returns:
        ``Comparison.GT`` when ``a`` is the larger monomial
    """
    if len(a) != len(b):
        raise LengthMismatchError(f"monomials of length {len(a)} and {len(b)}")
    key = order.sympy_order
    ka, kb = key(tuple(a)), key(tuple(b))
    if ka == kb:
        return Comparison.EQ
    return Comparison.GT if ka > kb else Comparison.LT


def total_degree(monomial: Sequence[int]) -> int:
    return sum(monomial)


def divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_quotient(b: Monomial, a: Monomial) -> Monomial:
    """``b / a``; caller guarantees divisibility."""
    return tuple(y - x for x, y in zip(a, b))
