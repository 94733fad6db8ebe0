"""Checked polynomial arithmetic.

``PolyElement`` already implements canonical sparse arithmetic; this module
adds the ring bookkeeping: operands must belong to the declared ring and
results are not reduced modulo the quotient.
"""

from typing import Literal, Union

from sympy.polys.rings import PolyElement

from ..errors import PreconditionError, RingMismatchError
from .rings import RingSpec

ArithOp = Literal["add", "sub", "mul", "scale"]


def _own(f: PolyElement, ring: RingSpec) -> PolyElement:
    if not isinstance(f, PolyElement) or f.ring != ring.poly_ring:
        raise RingMismatchError(f"operand {f!r} does not belong to {ring}")
    return f


def poly_arith(op: ArithOp, f: PolyElement, g: Union[PolyElement, int], ring: RingSpec) -> PolyElement:
    """
    Apply one arithmetic operation.

    Args:
        op: ``add``, ``sub``, ``mul`` or ``scale``
        f: Left operand
        g: Right operand; a scalar for ``scale``
        ring: Ring both operands must belong to

    Returns:
        Canonical polynomial, not reduced modulo the quotient
    """
    f = _own(f, ring)
    if op == "scale":
        if isinstance(g, PolyElement):
            if not g.is_ground:
                raise PreconditionError("scale expects a scalar")
            c = g.const()
        else:
            c = ring.field.convert(g)
        return f.mul_ground(c)
    g = _own(g, ring)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise PreconditionError(f"unknown arithmetic operation {op!r}")


def truncate(f: PolyElement, degree: int) -> PolyElement:
    """Drop every term of total degree ``>= degree``."""
    if not f or all(sum(m) < degree for m in f):
        return f
    return f.ring.from_dict({m: c for m, c in f.items() if sum(m) < degree})


def lowest_degree(f: PolyElement) -> int:
    """Order of ``f`` at the origin; ``-1`` for zero."""
    return min((sum(m) for m in f), default=-1)


def is_homogeneous(f: PolyElement) -> bool:
    return len({sum(m) for m in f}) <= 1
