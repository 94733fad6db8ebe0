"""Deterministic text rendering of polynomials.

The output is accepted by ``parse_poly``: terms descend in the ring order,
prime-field coefficients are printed in ``[0, p)``, rationals as ``a/b``.
"""

from typing import Sequence

from sympy.polys.rings import PolyElement

from .rings import RingSpec


def _coeff_parts(c, ring: RingSpec) -> tuple[bool, int, int]:
    """(negative, |numerator|, denominator)."""
    if ring.field.kind == "prime_field":
        return False, ring.field.canonical_int(c), 1
    num, den = int(ring.field.domain.numer(c)), int(ring.field.domain.denom(c))
    return num < 0, abs(num), den


def format_monomial(monom: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, monom):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: PolyElement, ring: RingSpec) -> str:
    """
    Render a polynomial.

    Args:
        f: Polynomial of ``ring``
        ring: Ring supplying variable names and the coefficient field

    Returns:
        Text such as ``x^2 + 2*x*y + y^2``; ``0`` for the zero polynomial
    """
    if not f:
        return "0"
    out = []
    for monom, c in f.terms():
        negative, num, den = _coeff_parts(c, ring)
        coeff = str(num) if den == 1 else f"{num}/{den}"
        mono = format_monomial(monom, ring.vars)
        if not mono:
            body = coeff
        elif coeff == "1":
            body = mono
        else:
            body = f"{coeff}*{mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(out)


def format_vector(vec: Sequence[PolyElement], ring: RingSpec) -> str:
    return "[" + ", ".join(format_poly(f, ring) for f in vec) + "]"


def format_matrix(rows: Sequence[Sequence[PolyElement]], ring: RingSpec) -> list[str]:
    """One string per row."""
    return [format_vector(row, ring) for row in rows]
