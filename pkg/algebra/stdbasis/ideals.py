"""Ideals of a RingSpec and the ideal-level operations built on standard bases."""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Iterable, List, Sequence

from sympy.polys.rings import PolyElement

from ..errors import NotHomogeneousError, PreconditionError
from ..polycore.arith import is_homogeneous
from ..polycore.printer import format_poly
from ..polycore.rings import RingSpec
from .engine import StandardBasisBuilder, StdBasis, syzygies
from utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Ideal:
    """Ideal of ``ring`` given by generators; the standard basis is computed once on demand."""

    ring: RingSpec
    gens: tuple[PolyElement, ...]

    @classmethod
    def of(cls, ring: RingSpec, gens: Iterable) -> "Ideal":
        elements = []
        for g in gens:
            g = ring.element(g)
            if g and g not in elements:
                elements.append(g)
        return cls(ring, tuple(elements))

    @cached_property
    def basis(self) -> StdBasis:
        return StdBasis.compute([(g,) for g in self.gens], self.ring, 1)

    @property
    def std(self) -> tuple[PolyElement, ...]:
        """Reduced monic standard basis, descending leading monomials."""
        return tuple(v[0] for v in self.basis.elements)

    @property
    def is_zero(self) -> bool:
        return not self.std

    @property
    def is_unit(self) -> bool:
        return self.contains(self.ring.one)

    def contains(self, f) -> bool:
        return self.basis.contains((self.ring.element(f),))

    def contains_ideal(self, other: "Ideal") -> bool:
        self.ring.require_same(other.ring)
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def __add__(self, other: "Ideal") -> "Ideal":
        self.ring.require_same(other.ring)
        return Ideal.of(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self.ring.require_same(other.ring)
        return Ideal.of(self.ring, [f * g for f in self.gens for g in other.gens])

    def lead_monomials(self) -> List[tuple[int, ...]]:
        return [f.LM for f in self.std]

    def format(self) -> List[str]:
        return [format_poly(g, self.ring) for g in self.gens]

    def __str__(self) -> str:
        return "(" + ", ".join(self.format()) + ")"


def maximal_ideal(ring: RingSpec) -> Ideal:
    return Ideal.of(ring, ring.gens)


def power_of_maximal(ring: RingSpec, k: int) -> Ideal:
    """``m^k`` generated by all monomials of degree ``k``."""
    if k <= 0:
        return Ideal.of(ring, [ring.one])
    monos = []
    for combo in combinations_with_replacement(range(ring.ngens), k):
        m = [0] * ring.ngens
        for v in combo:
            m[v] += 1
        monos.append(ring.poly_ring.term_new(tuple(m), ring.field.domain.one))
    return Ideal.of(ring, monos)


def std_basis(ideal: Ideal) -> Ideal:
    """Populate and return the cached standard basis."""
    ideal.basis
    return ideal


def normal_form(f, ideal: Ideal) -> PolyElement:
    """
    Remainder of ``f`` modulo the standard basis of ``ideal``.

    Args:
        f: Polynomial or text
        ideal: Ideal to reduce against

    Returns:
        Full remainder for global orders; the weak normal form (tails reduced
        where it terminates) for local orders
    """
    return ideal.basis.normal_form((ideal.ring.element(f),))[0]


def ideal_member(f, ideal: Ideal) -> bool:
    return ideal.contains(f)


def _from_syzygy_heads(ring: RingSpec, vectors: Sequence[Sequence[PolyElement]]) -> Ideal:
    return Ideal.of(ring, [v[0] for v in vectors])


def _tidy(ideal: Ideal) -> Ideal:
    return Ideal.of(ideal.ring, ideal.std)


def colon_element(ideal: Ideal, g: PolyElement) -> Ideal:
    """``(I : g)`` from the syzygies of ``(g, gens I)``."""
    ring = ideal.ring
    columns = [(g,)] + [(f,) for f in ideal.gens]
    return _tidy(_from_syzygy_heads(ring, syzygies(columns, 1, ring)))


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    """
    Ideal quotient ``(I : J) = {a : aJ in I}``.

    Args:
        I: Dividend
        J: Divisor; the zero ideal gives the unit ideal

    Returns:
        Intersection of ``(I : g)`` over the generators ``g`` of ``J``
    """
    I.ring.require_same(J.ring)
    result = None
    for g in J.gens:
        part = colon_element(I, g)
        result = part if result is None else intersect(result, part)
        if result.is_zero:
            break
    if result is None:
        return Ideal.of(I.ring, [I.ring.one])
    logger.debug("colon: %d generators", len(result.gens))
    return result


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` from syzygies of the columns ``(1,1)``, ``(f,0)``, ``(0,g)``."""
    I.ring.require_same(J.ring)
    ring = I.ring
    zero, one = ring.zero, ring.one
    columns = [(one, one)] + [(f, zero) for f in I.gens] + [(zero, g) for g in J.gens]
    return _tidy(_from_syzygy_heads(ring, syzygies(columns, 2, ring)))


def _graded(ring: RingSpec, gens: Sequence[PolyElement]) -> bool:
    return all(is_homogeneous(g) for g in gens) and all(is_homogeneous(g) for g in ring.quotient)


def mingens(ideal: Ideal) -> List[PolyElement]:
    """
    Minimal generators: a subset of the generators whose images form a basis of ``I/mI``.

    Input generators are preferred in their given order. Homogeneous input is
    processed degree by degree; other local input drops generators that lie in
    the ideal of the remaining ones.

    Raises:
        NotHomogeneousError: global order with non-homogeneous input
    """
    ring = ideal.ring
    gens = [g for g in ideal.gens]
    if _graded(ring, gens):
        builder = StandardBasisBuilder(ring, 1)
        kept = []
        for g in sorted(gens, key=lambda f: min(sum(m) for m in f)):
            if not builder.contains((g,)):
                kept.append(g)
                builder.add([(g,)])
        return [g for g in gens if any(g is k for k in kept)]
    if not ring.is_local:
        raise NotHomogeneousError("minimal generators need a local order or homogeneous input")
    current = [g for g in gens if not Ideal.of(ring, []).contains(g)]
    for g in reversed(list(current)):
        others = [h for h in current if h is not g]
        if Ideal.of(ring, others).contains(g):
            current = others
    return current


def contained_in_power(ideal: Ideal, k: int) -> bool:
    """True iff every generator lies in ``m^k`` (modulo the quotient)."""
    if not ideal.ring.is_local:
        raise PreconditionError("containment in powers of m is defined for local orders")
    if k < 1:
        raise PreconditionError("power must be positive")
    power = power_of_maximal(ideal.ring, k)
    return all(power.contains(g) for g in ideal.gens)
