"""Numerical invariants of quotient rings read off lead ideals."""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import List

from ..errors import InfiniteLengthError, NotArtinianError
from ..polycore.orders import Monomial
from ..polycore.rings import RingSpec
from .engine import ring_context, standard_monomials
from .ideals import Ideal, colon_ideal, maximal_ideal


@dataclass(frozen=True)
class LeadIdeal:
    """Minimal monomial generators of a lead ideal."""

    nvars: int
    monomials: tuple[Monomial, ...]

    @classmethod
    def of(cls, nvars: int, monomials) -> "LeadIdeal":
        kept: List[Monomial] = []
        for m in sorted(set(monomials), key=lambda m: (sum(m), m)):
            if not any(all(a <= b for a, b in zip(k, m)) for k in kept):
                kept.append(m)
        return cls(nvars, tuple(kept))

    def dimension(self) -> int:
        """Largest set of variables on which no generator is supported."""
        for size in range(self.nvars, -1, -1):
            for subset in combinations(range(self.nvars), size):
                chosen = set(subset)
                if not any(all(e == 0 or v in chosen for v, e in enumerate(m)) for m in self.monomials):
                    return size
        return 0


def quotient_lead_ideal(ring: RingSpec) -> LeadIdeal:
    return LeadIdeal.of(ring.ngens, [f.LM for f in ring_context(ring).quotient_std])


def lead_ideal(ideal: Ideal) -> LeadIdeal:
    """Lead ideal of ``I + J`` in the ambient ring."""
    leads = [m for _, m in ideal.basis.lead_terms()]
    return LeadIdeal.of(ideal.ring.ngens, leads)


@lru_cache(maxsize=None)
def krull_dim(ring: RingSpec) -> int:
    """Dimension of the ring: independent sets of the quotient's lead ideal."""
    return quotient_lead_ideal(ring).dimension()


def vspace_dim(ring: RingSpec) -> int:
    """
    ``dim_k`` of a finite-length ring.

    Raises:
        InfiniteLengthError: the quotient is not m-primary
    """
    monos = standard_monomials(list(quotient_lead_ideal(ring).monomials), ring.ngens)
    if monos is None:
        raise InfiniteLengthError(f"{ring} is not of finite length")
    return len(monos)


def socle(ring: RingSpec) -> Ideal:
    """``(0 : m)`` in an Artinian ring."""
    if krull_dim(ring) != 0:
        raise NotArtinianError(f"{ring} has positive dimension")
    return colon_ideal(Ideal.of(ring, []), maximal_ideal(ring))


def socle_dim(ring: RingSpec) -> int:
    total = vspace_dim(ring)
    quotient = socle(ring).basis.colength()
    return total - quotient


def is_gorenstein_artinian(ring: RingSpec) -> bool:
    return socle_dim(ring) == 1
