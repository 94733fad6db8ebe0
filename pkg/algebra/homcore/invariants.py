"""Module invariants: annihilators, trace ideals, fingerprints, codimension and duals."""

from typing import List, Optional, Tuple

from pydantic import BaseModel

from ..errors import InconclusiveError, NotCohenMacaulayError, NotGorensteinError, PreconditionError
from ..stdbasis.engine import syzygies
from ..stdbasis.ideals import Ideal, intersect
from ..stdbasis.invariants import krull_dim, lead_ideal, socle_dim
from .complexes import resolve
from .functors import ext, hom
from .modules import PresentedModule
from utils.logging import get_logger

logger = get_logger(__name__)


def annihilator(module: PresentedModule) -> Ideal:
    """``ann M`` as the intersection of ``(U : e_j)`` over the generators."""
    ring = module.ring
    pres = module.minimal_presentation()
    result: Optional[Ideal] = None
    for j in range(pres.rank):
        unit = [ring.zero] * pres.rank
        unit[j] = ring.one
        columns = [tuple(unit)] + list(pres.relations)
        part = Ideal.of(ring, [v[0] for v in syzygies(columns, pres.rank, ring)])
        result = part if result is None else intersect(result, part)
    if result is None:
        return Ideal.of(ring, [ring.one])
    return result


def annihilates(ideal: Ideal, module: PresentedModule) -> bool:
    """Every generator of ``ideal`` kills every generator of ``module``."""
    return all(module.annihilated_by(g) for g in ideal.gens)


class TraceReport(BaseModel):
    """Trace ideal of ``M`` and whether ``M`` has no free summand."""

    model_config = {"arbitrary_types_allowed": True}

    trace: Ideal
    stable: bool


def trace_and_stability(module: PresentedModule) -> TraceReport:
    """
    Trace ideal ``tau(M)``: the entries of the maps ``M -> A``.

    ``Hom(M, A) = ker(phi^T)``; the entries of its generators span the trace.
    ``M`` is stable (no free summand) iff the trace lies in ``m``.
    """
    ring = module.ring
    if not ring.is_local:
        raise PreconditionError("stability is decided over a local ring")
    phi = module.minimal_presentation().presentation
    if phi.ncols == 0:
        maps = [tuple(ring.one if r == c else ring.zero for r in range(phi.nrows)) for c in range(phi.nrows)]
    else:
        maps = syzygies(phi.transpose().columns, phi.ncols, ring)
    trace = Ideal.of(ring, [f for v in maps for f in v])
    stable = not trace.contains(ring.one)
    return TraceReport(trace=trace, stable=stable)


class Fingerprint(BaseModel):
    """Cheap isomorphism invariants; equal modules have equal fingerprints."""

    betti: List[int]
    filtration: List[int]
    annihilator_leads: List[Tuple[int, ...]]

    def format(self) -> str:
        return f"betti={self.betti} filtration={self.filtration} ann={self.annihilator_leads}"


def fingerprint(module: PresentedModule, betti_bound: int = 4, filtration_bound: int = 4) -> Fingerprint:
    """Betti window, ``dim M/m^j M`` for small ``j`` and the lead monomials of ``ann M``."""
    betti = resolve(module, betti_bound).betti().betti
    filtration = module.filtration_dims(filtration_bound)
    leads = lead_ideal(annihilator(module)).monomials
    return Fingerprint(betti=betti, filtration=filtration, annihilator_leads=[tuple(m) for m in leads])


class CodimProfile(BaseModel):
    """Which ``Ext^i(M, A)`` vanish for ``i <= bound``; ``g`` is the first nonvanishing index."""

    g: Optional[int]
    nonvanishing: List[int]
    bound: int

    @property
    def cohen_macaulay(self) -> bool:
        """Only ``Ext^g(M, A)`` survives."""
        return self.g is not None and self.nonvanishing == [self.g]


def codim_profile(module: PresentedModule, bound: Optional[int] = None) -> CodimProfile:
    """
    Grade of ``M`` over a Gorenstein ring from the vanishing of ``Ext^i(M, A)``.

    Raises:
        InconclusiveError: every computed Ext vanished for a nonzero module
    """
    ring = module.ring
    if bound is None:
        bound = krull_dim(ring) + 1
    if module.is_zero():
        return CodimProfile(g=None, nonvanishing=[], bound=bound)
    base = PresentedModule.free(ring, 1)
    nonvanishing = [i for i in range(bound + 1) if not ext(module, base, i).is_zero()]
    if not nonvanishing:
        raise InconclusiveError(f"Ext^i(M, A) vanishes for all i <= {bound}")
    logger.debug("codim profile: %s", nonvanishing)
    return CodimProfile(g=nonvanishing[0], nonvanishing=nonvanishing, bound=bound)


def grade(module: PresentedModule) -> int:
    """Codimension of a nonzero module; Artinian base rings give 0 without computing."""
    if krull_dim(module.ring) == 0:
        return 0
    return codim_profile(module).g


def dagger(module: PresentedModule) -> PresentedModule:
    """
    ``D^dagger = Ext^g(D, A)`` for a Cohen-Macaulay module of codimension ``g``.

    Raises:
        NotCohenMacaulayError: another ``Ext^i(D, A)`` survives
    """
    profile = codim_profile(module)
    if profile.g is None:
        return PresentedModule.free(module.ring, 0)
    if not profile.cohen_macaulay:
        raise NotCohenMacaulayError(f"Ext^i(D, A) is nonzero for i in {profile.nonvanishing}")
    return ext(module, PresentedModule.free(module.ring, 1), profile.g).minimal_presentation()


def artinian_dual(module: PresentedModule) -> PresentedModule:
    """
    ``Hom(L, A)`` over an Artinian Gorenstein ring.

    Raises:
        NotGorensteinError: the ring is not Artinian with one-dimensional socle
    """
    ring = module.ring
    if krull_dim(ring) != 0 or socle_dim(ring) != 1:
        raise NotGorensteinError(f"{ring} is not Artinian Gorenstein")
    return hom(module, PresentedModule.free(ring, 1)).minimal_presentation()
