"""Horizontal linkage and linkage of modules by an ideal."""

from dataclasses import dataclass
from typing import List, Sequence

from ..errors import AnnihilatorError, PreconditionError, UnstableModuleError
from ..homcore.functors import syzygy_module, transpose_module
from ..homcore.invariants import Fingerprint, annihilates, fingerprint, grade, trace_and_stability
from ..homcore.modules import PresentedModule
from ..polycore.rings import RingSpec
from ..stdbasis.ideals import Ideal, colon_ideal
from utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class LinkageDatum:
    """``M`` and ``N`` horizontally linked as modules over ``B = A/q``."""

    ambient: RingSpec
    q: Ideal
    B: RingSpec
    M: PresentedModule
    N: PresentedModule
    g: int

    @property
    def M_over_B(self) -> PresentedModule:
        return self.M.over(self.B)

    @property
    def N_over_A(self) -> PresentedModule:
        """``N`` with the blocks ``q e_r`` added so that it is presented over ``A``."""
        return self.N.over(self.ambient).restricted_to(self.ambient, self.q.gens)

    def quotient_module(self) -> PresentedModule:
        """``A/q`` as an ``A``-module."""
        return PresentedModule.cyclic(self.q)


def horizontal_link(module: PresentedModule) -> PresentedModule:
    """
    ``lambda M = Omega Tr M``, minimized.

    Raises:
        UnstableModuleError: ``M`` has a free summand
    """
    minimal = module.minimal_presentation()
    if not trace_and_stability(minimal).stable:
        raise UnstableModuleError("horizontal linkage needs a module without free summands")
    linked = syzygy_module(transpose_module(minimal)).minimal_presentation()
    logger.debug("horizontal link: %d generators -> %d generators", minimal.rank, linked.rank)
    return linked


def link_via(module: PresentedModule, q: Ideal) -> LinkageDatum:
    """
    Link ``M`` by an ideal ``q`` inside its annihilator.

    Args:
        module: ``A``-module ``M``
        q: Ideal of ``A`` with ``q M = 0``

    Returns:
        LinkageDatum whose ``N`` is ``Omega_B Tr_B M`` over ``B = A/q``

    Raises:
        AnnihilatorError: some generator of ``q`` does not kill ``M``
        UnstableModuleError: ``M`` has a free summand over ``B``
    """
    A = module.ring
    A.require_same(q.ring)
    if not annihilates(q, module):
        raise AnnihilatorError("the linking ideal does not annihilate the module")
    B = A.quotient_by(q.gens) if q.gens else A
    N = horizontal_link(module.over(B))
    datum = LinkageDatum(ambient=A, q=q, B=B, M=module, N=N, g=grade(module))
    if not annihilates(q, datum.N_over_A):
        raise AnnihilatorError("the linked module is not annihilated by the linking ideal")
    return datum


def link_chain(module: PresentedModule, ideals: Sequence[Ideal]) -> List[LinkageDatum]:
    """Link repeatedly: each step starts from the ``A``-presentation of the previous partner."""
    data: List[LinkageDatum] = []
    current = module
    for q in ideals:
        datum = link_via(current, q)
        data.append(datum)
        current = datum.N_over_A
    return data


def chain_fingerprints(data: Sequence[LinkageDatum], betti_bound: int = 4) -> List[Fingerprint]:
    return [fingerprint(d.N, betti_bound=betti_bound) for d in data]


@dataclass(frozen=True, eq=False)
class IdealLink:
    I: Ideal
    q: Ideal
    linked: Ideal
    double_colon_returns: bool


def link_ideal(I: Ideal, q: Ideal) -> IdealLink:
    """``J = q : I`` together with the check ``q : J = I``."""
    if not I.contains_ideal(q):
        raise PreconditionError("the linking ideal must lie inside the ideal")
    J = colon_ideal(q, I)
    back = colon_ideal(q, J)
    return IdealLink(I=I, q=q, linked=J, double_colon_returns=back.equals(I))
