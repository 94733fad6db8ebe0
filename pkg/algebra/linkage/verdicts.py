"""Windowed Ext/Tor vanishing verdicts and the complexity transfer check for linked modules."""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from ..errors import DecompositionError, InfiniteLengthError, PreconditionError
from ..homcore.complexes import resolve
from ..homcore.functors import ext, ext_length, tor, tor_length
from ..homcore.invariants import dagger, grade
from ..homcore.modules import PresentedModule
from ..stdbasis.invariants import krull_dim, socle_dim
from .complexity import ComplexityEstimate, CxClass, WINDOW_LABEL, complexity
from .links import LinkageDatum
from .operators import eisenbud_operators
from utils.logging import get_logger

logger = get_logger(__name__)


class VerdictMode(str, Enum):
    EXT_INTO = "ext_into"
    EXT_FROM = "ext_from"
    TOR = "tor"


class Verdict(BaseModel):
    """Vanishing of ``Ext`` or ``Tor`` on ``[w0, w1]``; lengths when finite, else nonzero flags."""

    mode: VerdictMode
    window: Tuple[int, int]
    values: Dict[int, int]
    vanishes_on_window: bool
    periodic_upgrade: bool
    label: str = WINDOW_LABEL


def default_window(ring, bound: int) -> Tuple[int, int]:
    lo = krull_dim(ring) + 2
    return lo, max(lo, bound)


def _degree_value(first: PresentedModule, second: PresentedModule, i: int, mode: VerdictMode) -> int:
    """Length of the group in degree ``i``, or ``0``/``1`` for zero/nonzero when not of finite length."""
    finite = second.minimal_presentation().has_finite_length()
    if mode is VerdictMode.TOR:
        if finite:
            return tor_length(first, second, i)
        return 0 if tor(first, second, i).is_zero() else 1
    if finite:
        return ext_length(first, second, i)
    try:
        return ext(first, second, i).minimal_presentation().length()
    except InfiniteLengthError:
        return 1


def periodic_on_window(module: PresentedModule, window: Tuple[int, int]) -> bool:
    """
    Over a hypersurface: the operator ``t`` is an isomorphism in every degree
    ``i`` with ``i - 2`` and ``i`` in the window, so the resolution is 2-periodic there.
    """
    ring = module.ring
    if len(ring.quotient) != 1:
        return False
    w0, w1 = window
    res = resolve(module, w1)
    if res.terminated:
        return True
    try:
        ops = eisenbud_operators(module, w1)
    except DecompositionError:
        return False
    degrees = range(max(w0, 0) + 2, w1 + 1)
    return ops.identity_holds and ops.isomorphic_on(0, degrees)


def vanishing_verdict(
    module: PresentedModule,
    partner: PresentedModule,
    mode: VerdictMode,
    window: Optional[Tuple[int, int]] = None,
    bound: int = 8,
) -> Verdict:
    """
    Decide vanishing of the requested groups on a window of degrees.

    Modes:
        ext_from: ``Ext^i(module, partner)``
        ext_into: ``Ext^i(partner, module)``
        tor: ``Tor_i(module, partner)``

    ``periodic_upgrade`` is set over a hypersurface when the resolution of the
    first argument is 2-periodic on the window; the window then decides all
    large degrees.
    """
    mode = VerdictMode(mode)
    module.ring.require_same(partner.ring)
    if window is None:
        window = default_window(module.ring, bound)
    w0, w1 = window
    if w0 > w1:
        raise PreconditionError(f"empty window [{w0}, {w1}]")
    first, second = (partner, module) if mode is VerdictMode.EXT_INTO else (module, partner)
    values = {i: _degree_value(first, second, i, mode) for i in range(w0, w1 + 1)}
    vanishes = not any(values.values())
    upgrade = periodic_on_window(first, window)
    logger.debug("verdict %s on %s: %s", mode.value, window, values)
    return Verdict(mode=mode, window=window, values=values, vanishes_on_window=vanishes, periodic_upgrade=upgrade)


class AgreementReport(BaseModel):
    """Two verdicts that a duality statement says must coincide."""

    left: Verdict
    right: Verdict

    @property
    def agree(self) -> bool:
        return self.left.vanishes_on_window == self.right.vanishes_on_window


def ext_tor_agreement(L: PresentedModule, datum: LinkageDatum, window=None, bound: int = 8) -> AgreementReport:
    """``Ext^i(L, M)`` against ``Tor_i(L, N)`` for linked ``M ~ N``."""
    N = datum.N_over_A
    return AgreementReport(
        left=vanishing_verdict(L, datum.M, VerdictMode.EXT_FROM, window, bound),
        right=vanishing_verdict(L, N, VerdictMode.TOR, window, bound),
    )


def self_ext_agreement(datum: LinkageDatum, window=None, bound: int = 8) -> AgreementReport:
    """``Ext^i(M, M)`` against ``Ext^i(N, N)``."""
    N = datum.N_over_A
    return AgreementReport(
        left=vanishing_verdict(datum.M, datum.M, VerdictMode.EXT_FROM, window, bound),
        right=vanishing_verdict(N, N, VerdictMode.EXT_FROM, window, bound),
    )


def linked_pairs_agree(first: LinkageDatum, second: LinkageDatum, window=None, bound: int = 8) -> AgreementReport:
    """``Ext^i(M, C)`` against ``Ext^i(D, N)`` for ``M ~ N`` and ``C ~ D``."""
    return AgreementReport(
        left=vanishing_verdict(first.M, second.M, VerdictMode.EXT_FROM, window, bound),
        right=vanishing_verdict(second.N_over_A, first.N_over_A, VerdictMode.EXT_FROM, window, bound),
    )


def second_duality_harness(datum: LinkageDatum, D: PresentedModule, window=None, bound: int = 8) -> AgreementReport:
    """``Ext^i(M, D)`` against ``Ext^i(D^dagger, N)`` for a Cohen-Macaulay ``D``."""
    return AgreementReport(
        left=vanishing_verdict(datum.M, D, VerdictMode.EXT_FROM, window, bound),
        right=vanishing_verdict(dagger(D), datum.N_over_A, VerdictMode.EXT_FROM, window, bound),
    )


class TransferRegime(str, Enum):
    GORENSTEIN = "gorenstein"
    EXCESS = "excess"
    NONE = "none"


class TransferReport(BaseModel):
    """Complexities of ``M``, ``N`` and ``A/q`` and whether the applicable equality holds on the window."""

    regime: TransferRegime
    cx_M: ComplexityEstimate
    cx_N: ComplexityEstimate
    cx_quotient: ComplexityEstimate
    cx_mcm: Optional[ComplexityEstimate] = None
    gorenstein_check: str
    prediction: str
    matches: Optional[bool]
    label: str = WINDOW_LABEL


def is_complete_intersection(ring) -> bool:
    return len(ring.quotient) == ring.ngens - krull_dim(ring)


def gorenstein_quotient(datum: LinkageDatum) -> Tuple[bool, str]:
    """
    Whether ``B = A/q`` is Gorenstein.

    Artinian: socle dimension one. Otherwise only the type, the number of
    generators of ``Ext^g(A/q, A)``, is tested.
    """
    B = datum.B
    if krull_dim(B) == 0:
        return socle_dim(B) == 1, "socle"
    quotient = datum.quotient_module()
    g = grade(quotient)
    omega = ext(quotient, PresentedModule.free(datum.ambient, 1), g)
    return omega.num_generators() == 1, "type only"


def complexity_transfer_check(
    datum: LinkageDatum, bound: int = 8, mcm: Optional[PresentedModule] = None
) -> TransferReport:
    """
    Compare the complexities of linked modules.

    A Gorenstein ``A/q`` of finite projective dimension predicts ``cx M = cx N``;
    ``cx A/q > cx M`` with ``cx A/q >= 1`` predicts ``cx N = cx A/q``.

    Raises:
        PreconditionError: the base ring is not a complete intersection
    """
    A = datum.ambient
    if not is_complete_intersection(A):
        raise PreconditionError(f"{A} is not a complete intersection")
    cx_M = complexity(datum.M, bound)
    cx_N = complexity(datum.N_over_A, bound)
    cx_q = complexity(datum.quotient_module(), bound)
    cx_x = complexity(mcm, bound) if mcm is not None else None
    gorenstein, method = gorenstein_quotient(datum)

    if cx_q.cx_class is CxClass.ZERO and gorenstein:
        regime = TransferRegime.GORENSTEIN
        prediction = "cx M = cx N"
        matches = cx_M.cx_class == cx_N.cx_class
    elif cx_q.value is not None and cx_q.value >= 1 and cx_M.value is not None and cx_q.value > cx_M.value:
        regime = TransferRegime.EXCESS
        prediction = "cx N = cx A/q"
        matches = cx_N.cx_class == cx_q.cx_class
    else:
        regime = TransferRegime.NONE
        prediction = "none"
        matches = None
    logger.info("complexity transfer: regime=%s M=%s N=%s A/q=%s", regime.value, cx_M.cx_class.value, cx_N.cx_class.value, cx_q.cx_class.value)
    return TransferReport(
        regime=regime,
        cx_M=cx_M,
        cx_N=cx_N,
        cx_quotient=cx_q,
        cx_mcm=cx_x,
        gorenstein_check=method,
        prediction=prediction,
        matches=matches,
    )


def window_values(verdict: Verdict) -> List[int]:
    return [verdict.values[i] for i in sorted(verdict.values)]
