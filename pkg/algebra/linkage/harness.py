"""Seeded random instances over small Artinian Gorenstein rings and the acceptance harnesses run on them."""

import random
from typing import Callable, List, Optional, Sequence

from pydantic import BaseModel, Field

from ..errors import AlgebraError
from ..homcore.functors import ext_length, tor_length
from ..homcore.invariants import artinian_dual, fingerprint, trace_and_stability
from ..homcore.modules import PresentedModule
from ..polycore.fields import FieldSpec
from ..polycore.orders import OrderKind
from ..polycore.rings import RingSpec
from ..stdbasis.engine import ring_context, standard_monomials
from ..stdbasis.ideals import Ideal
from ..stdbasis.invariants import quotient_lead_ideal, socle_dim
from .cone import certify_mcm, cone_report, ferrand_cone, link_over_ambient, mcm_approx
from .complexity import CxClass, complexity
from .links import horizontal_link, link_via
from .operators import eisenbud_operators
from .verdicts import (
    AgreementReport,
    complexity_transfer_check,
    ext_tor_agreement,
    second_duality_harness,
    self_ext_agreement,
)
from utils.logging import get_logger

logger = get_logger(__name__)

RING_CATALOGUE: Sequence[tuple] = (
    (("x",), ("x^3",)),
    (("x",), ("x^4",)),
    (("x",), ("x^5",)),
    (("x", "y"), ("x^2", "y^2")),
    (("x", "y"), ("x^3", "y^2")),
)


class HarnessReport(BaseModel):
    name: str
    seed: Optional[int]
    count: int
    passed: int = 0
    failures: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def catalogue_ring(index: int, characteristic: int = 32003) -> RingSpec:
    variables, relations = RING_CATALOGUE[index % len(RING_CATALOGUE)]
    base = RingSpec.create(FieldSpec.from_characteristic(characteristic), variables, OrderKind.LOCAL)
    return base.quotient_by(relations)


def sample_ring(rng: random.Random, characteristic: int = 32003, hypersurface: bool = False) -> RingSpec:
    choices = [i for i, (v, _) in enumerate(RING_CATALOGUE) if not hypersurface or len(v) == 1]
    return catalogue_ring(rng.choice(choices), characteristic)


def _nonzero_monomials(ring: RingSpec) -> List[tuple]:
    monos = standard_monomials(list(quotient_lead_ideal(ring).monomials), ring.ngens, ring_context(ring).truncation)
    return [m for m in monos or [] if sum(m) > 0]


def sample_element(rng: random.Random, ring: RingSpec, terms: int = 2):
    """Random nonzero element of ``m`` with small coefficients."""
    monos = _nonzero_monomials(ring)
    picked = rng.sample(monos, min(terms, len(monos)))
    dom = ring.field.domain
    return ring.poly_ring.from_dict({m: dom(rng.randint(1, 9)) for m in picked})


def sample_stable_cyclic(rng: random.Random, ring: RingSpec) -> PresentedModule:
    """``A/I`` with ``0 != I`` inside ``m``; such a module has no free summand."""
    gens = [sample_element(rng, ring, rng.randint(1, 2)) for _ in range(rng.randint(1, 2))]
    return PresentedModule.cyclic(Ideal.of(ring, gens))


def sample_test_module(rng: random.Random, ring: RingSpec) -> PresentedModule:
    if rng.random() < 0.4:
        return PresentedModule.residue_field(ring)
    return sample_stable_cyclic(rng, ring)


def sample_linking_ideal(rng: random.Random, module: PresentedModule) -> Ideal:
    """Zero, or a variable killing ``M`` whose quotient is Gorenstein and keeps ``M`` stable."""
    ring = module.ring
    candidates = [Ideal.of(ring, [])]
    for v in ring.gens:
        if not module.annihilated_by(v):
            continue
        B = ring.quotient_by([v])
        try:
            if socle_dim(B) == 1 and trace_and_stability(module.over(B)).stable:
                candidates.append(Ideal.of(ring, [v]))
        except AlgebraError:
            continue
    return rng.choice(candidates)


def _run(name: str, count: int, seed: Optional[int], body: Callable[[random.Random, int], Optional[str]]) -> HarnessReport:
    rng = random.Random(seed)
    report = HarnessReport(name=name, seed=seed, count=count)
    for trial in range(count):
        try:
            failure = body(rng, trial)
        except AlgebraError as exc:
            failure = f"{type(exc).__name__}: {exc}"
        if failure:
            report.failures.append(f"trial {trial}: {failure}")
        else:
            report.passed += 1
    logger.info("harness %s: %d/%d passed", name, report.passed, count)
    return report


def _missing_upgrade(ring: RingSpec, agreement: AgreementReport) -> Optional[str]:
    """Over a hypersurface both verdicts must carry the periodic upgrade."""
    if len(ring.quotient) != 1:
        return None
    if agreement.left.periodic_upgrade and agreement.right.periodic_upgrade:
        return None
    return "no periodic upgrade over a hypersurface"


def cone_concentration_harness(count: int, seed: Optional[int] = None, bound: int = 3, mcm_bound: int = 8) -> HarnessReport:
    """Cone cohomology vanishes off degree ``g``, ``H^g`` matches the link and the MCM approximation certifies."""

    def body(rng, trial):
        ring = sample_ring(rng)
        M = sample_stable_cyclic(rng, ring)
        q = sample_linking_ideal(rng, M)
        cone = ferrand_cone(M, q, bound)
        report = cone_report(cone, link=link_over_ambient(M, q))
        if not report.squares_to_zero:
            return "d^2 != 0"
        if not report.concentrated:
            return f"cohomology off degree g: {report.vanishing}"
        if not report.matches_link:
            return "H^g differs from the link"
        certificate = certify_mcm(mcm_approx(cone), mcm_bound)
        if not certificate.passed:
            return f"MCM approximation fails: {certificate.model_dump()}"
        return None

    return _run("cone-concentration", count, seed, body)


def double_link_harness(count: int, seed: Optional[int] = None) -> HarnessReport:
    def body(rng, trial):
        ring = sample_ring(rng)
        M = sample_stable_cyclic(rng, ring).minimal_presentation()
        twice = horizontal_link(horizontal_link(M))
        if fingerprint(twice) != fingerprint(M):
            return "linking twice does not return the module"
        return None

    return _run("double-link", count, seed, body)


def ext_tor_harness(count: int, seed: Optional[int] = None, bound: int = 8) -> HarnessReport:
    """``Ext^i(L, M)`` and ``Tor_i(L, N)`` vanish together on the window."""

    def body(rng, trial):
        ring = sample_ring(rng)
        M = sample_stable_cyclic(rng, ring)
        datum = link_via(M, Ideal.of(ring, []))
        L = sample_test_module(rng, ring)
        agreement = ext_tor_agreement(L, datum, bound=bound)
        if not agreement.agree:
            return f"Ext {agreement.left.values} vs Tor {agreement.right.values}"
        return _missing_upgrade(ring, agreement)

    return _run("ext-tor", count, seed, body)


def self_ext_harness(count: int, seed: Optional[int] = None, bound: int = 8) -> HarnessReport:
    def body(rng, trial):
        ring = sample_ring(rng)
        datum = link_via(sample_stable_cyclic(rng, ring), Ideal.of(ring, []))
        agreement = self_ext_agreement(datum, bound=bound)
        if not agreement.agree:
            return f"Ext(M,M) {agreement.left.values} vs Ext(N,N) {agreement.right.values}"
        return _missing_upgrade(ring, agreement)

    return _run("self-ext", count, seed, body)


def duality_harness(count: int, seed: Optional[int] = None, bound: int = 8) -> HarnessReport:
    """``Ext^i(M, D)`` against ``Ext^i(D^dagger, N)``; over an Artinian base every module is Cohen-Macaulay."""

    def body(rng, trial):
        ring = sample_ring(rng)
        datum = link_via(sample_stable_cyclic(rng, ring), Ideal.of(ring, []))
        D = sample_test_module(rng, ring)
        agreement = second_duality_harness(datum, D, bound=bound)
        if not agreement.agree:
            return f"{agreement.left.values} vs {agreement.right.values}"
        return _missing_upgrade(ring, agreement)

    return _run("second-duality", count, seed, body)


def matlis_duality_harness(count: int, seed: Optional[int] = None, bound: int = 6) -> HarnessReport:
    """``len Ext^i(M, L)`` equals ``len Tor_i(M, L^v)`` for ``0 <= i <= bound``, with ``L^v = Hom(L, A)``."""

    def body(rng, trial):
        ring = sample_ring(rng)
        M = sample_test_module(rng, ring)
        L = sample_test_module(rng, ring)
        dual = artinian_dual(L)
        for i in range(bound + 1):
            left, right = ext_length(M, L, i), tor_length(M, dual, i)
            if left != right:
                return f"degree {i}: len Ext {left} vs len Tor {right}"
        return None

    return _run("matlis-duality", count, seed, body)


def periodicity_harness(count: int, seed: Optional[int] = None, bound: int = 6) -> HarnessReport:
    """Over a hypersurface the operator is an isomorphism from degree 2 on and the complexity is at most 1."""

    def body(rng, trial):
        ring = sample_ring(rng, hypersurface=True)
        M = sample_test_module(rng, ring)
        ops = eisenbud_operators(M, bound)
        if not ops.identity_holds or not ops.chain_maps:
            return "operator identity or chain condition failed"
        if not ops.isomorphic_on(0, range(2, bound + 1)):
            return "operator is not an isomorphism"
        cx = complexity(M, bound)
        if cx.cx_class not in (CxClass.ZERO, CxClass.ONE):
            return f"complexity class {cx.cx_class.value}"
        return None

    return _run("hypersurface-periodicity", count, seed, body)


def transfer_harness(count: int, seed: Optional[int] = None, bound: int = 6) -> HarnessReport:
    """Linking by a Gorenstein ideal of finite projective dimension keeps the complexity."""

    def body(rng, trial):
        ring = sample_ring(rng)
        datum = link_via(sample_stable_cyclic(rng, ring), Ideal.of(ring, []))
        report = complexity_transfer_check(datum, bound)
        return None if report.matches else f"regime {report.regime.value}: {report.cx_M.cx_class.value} vs {report.cx_N.cx_class.value}"

    return _run("complexity-transfer", count, seed, body)


HARNESSES = {
    "cone": cone_concentration_harness,
    "double-link": double_link_harness,
    "ext-tor": ext_tor_harness,
    "self-ext": self_ext_harness,
    "duality": duality_harness,
    "matlis-duality": matlis_duality_harness,
    "periodicity": periodicity_harness,
    "transfer": transfer_harness,
}


def run_all(count: int, seed: Optional[int] = None, names: Optional[Sequence[str]] = None) -> List[HarnessReport]:
    selected = names or list(HARNESSES)
    return [HARNESSES[name](count, seed) for name in selected]
