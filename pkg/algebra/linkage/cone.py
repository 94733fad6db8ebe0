"""Mapping cone of the dual of a lifted comparison map, and MCM approximations read from it."""

from dataclasses import dataclass
from typing import Dict, List, Optional

from pydantic import BaseModel

from ..errors import LiftError, PreconditionError
from ..homcore.complexes import FreeComplex, Resolution, resolve
from ..homcore.functors import ext_vanishes
from ..homcore.invariants import Fingerprint, annihilates, fingerprint, grade
from ..homcore.matrices import FreeModuleMap
from ..homcore.modules import PresentedModule, module_mingens, span_basis
from ..stdbasis.engine import Lifter, syzygies
from ..stdbasis.ideals import Ideal
from ..stdbasis.invariants import krull_dim
from .links import horizontal_link
from utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class ConeComplex:
    """
    ``C^i = (Q*)^i ⊕ (P*)^{i+1}`` for ``i = -1..bound+1`` with
    ``d(a, b) = (d_Q* a + phi* b, -d_P* b)``.
    """

    C: FreeComplex
    g: int
    P: Resolution
    Q: Resolution
    phi: Dict[int, FreeModuleMap]
    module: PresentedModule
    q: Ideal
    bound: int

    def cohomology(self, i: int) -> PresentedModule:
        return self.C.homology(i)


class ConeReport(BaseModel):
    """Checks run on a cone: ``d^2 = 0``, concentration in degree ``g`` and ``H^g`` against the link."""

    g: int
    bound: int
    ranks: List[int]
    squares_to_zero: bool
    vanishing: Dict[int, bool]
    concentrated: bool
    top_fingerprint: Fingerprint
    link_fingerprint: Optional[Fingerprint] = None
    matches_link: Optional[bool] = None


def _quotient_relations(q: Ideal, rank: int) -> PresentedModule:
    """``P_0 / q P_0`` for ``P_0`` free of ``rank``."""
    ring = q.ring
    cols = []
    for r in range(rank):
        for g in q.gens:
            vec = [ring.zero] * rank
            vec[r] = g
            cols.append(tuple(vec))
    return PresentedModule(ring, FreeModuleMap(ring, rank, len(cols), tuple(cols)))


def _lift_comparison(P: Resolution, Q: Resolution, top: int) -> Dict[int, FreeModuleMap]:
    """
    Chain map ``phi: Q -> P`` over the identity of ``P_0``.

    ``phi_i`` sends each column of ``phi_{i-1} d^Q_i`` back through ``d^P_i``.
    """
    ring = P.ring
    phi = {0: FreeModuleMap.identity(ring, P.rank(0))}
    for i in range(1, top + 1):
        dq = Q.differential(i)
        if dq.ncols == 0:
            phi[i] = FreeModuleMap.zero(ring, P.rank(i), 0)
            continue
        targets = phi[i - 1].compose(dq)
        dp = P.differential(i)
        lifter = Lifter(dp.columns, dp.nrows, ring)
        cols = []
        for col in targets.columns:
            try:
                cols.append(tuple(lifter.solve(col)))
            except LiftError as exc:
                raise LiftError(f"comparison map does not lift in degree {i}: {exc}") from exc
        phi[i] = FreeModuleMap(ring, P.rank(i), len(cols), tuple(cols))
    return phi


def _block(ring, top_left, top_right, bottom_left, bottom_right) -> FreeModuleMap:
    """``[[TL, TR], [BL, BR]]`` with any block allowed to have zero size."""
    rows_top, rows_bot = top_left.nrows, bottom_left.nrows
    cols = []
    for j in range(top_left.ncols):
        cols.append(tuple(top_left.columns[j]) + tuple(bottom_left.columns[j]))
    for j in range(top_right.ncols):
        cols.append(tuple(top_right.columns[j]) + tuple(bottom_right.columns[j]))
    return FreeModuleMap(ring, rows_top + rows_bot, len(cols), tuple(cols))


def ferrand_cone(module: PresentedModule, q: Ideal, bound: int, g: Optional[int] = None) -> ConeComplex:
    """
    Build the cone for ``M`` and ``q`` up to cohomological degree ``bound + 1``.

    Args:
        module: ``A``-module ``M`` annihilated by ``q``
        q: Linking ideal
        bound: Last cohomological degree whose cohomology is needed
        g: Codimension of ``M`` when already known

    Raises:
        PreconditionError: ``q`` does not annihilate ``M``
    """
    ring = module.ring
    if not annihilates(q, module):
        raise PreconditionError("the linking ideal does not annihilate the module")
    if g is None:
        g = grade(module)
    P = resolve(module, bound + 2)
    Q = resolve(_quotient_relations(q, P.rank(0)), bound + 1)
    if Q.rank(0) != P.rank(0):
        raise PreconditionError("linking ideal contains a unit")
    phi = _lift_comparison(P, Q, bound + 1)

    ranks = {-1: P.rank(0)}
    maps = {}
    for i in range(0, bound + 2):
        ranks[i] = Q.rank(i) + P.rank(i + 1)
    for i in range(-1, bound + 1):
        dq = Q.differential(i + 1).transpose() if i >= 0 else FreeModuleMap.zero(ring, Q.rank(0), 0)
        phi_t = phi[i + 1].transpose()
        dp = -P.differential(i + 2).transpose()
        zero = FreeModuleMap.zero(ring, P.rank(i + 2), Q.rank(i) if i >= 0 else 0)
        maps[i] = _block(ring, dq, phi_t, zero, dp)
    C = FreeComplex(ring, ranks, maps, cohomological=True)
    logger.info("cone ranks %s", [ranks[i] for i in sorted(ranks)])
    return ConeComplex(C=C, g=g, P=P, Q=Q, phi=phi, module=module, q=q, bound=bound)


def cone_report(cone: ConeComplex, link: Optional[PresentedModule] = None, betti_bound: int = 3) -> ConeReport:
    """Run the concentration and fingerprint checks on ``cone``."""
    vanishing = {}
    for i in range(-1, cone.bound + 1):
        if i == cone.g:
            continue
        vanishing[i] = cone.cohomology(i).is_zero()
    top = cone.cohomology(cone.g).minimal_presentation()
    top_fp = fingerprint(top, betti_bound=betti_bound)
    report = ConeReport(
        g=cone.g,
        bound=cone.bound,
        ranks=[cone.C.rank(i) for i in range(-1, cone.bound + 2)],
        squares_to_zero=cone.C.squares_to_zero(),
        vanishing=vanishing,
        concentrated=all(vanishing.values()),
        top_fingerprint=top_fp,
    )
    if link is None:
        return report
    # H^g lives over A; compare with the link read over A
    link_fp = fingerprint(link, betti_bound=betti_bound)
    report.link_fingerprint = link_fp
    report.matches_link = link_fp == top_fp
    return report


def link_over_ambient(module: PresentedModule, q: Ideal) -> PresentedModule:
    """``Omega_B Tr_B M`` presented over ``A``."""
    A = module.ring
    B = A.quotient_by(q.gens) if q.gens else A
    return horizontal_link(module.over(B)).over(A).restricted_to(A, q.gens)


@dataclass(frozen=True, eq=False)
class MCMApprox:
    """``0 -> Y -> X -> N -> 0`` with ``Y = B^g(C)`` and ``X = Z^g(C)``."""

    Y: PresentedModule
    X: PresentedModule
    target: PresentedModule
    cycles: List[tuple]
    boundaries: List[tuple]


class MCMCertificate(BaseModel):
    y_projdim: Optional[int]
    y_finite_projdim: bool
    x_ext_vanishing: Dict[int, bool]
    exact: bool
    target_matches: bool

    @property
    def passed(self) -> bool:
        return self.y_finite_projdim and all(self.x_ext_vanishing.values()) and self.exact and self.target_matches


def _presented_on(ring, rank: int, generators) -> PresentedModule:
    """Submodule of ``A^rank`` spanned by ``generators``, presented on them."""
    k = len(generators)
    rel = [v for v in syzygies(list(generators), rank, ring) if any(v)]
    return PresentedModule(ring, FreeModuleMap(ring, k, len(rel), tuple(rel)))


def mcm_approx(cone: ConeComplex) -> MCMApprox:
    """Read ``Y = im d^{g-1}`` and ``X = ker d^g`` off the cone."""
    ring = cone.C.ring
    g = cone.g
    n = cone.C.rank(g)
    d_out = cone.C.map(g)
    d_in = cone.C.map(g - 1)
    if d_out.nrows:
        cycles = [v for v in syzygies(d_out.columns, d_out.nrows, ring) if any(v)]
    else:
        cycles = list(FreeModuleMap.identity(ring, n).columns)
    cycles = module_mingens(ring, n, cycles)
    boundaries = module_mingens(ring, n, list(d_in.columns))
    X = _presented_on(ring, n, cycles)
    Y = _presented_on(ring, n, boundaries)
    target = cone.cohomology(g).minimal_presentation()
    return MCMApprox(Y=Y, X=X, target=target, cycles=cycles, boundaries=boundaries)


def certify_mcm(approx: MCMApprox, bound: int, betti_bound: int = 3) -> MCMCertificate:
    """
    Check the approximation: ``pd Y <= dim A``, ``Ext^i(X, A) = 0`` for ``1 <= i <= bound``
    and ``Y ⊆ X`` with ``X / Y`` fingerprint-equal to ``N``.
    """
    ring = approx.X.ring
    dim = krull_dim(ring)
    y_res = resolve(approx.Y, dim + 1)
    y_finite = y_res.rank(dim + 1) == 0
    base = PresentedModule.free(ring, 1)
    ext_vanishing = {i: ext_vanishes(approx.X, base, i) for i in range(1, bound + 1)}
    if approx.cycles:
        n = len(approx.cycles[0])
        cycle_span = span_basis(ring, n, approx.cycles)
        exact = all(cycle_span.contains(b) for b in approx.boundaries)
    else:
        exact = not approx.boundaries
    n = len(approx.cycles[0]) if approx.cycles else 0
    if n:
        quotient = _quotient_by_boundaries(ring, n, approx.cycles, approx.boundaries)
    else:
        quotient = PresentedModule.free(ring, 0)
    target_matches = fingerprint(quotient, betti_bound=betti_bound) == fingerprint(approx.target, betti_bound=betti_bound)
    if not y_finite:
        logger.warning("Y has no finite resolution within %d steps", dim + 1)
    return MCMCertificate(
        y_projdim=y_res.length(),
        y_finite_projdim=y_finite,
        x_ext_vanishing=ext_vanishing,
        exact=exact,
        target_matches=target_matches,
    )


def _quotient_by_boundaries(ring, n: int, cycles, boundaries) -> PresentedModule:
    k = len(cycles)
    syz = syzygies(list(cycles) + list(boundaries), n, ring)
    rel = [v[:k] for v in syz if any(v[:k])]
    return PresentedModule(ring, FreeModuleMap(ring, k, len(rel), tuple(rel)))
