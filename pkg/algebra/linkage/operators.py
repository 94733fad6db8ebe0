"""Cohomology operators of a resolution over a complete intersection."""

from dataclasses import dataclass
from typing import Dict, List

from ..errors import DecompositionError, LiftError, PreconditionError
from ..homcore.complexes import Resolution, resolve
from ..homcore.matrices import FreeModuleMap
from ..homcore.modules import PresentedModule
from ..polycore.orders import OrderKind
from ..polycore.rings import RingSpec
from ..stdbasis.engine import Lifter
from utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class CohomOperators:
    """
    Operators ``t_j`` of degree ``-2`` on the minimal resolution of ``M``.

    ``lifted[j][i]`` is ``t~_j: F~_i -> F~_{i-2}`` over the ambient polynomial ring
    and ``operators[j][i]`` its reduction over ``A``.
    """

    ring: RingSpec
    relations: tuple
    resolution: Resolution
    lifted: List[Dict[int, FreeModuleMap]]
    operators: List[Dict[int, FreeModuleMap]]
    identity_holds: bool
    chain_maps: bool

    @property
    def count(self) -> int:
        return len(self.relations)

    def is_isomorphism(self, j: int, i: int) -> bool:
        op = self.operators[j].get(i)
        return op is not None and op.ncols > 0 and op.is_isomorphism()

    def isomorphic_on(self, j: int, degrees) -> bool:
        return all(self.is_isomorphism(j, i) for i in degrees)


def _over(m: FreeModuleMap, ring: RingSpec) -> FreeModuleMap:
    return m.over(ring)


def eisenbud_operators(module: PresentedModule, bound: int) -> CohomOperators:
    """
    Lift the resolution to the ambient ring, write ``d~^2 = sum f_j t~_j`` and reduce.

    The decomposition is computed with a global order on the ambient ring so
    that the cofactors are exact polynomial identities.

    Raises:
        PreconditionError: the ring has no quotient relations
        DecompositionError: an entry of ``d~^2`` is not in ``(f)``
    """
    A = module.ring
    if not A.quotient:
        raise PreconditionError("operators need a quotient ring P/(f_1..f_c)")
    P = A.ambient().with_order(OrderKind.GREVLEX)
    f = tuple(P.element(g) for g in A.quotient)
    c = len(f)
    res = resolve(module, bound)
    lifter = Lifter([(g,) for g in f], 1, P)

    lifted: List[Dict[int, FreeModuleMap]] = [dict() for _ in range(c)]
    operators: List[Dict[int, FreeModuleMap]] = [dict() for _ in range(c)]
    identity_holds = True
    for i in range(2, bound + 1):
        if not res.rank(i):
            break
        d_hi = _over(res.differential(i), P)
        d_lo = _over(res.differential(i - 1), P)
        square = d_lo.compose(d_hi)
        cols = [[[] for _ in range(square.ncols)] for _ in range(c)]
        for col_idx, col in enumerate(square.columns):
            for entry in col:
                try:
                    cofactors = lifter.solve((entry,)) if entry else [P.zero] * c
                except LiftError as exc:
                    raise DecompositionError(f"d~^2 has an entry outside (f) in degree {i}") from exc
                for j in range(c):
                    cols[j][col_idx].append(cofactors[j])
        for j in range(c):
            t = FreeModuleMap(P, square.nrows, square.ncols, tuple(tuple(col) for col in cols[j]))
            lifted[j][i] = t
            operators[j][i] = t.over(A).reduced()
        rebuilt = FreeModuleMap.zero(P, square.nrows, square.ncols)
        for j in range(c):
            rebuilt = rebuilt + lifted[j][i].scale(f[j])
        if not (square - rebuilt).is_exactly_zero():
            identity_holds = False
            logger.warning("operator identity fails in degree %d", i)

    chain_maps = _commutes(res, operators)
    return CohomOperators(
        ring=A,
        relations=f,
        resolution=res,
        lifted=lifted,
        operators=operators,
        identity_holds=identity_holds,
        chain_maps=chain_maps,
    )


def _commutes(res: Resolution, operators: List[Dict[int, FreeModuleMap]]) -> bool:
    """``d_{i-2} t_i = t_{i-1} d_i`` over ``A`` wherever both sides are defined."""
    for ops in operators:
        for i, t in ops.items():
            if i - 1 not in ops or i - 2 < 1:
                continue
            left = res.differential(i - 2).compose(t)
            right = ops[i - 1].compose(res.differential(i))
            if not (left - right).is_zero():
                return False
    return True
