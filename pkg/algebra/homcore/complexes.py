"""Complexes of free modules, minimal free resolutions and Betti tables."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel

from ..errors import PreconditionError
from ..polycore.rings import RingSpec
from ..stdbasis.engine import Vector, syzygies
from .matrices import FreeModuleMap, is_unit_entry, reduce_entry
from .modules import PresentedModule, module_mingens
from utils.logging import get_logger

logger = get_logger(__name__)


class BettiTable(BaseModel):
    """Ranks ``beta_0..beta_bound`` of a minimal resolution."""

    betti: List[int]
    bound: int
    terminated: bool

    def __getitem__(self, i: int) -> int:
        return self.betti[i] if 0 <= i < len(self.betti) else 0

    def window(self, lo: int, hi: int) -> List[int]:
        return [self[i] for i in range(lo, hi + 1)]

    def format(self) -> str:
        return " ".join(f"b{i}={b}" for i, b in enumerate(self.betti))


@dataclass(frozen=True, eq=False)
class FreeComplex:
    """
    A bounded complex of free modules over ``ring``.

    ``ranks[i]`` is the rank in degree ``i``. For a homological complex
    ``maps[i]`` goes from degree ``i`` to ``i - 1``; for a cohomological one it
    goes from ``i`` to ``i + 1``. Missing maps are zero.
    """

    ring: RingSpec
    ranks: Dict[int, int]
    maps: Dict[int, FreeModuleMap]
    cohomological: bool = False

    def rank(self, i: int) -> int:
        return self.ranks.get(i, 0)

    def map(self, i: int) -> FreeModuleMap:
        if i in self.maps:
            return self.maps[i]
        step = 1 if self.cohomological else -1
        return FreeModuleMap.zero(self.ring, self.rank(i + step), self.rank(i))

    @property
    def degrees(self) -> List[int]:
        return sorted(self.ranks)

    def incoming(self, i: int) -> FreeModuleMap:
        """The differential landing in degree ``i``."""
        return self.map(i - 1) if self.cohomological else self.map(i + 1)

    def squares_to_zero(self) -> bool:
        for i in self.maps:
            nxt = i + 1 if self.cohomological else i - 1
            if nxt in self.maps and not self.maps[nxt].compose(self.maps[i]).is_zero():
                return False
        return True

    def is_minimal(self) -> bool:
        return all(m.entries_in_maximal_ideal() for m in self.maps.values())

    def homology(self, i: int) -> PresentedModule:
        """``ker(out) / im(in)`` in degree ``i``."""
        return subquotient(self.ring, self.rank(i), self.map(i), (), self.incoming(i), ())

    def dual(self) -> "FreeComplex":
        """``Hom(-, A)`` of a homological complex: degree ``i`` maps to ``i + 1`` by the transpose."""
        if self.cohomological:
            raise PreconditionError("dualizing a cohomological complex is not supported")
        maps = {i - 1: m.transpose() for i, m in self.maps.items()}
        return FreeComplex(self.ring, dict(self.ranks), maps, cohomological=True)

    def betti(self) -> List[int]:
        return [self.rank(i) for i in range(min(self.degrees, default=0), max(self.degrees, default=-1) + 1)]


@dataclass(frozen=True, eq=False)
class Resolution:
    """A minimal free resolution computed up to ``bound``."""

    module: PresentedModule
    complex: FreeComplex
    bound: int
    terminated: bool

    @property
    def ring(self) -> RingSpec:
        return self.module.ring

    def differential(self, i: int) -> FreeModuleMap:
        """``d_i: F_i -> F_{i-1}``."""
        return self.complex.map(i)

    def rank(self, i: int) -> int:
        return self.complex.rank(i)

    def betti(self) -> BettiTable:
        values = [self.rank(i) for i in range(self.bound + 1)]
        return BettiTable(betti=values, bound=self.bound, terminated=self.terminated)

    def length(self) -> Optional[int]:
        """Projective dimension when the resolution terminated inside the bound."""
        if not self.terminated:
            return None
        nonzero = [i for i in range(self.bound + 1) if self.rank(i)]
        return max(nonzero) if nonzero else 0


def _next_syzygies(d: FreeModuleMap) -> List[Vector]:
    syz = syzygies(d.columns, d.nrows, d.ring)
    if not d.ring.is_local:
        syz = [tuple(reduce_entry(f, d.ring) for f in v) for v in syz]
    return module_mingens(d.ring, d.ncols, syz)


def resolve(module: PresentedModule, bound: int) -> Resolution:
    """
    Minimal free resolution ``F_bound -> ... -> F_0 -> M``.

    Results are cached on the module and extended when a larger bound is asked for.

    Args:
        module: Module to resolve
        bound: Last homological degree to compute

    Returns:
        Resolution whose ``terminated`` flag says the next syzygy module vanished
    """
    if bound < 0:
        raise PreconditionError("resolution bound must be non-negative")
    cache = module._cache
    previous: Optional[Resolution] = cache.get("resolution")
    if previous is not None and (previous.bound >= bound or previous.terminated):
        return _truncated(previous, bound)

    ring = module.ring
    pres = module.minimal_presentation()
    if previous is not None:
        ranks = dict(previous.complex.ranks)
        maps = dict(previous.complex.maps)
        start = previous.bound + 1
    else:
        ranks = {0: pres.rank}
        maps = {}
        start = 1
    terminated = False
    for i in range(start, bound + 1):
        if i == 1:
            cols = list(pres.relations)
        else:
            cols = _next_syzygies(maps[i - 1])
        if not cols:
            terminated = True
            break
        maps[i] = FreeModuleMap(ring, ranks[i - 1], len(cols), tuple(cols))
        ranks[i] = len(cols)
        logger.debug("resolution degree %d: rank %d", i, ranks[i])
    if bound == 0 and not pres.relations:
        terminated = True
    result = Resolution(module, FreeComplex(ring, ranks, maps), bound, terminated)
    cache["resolution"] = result
    return _truncated(result, bound)


def _truncated(res: Resolution, bound: int) -> Resolution:
    if res.bound == bound:
        return res
    ranks = {i: r for i, r in res.complex.ranks.items() if i <= bound}
    maps = {i: m for i, m in res.complex.maps.items() if i <= bound}
    terminated = res.terminated and all(i <= bound for i in res.complex.ranks)
    return Resolution(res.module, FreeComplex(res.ring, ranks, maps), bound, terminated)


def betti_numbers(module: PresentedModule, bound: int) -> BettiTable:
    return resolve(module, bound).betti()


def minimize(cx: FreeComplex) -> FreeComplex:
    """
    Cancel unit entries of a homological complex until it is minimal.

    A unit ``u`` at ``(a, b)`` of ``d_i`` removes ``b`` from degree ``i`` and ``a``
    from degree ``i - 1``; ``d_i`` becomes ``u D - D[:, b] D[a, :]``, row ``b`` of
    ``d_{i+1}`` and column ``a`` of ``d_{i-1}`` are dropped.
    """
    if cx.cohomological:
        raise PreconditionError("minimize expects a homological complex")
    ring = cx.ring
    ranks = dict(cx.ranks)
    maps = {i: [list(col) for col in m.columns] for i, m in cx.maps.items()}
    changed = True
    while changed:
        changed = False
        for i in sorted(maps):
            cols = maps[i]
            pivot = next(
                ((a, b) for b, col in enumerate(cols) for a, f in enumerate(col) if is_unit_entry(f, ring)),
                None,
            )
            if pivot is None:
                continue
            a, b = pivot
            piv = cols[b]
            u = piv[a]
            maps[i] = [
                [reduce_entry(u * col[r] - col[a] * piv[r], ring) for r in range(len(col)) if r != a]
                for j, col in enumerate(cols)
                if j != b
            ]
            if i + 1 in maps:
                maps[i + 1] = [[f for r, f in enumerate(col) if r != b] for col in maps[i + 1]]
            if i - 1 in maps:
                maps[i - 1] = [col for j, col in enumerate(maps[i - 1]) if j != a]
            ranks[i] -= 1
            ranks[i - 1] -= 1
            changed = True
            break
    out = {}
    for i, cols in maps.items():
        out[i] = FreeModuleMap(ring, ranks.get(i - 1, 0), len(cols), tuple(tuple(c) for c in cols))
    return FreeComplex(ring, ranks, out)


def subquotient(
    ring: RingSpec,
    n: int,
    d_out: Optional[FreeModuleMap],
    out_relations: Sequence[Vector],
    d_in: Optional[FreeModuleMap],
    relations: Sequence[Vector],
) -> PresentedModule:
    """
    ``ker(A^n -> T) / (im d_in + R)`` where ``T = coker(out_relations)``.

    Args:
        ring: Base ring
        n: Rank of the middle free module
        d_out: Outgoing map, or ``None`` when everything is a cycle
        out_relations: Relations of the target of ``d_out``
        d_in: Incoming map, or ``None``
        relations: Relations ``R`` of the middle term

    Returns:
        The homology presented on generators of the cycle module
    """
    if n == 0:
        return PresentedModule.free(ring, 0)
    if d_out is None or (not d_out.nrows):
        cycles = list(FreeModuleMap.identity(ring, n).columns)
    else:
        cols = list(d_out.columns) + list(out_relations)
        cycles = [v[:n] for v in syzygies(cols, d_out.nrows, ring)]
        cycles = module_mingens(ring, n, [c for c in cycles if any(c)])
    k = len(cycles)
    if k == 0:
        return PresentedModule.free(ring, 0)
    boundaries = list(d_in.columns) if d_in is not None else []
    syz = syzygies(cycles + boundaries + list(relations), n, ring)
    rel = [v[:k] for v in syz if any(v[:k])]
    phi = FreeModuleMap(ring, k, len(rel), tuple(rel))
    return PresentedModule(ring, phi)
