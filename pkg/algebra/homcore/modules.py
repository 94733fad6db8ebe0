"""Finitely presented modules ``coker(phi)`` and their minimal presentations."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence

from sympy.polys.rings import PolyElement

from ..errors import InfiniteLengthError, LengthMismatchError, PreconditionError
from ..polycore.rings import RingSpec
from ..stdbasis.engine import StdBasis, Vector, syzygies
from ..stdbasis.ideals import Ideal, power_of_maximal
from .matrices import FreeModuleMap, is_unit_entry, reduce_entry
from utils.logging import get_logger

logger = get_logger(__name__)


def span_basis(ring: RingSpec, rank: int, columns: Sequence[Vector]) -> StdBasis:
    return StdBasis.compute(columns, ring, rank)


def _is_zero_vector(ring: RingSpec, vec: Vector) -> bool:
    if not any(vec):
        return True
    return span_basis(ring, len(vec), []).contains(vec)


def module_mingens(ring: RingSpec, rank: int, columns: Sequence[Vector]) -> List[Vector]:
    """
    Irredundant subset of ``columns`` spanning the same submodule of ``A^rank``.

    Columns are dropped from the last one backwards whenever they lie in the
    span of the others. Over a local ring the survivors are minimal
    generators; with a global order they are minimal when the input is graded.
    """
    current = [tuple(c) for c in columns if not _is_zero_vector(ring, tuple(c))]
    for idx in range(len(current) - 1, -1, -1):
        if len(current) <= 1:
            break
        candidate = current[idx]
        others = current[:idx] + current[idx + 1 :]
        if span_basis(ring, rank, others).contains(candidate):
            current = others
    return current


def _cancel_units(ring: RingSpec, nrows: int, columns: List[List[PolyElement]]):
    """Remove unit entries by Gaussian elimination; returns the surviving rows and columns."""
    rows = list(range(nrows))
    cols = [dict(zip(range(nrows), c)) for c in columns]
    while True:
        pivot = None
        for b, col in enumerate(cols):
            for a in rows:
                if is_unit_entry(col[a], ring):
                    pivot = (a, b)
                    break
            if pivot:
                break
        if pivot is None:
            break
        a, b = pivot
        piv_col = cols[b]
        u = piv_col[a]
        new_cols = []
        for j, col in enumerate(cols):
            if j == b:
                continue
            c = col[a]
            new_cols.append({r: reduce_entry(u * col[r] - c * piv_col[r], ring) for r in rows if r != a})
        rows = [r for r in rows if r != a]
        cols = new_cols
    return rows, [tuple(col[r] for r in rows) for col in cols]


@dataclass(frozen=True, eq=False)
class PresentedModule:
    """``M = coker(phi)`` for ``phi: A^n1 -> A^n0``; generators are the basis of ``A^n0``."""

    ring: RingSpec
    presentation: FreeModuleMap
    minimal: bool = False
    _cache: Dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.presentation.ring is not self.ring and self.presentation.ring != self.ring:
            raise PreconditionError("presentation lives over a different ring")

    @classmethod
    def coker(cls, phi: FreeModuleMap) -> "PresentedModule":
        return cls(phi.ring, phi)

    @classmethod
    def free(cls, ring: RingSpec, rank: int) -> "PresentedModule":
        return cls(ring, FreeModuleMap.zero(ring, rank, 0), minimal=True)

    @classmethod
    def cyclic(cls, ideal: Ideal) -> "PresentedModule":
        """``A / I``."""
        ring = ideal.ring
        return cls(ring, FreeModuleMap.from_columns(ring, 1, [(g,) for g in ideal.gens]))

    @classmethod
    def residue_field(cls, ring: RingSpec) -> "PresentedModule":
        return cls.cyclic(Ideal.of(ring, ring.gens))

    @classmethod
    def from_matrix(cls, ring: RingSpec, rows: Sequence[Sequence]) -> "PresentedModule":
        return cls(ring, FreeModuleMap.from_rows(ring, rows))

    @property
    def rank(self) -> int:
        """Number of generators of this presentation."""
        return self.presentation.nrows

    @property
    def relations(self) -> tuple[Vector, ...]:
        return self.presentation.columns

    @cached_property
    def basis(self) -> StdBasis:
        """Standard basis of the relation module inside ``A^rank``."""
        return span_basis(self.ring, self.rank, self.relations)

    def minimal_presentation(self) -> "PresentedModule":
        """
        Presentation with ``rank = dim M/mM`` and relations inside ``m A^rank``.

        Unit entries are cancelled by elimination; redundant relations are then
        dropped.
        """
        if self.minimal:
            return self
        cached = self._cache.get("minimal")
        if cached is not None:
            return cached
        ring = self.ring
        columns = [list(col) for col in self.relations]
        if not ring.is_local:
            columns = [[reduce_entry(f, ring) for f in col] for col in columns]
        rows, cols = _cancel_units(ring, self.rank, columns)
        nrows = len(rows)
        cols = module_mingens(ring, nrows, cols)
        phi = FreeModuleMap(ring, nrows, len(cols), tuple(cols))
        result = PresentedModule(ring, phi, minimal=True)
        logger.debug("minimal presentation %dx%d -> %dx%d", self.rank, len(self.relations), nrows, len(cols))
        self._cache["minimal"] = result
        return result

    def is_zero(self) -> bool:
        return all(self.basis.contains(self._unit(r)) for r in range(self.rank))

    def _unit(self, r: int) -> Vector:
        vec = [self.ring.zero] * self.rank
        vec[r] = self.ring.one
        return tuple(vec)

    def num_generators(self) -> int:
        return self.minimal_presentation().rank

    def length(self) -> int:
        """
        ``dim_k M``.

        Raises:
            InfiniteLengthError: the module is not of finite length
        """
        value = self.basis.colength()
        if value is None:
            raise InfiniteLengthError("module is not of finite length")
        return value

    def has_finite_length(self) -> bool:
        return self.basis.colength() is not None

    def filtration_dims(self, bound: int) -> List[int]:
        """``dim_k M / m^j M`` for ``j = 1..bound``."""
        dims = []
        for j in range(1, bound + 1):
            power = power_of_maximal(self.ring, j).gens
            extra = []
            for r in range(self.rank):
                for g in power:
                    vec = [self.ring.zero] * self.rank
                    vec[r] = g
                    extra.append(tuple(vec))
            colength = span_basis(self.ring, self.rank, self.relations + tuple(extra)).colength()
            dims.append(colength)
        return dims

    def annihilated_by(self, f) -> bool:
        f = self.ring.element(f)
        for r in range(self.rank):
            vec = [self.ring.zero] * self.rank
            vec[r] = f
            if not self.basis.contains(tuple(vec)):
                return False
        return True

    def over(self, ring: RingSpec) -> "PresentedModule":
        """
        The same generators and relations read over ``ring``.

        Used to pass between ``A`` and a quotient ``B = A/q`` with the same variables.
        """
        if not ring.same_ambient(self.ring):
            raise PreconditionError(f"{ring} and {self.ring} do not share an ambient ring")
        return PresentedModule(ring, self.presentation.over(ring))

    def restricted_to(self, ring: RingSpec, ideal_gens: Sequence[PolyElement]) -> "PresentedModule":
        """A module over ``B = ring / ideal`` viewed over ``ring``: add the blocks ``q e_r``."""
        extra = []
        for r in range(self.rank):
            for g in ideal_gens:
                vec = [ring.zero] * self.rank
                vec[r] = ring.element(g)
                extra.append(tuple(vec))
        phi = FreeModuleMap.from_columns(ring, self.rank, list(self.relations) + extra)
        return PresentedModule(ring, phi)

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        self.ring.require_same(other.ring)
        return PresentedModule(self.ring, self.presentation.direct_sum(other.presentation))

    def submodule(self, generators: Sequence[Sequence]) -> "PresentedModule":
        """Submodule of ``M`` spanned by ``generators`` (vectors of length ``rank``), presented on them."""
        gens = [tuple(self.ring.element(f) for f in g) for g in generators]
        for g in gens:
            if len(g) != self.rank:
                raise LengthMismatchError("submodule generator of the wrong length")
        k = len(gens)
        syz = syzygies(gens + list(self.relations), self.rank, self.ring)
        rel = [v[:k] for v in syz if any(v[:k])]
        return PresentedModule(self.ring, FreeModuleMap(self.ring, k, len(rel), tuple(rel)))

    def format(self) -> List[str]:
        header = f"coker of {self.rank}x{len(self.relations)} over {self.ring}"
        return [header] + self.presentation.format()

    def __str__(self) -> str:
        return "\n".join(self.format())


def free_module(ring: RingSpec, rank: int) -> PresentedModule:
    return PresentedModule.free(ring, rank)


def cyclic_module(ideal: Ideal) -> PresentedModule:
    return PresentedModule.cyclic(ideal)


def coker(phi: FreeModuleMap) -> PresentedModule:
    return PresentedModule.coker(phi)


def minimal_presentation(module: PresentedModule) -> PresentedModule:
    return module.minimal_presentation()


def module_length(module: PresentedModule) -> Optional[int]:
    """``dim_k M`` or ``None`` when infinite."""
    return module.basis.colength()
