"""Maps between free modules, stored column by column."""

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence

from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from ..errors import LengthMismatchError
from ..polycore.arith import truncate
from ..polycore.printer import format_matrix
from ..polycore.rings import RingSpec
from ..stdbasis.engine import StdBasis, Vector, ring_context


@lru_cache(maxsize=128)
def zero_basis(ring: RingSpec) -> StdBasis:
    """Standard basis of the zero ideal, i.e. of the quotient ideal itself."""
    return StdBasis.compute([], ring, 1)


def reduce_entry(f: PolyElement, ring: RingSpec) -> PolyElement:
    """Representative of ``f`` modulo the quotient ideal."""
    if not ring.quotient:
        return f
    truncation = ring_context(ring).truncation
    if truncation is not None:
        f = truncate(f, truncation)
    return zero_basis(ring).normal_form((f,))[0]


def is_zero_entry(f: PolyElement, ring: RingSpec) -> bool:
    if not f:
        return True
    if not ring.quotient:
        return False
    return zero_basis(ring).contains((f,))


def is_unit_entry(f: PolyElement, ring: RingSpec) -> bool:
    if ring.is_local:
        return bool(f.const())
    f = reduce_entry(f, ring)
    return bool(f) and f.is_ground


@dataclass(frozen=True, eq=False)
class FreeModuleMap:
    """``A^ncols -> A^nrows``; ``columns[j]`` is the image of the j-th basis vector."""

    ring: RingSpec
    nrows: int
    ncols: int
    columns: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.columns) != self.ncols:
            raise LengthMismatchError(f"{len(self.columns)} columns for {self.ncols} declared")
        for col in self.columns:
            if len(col) != self.nrows:
                raise LengthMismatchError(f"column of length {len(col)} in a map to rank {self.nrows}")

    @classmethod
    def from_columns(cls, ring: RingSpec, nrows: int, columns: Sequence[Sequence]) -> "FreeModuleMap":
        cols = tuple(tuple(ring.element(f) for f in col) for col in columns)
        return cls(ring, nrows, len(cols), cols)

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence], ncols: int = None) -> "FreeModuleMap":
        rows = [[ring.element(f) for f in row] for row in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise LengthMismatchError("ragged matrix rows")
        cols = tuple(tuple(rows[i][j] for i in range(len(rows))) for j in range(ncols))
        return cls(ring, len(rows), ncols, cols)

    @classmethod
    def zero(cls, ring: RingSpec, nrows: int, ncols: int) -> "FreeModuleMap":
        z = ring.zero
        return cls(ring, nrows, ncols, tuple((z,) * nrows for _ in range(ncols)))

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "FreeModuleMap":
        cols = []
        for j in range(n):
            col = [ring.zero] * n
            col[j] = ring.one
            cols.append(tuple(col))
        return cls(ring, n, n, tuple(cols))

    def entry(self, i: int, j: int) -> PolyElement:
        return self.columns[j][i]

    @property
    def rows(self) -> List[List[PolyElement]]:
        return [[col[i] for col in self.columns] for i in range(self.nrows)]

    def transpose(self) -> "FreeModuleMap":
        cols = tuple(tuple(self.columns[j][i] for j in range(self.ncols)) for i in range(self.nrows))
        return FreeModuleMap(self.ring, self.ncols, self.nrows, cols)

    def apply(self, vec: Sequence[PolyElement]) -> Vector:
        if len(vec) != self.ncols:
            raise LengthMismatchError(f"vector of length {len(vec)} for a map from rank {self.ncols}")
        out = [self.ring.zero] * self.nrows
        for a, col in zip(vec, self.columns):
            if not a:
                continue
            for i, f in enumerate(col):
                if f:
                    out[i] = out[i] + a * f
        return self._clip(out)

    def _clip(self, vec) -> Vector:
        truncation = ring_context(self.ring).truncation
        if truncation is None:
            return tuple(vec)
        return tuple(truncate(f, truncation) for f in vec)

    def compose(self, other: "FreeModuleMap") -> "FreeModuleMap":
        """``self ∘ other``."""
        if other.nrows != self.ncols:
            raise LengthMismatchError(f"cannot compose {self.nrows}x{self.ncols} with {other.nrows}x{other.ncols}")
        cols = tuple(self.apply(col) for col in other.columns)
        return FreeModuleMap(self.ring, self.nrows, other.ncols, cols)

    def hstack(self, other: "FreeModuleMap") -> "FreeModuleMap":
        if other.nrows != self.nrows:
            raise LengthMismatchError("hstack needs equal row counts")
        return FreeModuleMap(self.ring, self.nrows, self.ncols + other.ncols, self.columns + other.columns)

    def direct_sum(self, other: "FreeModuleMap") -> "FreeModuleMap":
        z = self.ring.zero
        cols = [tuple(col) + (z,) * other.nrows for col in self.columns]
        cols += [(z,) * self.nrows + tuple(col) for col in other.columns]
        return FreeModuleMap(self.ring, self.nrows + other.nrows, self.ncols + other.ncols, tuple(cols))

    def kron(self, other: "FreeModuleMap") -> "FreeModuleMap":
        """Kronecker product; row ``(i, k)`` sits at ``i * other.nrows + k``."""
        z = self.ring.zero
        nrows = self.nrows * other.nrows
        cols = []
        for j in range(self.ncols):
            for l in range(other.ncols):
                col = [z] * nrows
                for i in range(self.nrows):
                    a = self.columns[j][i]
                    if not a:
                        continue
                    for k in range(other.nrows):
                        b = other.columns[l][k]
                        if b:
                            col[i * other.nrows + k] = a * b
                cols.append(self._clip(col))
        return FreeModuleMap(self.ring, nrows, self.ncols * other.ncols, tuple(cols))

    def scale(self, c: PolyElement) -> "FreeModuleMap":
        return FreeModuleMap(self.ring, self.nrows, self.ncols, tuple(self._clip([c * f for f in col]) for col in self.columns))

    def __neg__(self) -> "FreeModuleMap":
        return FreeModuleMap(self.ring, self.nrows, self.ncols, tuple(tuple(-f for f in col) for col in self.columns))

    def __sub__(self, other: "FreeModuleMap") -> "FreeModuleMap":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LengthMismatchError("shape mismatch")
        cols = tuple(tuple(a - b for a, b in zip(c1, c2)) for c1, c2 in zip(self.columns, other.columns))
        return FreeModuleMap(self.ring, self.nrows, self.ncols, cols)

    def __add__(self, other: "FreeModuleMap") -> "FreeModuleMap":
        return self - (-other)

    def reduced(self) -> "FreeModuleMap":
        cols = tuple(tuple(reduce_entry(f, self.ring) for f in col) for col in self.columns)
        return FreeModuleMap(self.ring, self.nrows, self.ncols, cols)

    def is_zero(self) -> bool:
        """Every entry lies in the quotient ideal."""
        return all(is_zero_entry(f, self.ring) for col in self.columns for f in col)

    def is_exactly_zero(self) -> bool:
        return not any(f for col in self.columns for f in col)

    def entries_in_maximal_ideal(self) -> bool:
        return not any(is_unit_entry(f, self.ring) for col in self.columns for f in col)

    def over(self, ring: RingSpec) -> "FreeModuleMap":
        """Same matrix read over another ring with the same variables."""
        cols = tuple(tuple(ring.element(f) for f in col) for col in self.columns)
        return FreeModuleMap(ring, self.nrows, self.ncols, cols)

    def constant_rank(self) -> int:
        """Rank over k of the matrix of constant terms."""
        if not self.nrows or not self.ncols:
            return 0
        dom = self.ring.field.domain
        rows = [[f.const() for f in row] for row in self.rows]
        return DomainMatrix(rows, (self.nrows, self.ncols), dom).rank()

    def is_isomorphism(self) -> bool:
        """Square with invertible constant part, hence invertible over the local ring."""
        return self.nrows == self.ncols and self.constant_rank() == self.nrows

    def format(self) -> List[str]:
        return format_matrix(self.rows, self.ring)

    def __str__(self) -> str:
        return "\n".join(self.format())
