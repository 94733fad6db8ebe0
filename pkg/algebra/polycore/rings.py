"""Ring declarations: k[x_1..x_n] with an order, optionally modulo an ideal."""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from sympy.polys.rings import PolyElement, PolyRing

from ..errors import PreconditionError, RingMismatchError
from .fields import FieldSpec
from .orders import OrderKind


@dataclass(frozen=True)
class RingSpec:
    """A polynomial ring, or its localization at the origin, modulo ``quotient``.

    With a local order the ring models ``k[vars]`` localized at the maximal
    ideal ``m = (vars)``; quotient generators must then lie in ``m``.
    Elements of the quotient ring are represented by polynomials of the
    ambient ring and are never reduced implicitly.
    """

    field: FieldSpec
    vars: tuple[str, ...]
    order: OrderKind = OrderKind.LOCAL
    quotient: tuple[PolyElement, ...] = ()

    def __post_init__(self):
        if not self.vars:
            raise PreconditionError("a ring needs at least one variable")
        if len(set(self.vars)) != len(self.vars):
            raise PreconditionError(f"repeated variable names in {self.vars}")
        for g in self.quotient:
            if g.ring != self.poly_ring:
                raise RingMismatchError("quotient generator from another ring")
            if not g:
                raise PreconditionError("quotient generators must be nonzero")
            if self.order.is_local and g.const():
                raise PreconditionError(f"quotient generator {g} is a unit in the local ring")
            if not self.order.is_local and g.is_ground:
                raise PreconditionError(f"quotient generator {g} is a unit")

    @classmethod
    def create(
        cls,
        field: FieldSpec,
        vars: Sequence[str],
        order: OrderKind = OrderKind.LOCAL,
        quotient: Iterable = (),
    ) -> "RingSpec":
        """Build a ring, converting quotient generators given as text or dicts."""
        base = cls(field, tuple(vars), order)
        if not quotient:
            return base
        return base.quotient_by(quotient)

    @cached_property
    def poly_ring(self) -> PolyRing:
        return PolyRing(self.vars, self.field.domain, self.order.sympy_order)

    @property
    def ngens(self) -> int:
        return len(self.vars)

    @property
    def gens(self) -> tuple[PolyElement, ...]:
        return tuple(self.poly_ring.gens)

    @property
    def zero(self) -> PolyElement:
        return self.poly_ring.zero

    @property
    def one(self) -> PolyElement:
        return self.poly_ring.one

    @property
    def is_local(self) -> bool:
        return self.order.is_local

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def ambient(self) -> "RingSpec":
        """The same ring with no quotient."""
        if not self.quotient:
            return self
        return RingSpec(self.field, self.vars, self.order)

    def element(self, value) -> PolyElement:
        """Coerce text, ints, or polynomials of a compatible ring into this ring."""
        if isinstance(value, PolyElement):
            if value.ring == self.poly_ring:
                return value
            if tuple(str(s) for s in value.ring.symbols) != self.vars:
                raise RingMismatchError(f"{value.ring} is not compatible with {self}")
            if value.ring.domain != self.field.domain:
                raise RingMismatchError("coefficient fields differ")
            return self.poly_ring.from_dict(dict(value))
        if isinstance(value, str):
            from .parser import parse_poly

            return parse_poly(value, self)
        if isinstance(value, dict):
            return self.poly_ring.from_dict(value)
        return self.poly_ring.ground_new(self.field.convert(value))

    def quotient_by(self, generators: Iterable) -> "RingSpec":
        """``self / (generators)``; zero generators are dropped."""
        extra = []
        for g in generators:
            g = self.element(g)
            if g and g not in self.quotient and g not in extra:
                extra.append(g)
        if not extra:
            return self
        return RingSpec(self.field, self.vars, self.order, self.quotient + tuple(extra))

    def with_order(self, order: OrderKind) -> "RingSpec":
        """Copy with another monomial order; quotient generators are carried over."""
        if order is self.order:
            return self
        target = RingSpec(self.field, self.vars, order)
        return RingSpec(
            self.field,
            self.vars,
            order,
            tuple(target.poly_ring.from_dict(dict(g)) for g in self.quotient),
        )

    def same_ambient(self, other: "RingSpec") -> bool:
        return (self.field, self.vars, self.order) == (other.field, other.vars, other.order)

    def require_same(self, other: "RingSpec") -> None:
        if self != other:
            raise RingMismatchError(f"{self} and {other} differ")

    def describe(self, quotient_text: Optional[Sequence[str]] = None) -> str:
        from .printer import format_poly

        head = f"{self.field}[{','.join(self.vars)}] {self.order.value}"
        if not self.quotient:
            return head
        gens = quotient_text or [format_poly(g, self) for g in self.quotient]
        return f"{head} / ({', '.join(gens)})"

    def __str__(self) -> str:
        return self.describe()
