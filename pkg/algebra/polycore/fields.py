"""Coefficient fields: the rationals and prime fields GF(p)."""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Literal

from sympy import isprime
from sympy.polys.domains import GF, QQ

from ..errors import PreconditionError

MAX_CHARACTERISTIC = 2**31


@dataclass(frozen=True)
class FieldSpec:
    """Exact coefficient field.

    ``characteristic`` is 0 for the rationals and a prime below 2^31 otherwise.
    """

    kind: Literal["rationals", "prime_field"]
    characteristic: int

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise PreconditionError("the rationals have characteristic 0")
        elif self.kind == "prime_field":
            p = self.characteristic
            if not (1 < p < MAX_CHARACTERISTIC and isprime(p)):
                raise PreconditionError(f"characteristic must be a prime below 2^31, got {p}")
        else:
            raise PreconditionError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals", 0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime_field", p)

    @classmethod
    def from_characteristic(cls, p: int) -> "FieldSpec":
        return cls.rationals() if p == 0 else cls.prime(p)

    @cached_property
    def domain(self):
        """The sympy domain carrying the arithmetic."""
        if self.kind == "rationals":
            return QQ
        return GF(self.characteristic)

    def canonical_int(self, c: Any) -> int:
        """Representative of a prime-field element in ``[0, p)``."""
        return int(c) % self.characteristic

    def convert(self, value: Any):
        """Map an int or ``Fraction``-like value into the domain."""
        dom = self.domain
        num = getattr(value, "numerator", value)
        den = getattr(value, "denominator", 1)
        if self.kind == "rationals":
            return dom(int(num), int(den))
        if int(den) % self.characteristic == 0:
            raise ZeroDivisionError(f"denominator vanishes in characteristic {self.characteristic}")
        return dom(int(num)) / dom(int(den))

    def __str__(self) -> str:
        if self.kind == "rationals":
            return "QQ"
        return f"GF({self.characteristic})"
