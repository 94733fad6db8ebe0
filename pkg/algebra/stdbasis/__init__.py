"""Standard bases and ideal operations."""

from .engine import Lifter, StandardBasisBuilder, StdBasis, Vector, invert_unit, lift, ring_context, syzygies
from .ideals import (
    Ideal,
    colon_ideal,
    contained_in_power,
    ideal_member,
    intersect,
    maximal_ideal,
    mingens,
    normal_form,
    power_of_maximal,
    std_basis,
)
from .invariants import LeadIdeal, is_gorenstein_artinian, krull_dim, lead_ideal, socle, socle_dim, vspace_dim

__all__ = [
    "Ideal",
    "LeadIdeal",
    "Lifter",
    "StandardBasisBuilder",
    "StdBasis",
    "Vector",
    "colon_ideal",
    "contained_in_power",
    "ideal_member",
    "intersect",
    "invert_unit",
    "is_gorenstein_artinian",
    "lift",
    "krull_dim",
    "lead_ideal",
    "maximal_ideal",
    "mingens",
    "normal_form",
    "power_of_maximal",
    "ring_context",
    "socle",
    "socle_dim",
    "std_basis",
    "syzygies",
    "vspace_dim",
]
