"""Finitely presented modules, resolutions and derived functors."""

from .complexes import BettiTable, FreeComplex, Resolution, betti_numbers, minimize, resolve, subquotient
from .functors import (
    ext,
    ext_length,
    ext_vanishes,
    hom,
    syzygy_map,
    syzygy_module,
    tensor,
    tor,
    tor_length,
    tor_vanishes,
    transpose_module,
)
from .invariants import (
    CodimProfile,
    Fingerprint,
    TraceReport,
    annihilates,
    annihilator,
    artinian_dual,
    codim_profile,
    dagger,
    fingerprint,
    grade,
    trace_and_stability,
)
from .matrices import FreeModuleMap, is_unit_entry, reduce_entry
from .modules import PresentedModule, coker, cyclic_module, free_module, minimal_presentation, module_length, module_mingens

__all__ = [
    "BettiTable",
    "CodimProfile",
    "Fingerprint",
    "FreeComplex",
    "FreeModuleMap",
    "PresentedModule",
    "Resolution",
    "TraceReport",
    "annihilates",
    "annihilator",
    "artinian_dual",
    "betti_numbers",
    "coker",
    "codim_profile",
    "cyclic_module",
    "dagger",
    "ext",
    "ext_length",
    "ext_vanishes",
    "fingerprint",
    "free_module",
    "grade",
    "hom",
    "is_unit_entry",
    "minimal_presentation",
    "minimize",
    "module_length",
    "module_mingens",
    "reduce_entry",
    "resolve",
    "subquotient",
    "syzygy_map",
    "syzygy_module",
    "tensor",
    "tor",
    "tor_length",
    "tor_vanishes",
    "trace_and_stability",
    "transpose_module",
]
