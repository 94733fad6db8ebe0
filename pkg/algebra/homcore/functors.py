"""Hom, tensor, Ext, Tor, transpose and syzygy modules over a presented base ring."""

from typing import List, Optional

from ..errors import InfiniteLengthError
from ..stdbasis.engine import Vector
from .complexes import resolve, subquotient
from .matrices import FreeModuleMap
from .modules import PresentedModule, span_basis
from utils.logging import get_logger

logger = get_logger(__name__)


def _block_relations(rank: int, psi: FreeModuleMap) -> List[Vector]:
    """Columns of ``I_rank ⊗ psi``."""
    return list(FreeModuleMap.identity(psi.ring, rank).kron(psi).columns)


def transpose_module(module: PresentedModule) -> PresentedModule:
    """``Tr M = coker(phi^T)`` for the minimal presentation ``phi``."""
    phi = module.minimal_presentation().presentation
    return PresentedModule(module.ring, phi.transpose())


def syzygy_map(module: PresentedModule) -> FreeModuleMap:
    """``d_2`` of the minimal resolution: it presents the first syzygy module."""
    res = resolve(module, 2)
    return res.differential(2)


def syzygy_module(module: PresentedModule, times: int = 1) -> PresentedModule:
    """``Omega^times M``; the syzygy of a free module is zero."""
    current = module
    for _ in range(times):
        res = resolve(current, 2)
        current = PresentedModule(current.ring, res.differential(2))
    return current


def tensor(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    """``M ⊗ N = coker[phi_M ⊗ I | I ⊗ phi_N]``; generator ``(a, b)`` sits at ``a * nN + b``."""
    M.ring.require_same(N.ring)
    pm = M.minimal_presentation().presentation
    pn = N.minimal_presentation().presentation
    ring = M.ring
    left = pm.kron(FreeModuleMap.identity(ring, pn.nrows))
    right = FreeModuleMap.identity(ring, pm.nrows).kron(pn)
    return PresentedModule(ring, left.hstack(right))


def ext(M: PresentedModule, N: PresentedModule, i: int) -> PresentedModule:
    """
    ``Ext^i(M, N)`` as the cohomology of ``Hom(F, N)``.

    ``Hom(F_j, N)`` is presented as ``N^{b_j}`` on ``b_j * n0`` generators with
    relations ``I ⊗ psi``; the differential is ``d_{j+1}^T ⊗ I``.
    """
    M.ring.require_same(N.ring)
    ring = M.ring
    res = resolve(M, i + 1)
    psi = N.minimal_presentation().presentation
    n0 = psi.nrows
    ident = FreeModuleMap.identity(ring, n0)
    b = res.rank(i)
    d_out = res.differential(i + 1).transpose().kron(ident)
    out_rel = _block_relations(res.rank(i + 1), psi)
    d_in: Optional[FreeModuleMap] = None
    if i >= 1:
        d_in = res.differential(i).transpose().kron(ident)
    return subquotient(ring, b * n0, d_out, out_rel, d_in, _block_relations(b, psi))


def hom(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    """``Hom(M, N) = ker(Hom(F_0, N) -> Hom(F_1, N))``."""
    return ext(M, N, 0)


def tor(M: PresentedModule, N: PresentedModule, i: int) -> PresentedModule:
    """``Tor_i(M, N)`` as the homology of ``F ⊗ N`` with differential ``d_j ⊗ I``."""
    M.ring.require_same(N.ring)
    ring = M.ring
    res = resolve(M, i + 1)
    psi = N.minimal_presentation().presentation
    n0 = psi.nrows
    ident = FreeModuleMap.identity(ring, n0)
    b = res.rank(i)
    d_out = res.differential(i).kron(ident) if i >= 1 else None
    out_rel = _block_relations(res.rank(i - 1), psi) if i >= 1 else []
    d_in = res.differential(i + 1).kron(ident)
    return subquotient(ring, b * n0, d_out, out_rel, d_in, _block_relations(b, psi))


def _image_length(target_rank: int, relations: List[Vector], columns, module_length: int, ring) -> int:
    """``len(im D)`` inside ``N^target_rank``: ``b * len(N) - colength(R + D)``."""
    if target_rank == 0:
        return 0
    colength = span_basis(ring, target_rank, list(relations) + list(columns)).colength()
    if colength is None:
        raise InfiniteLengthError("image computation left finite length")
    return module_length - colength


def ext_length(M: PresentedModule, N: PresentedModule, i: int) -> int:
    """
    ``len Ext^i(M, N)`` for ``N`` of finite length, without presenting the cohomology.

    Uses ``len H^i = len C^i - len(im d^i) - len(im d^{i-1})``.

    Raises:
        InfiniteLengthError: ``N`` is not of finite length
    """
    ring = M.ring
    res = resolve(M, i + 1)
    psi = N.minimal_presentation().presentation
    n0 = psi.nrows
    ln = N.minimal_presentation().length()
    ident = FreeModuleMap.identity(ring, n0)

    def image(j: int) -> int:
        if j < 0:
            return 0
        target = res.rank(j + 1)
        d = res.differential(j + 1).transpose().kron(ident)
        return _image_length(target * n0, _block_relations(target, psi), d.columns, target * ln, ring)

    value = res.rank(i) * ln - image(i) - image(i - 1)
    logger.debug("ext_length i=%d -> %d", i, value)
    return value


def tor_length(M: PresentedModule, N: PresentedModule, i: int) -> int:
    """``len Tor_i(M, N)`` for ``N`` of finite length; the same bookkeeping as ``ext_length``."""
    ring = M.ring
    res = resolve(M, i + 1)
    psi = N.minimal_presentation().presentation
    n0 = psi.nrows
    ln = N.minimal_presentation().length()
    ident = FreeModuleMap.identity(ring, n0)

    def image(j: int) -> int:
        # image of d_j: C_j -> C_{j-1}
        if j < 1:
            return 0
        target = res.rank(j - 1)
        d = res.differential(j).kron(ident)
        return _image_length(target * n0, _block_relations(target, psi), d.columns, target * ln, ring)

    return res.rank(i) * ln - image(i) - image(i + 1)


def ext_vanishes(M: PresentedModule, N: PresentedModule, i: int) -> bool:
    if N.minimal_presentation().has_finite_length():
        return ext_length(M, N, i) == 0
    return ext(M, N, i).is_zero()


def tor_vanishes(M: PresentedModule, N: PresentedModule, i: int) -> bool:
    if N.minimal_presentation().has_finite_length():
        return tor_length(M, N, i) == 0
    return tor(M, N, i).is_zero()
