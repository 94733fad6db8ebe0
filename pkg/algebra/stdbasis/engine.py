"""Standard bases of submodules of free modules over a RingSpec.

Vectors are tuples of ``PolyElement`` of fixed length (the rank). Terms
``x^a e_i`` are compared position-over-term: a smaller component index is
larger, and inside a component the ring's monomial order decides. Quotient
generators ``J`` enter every computation as the blocks ``J e_i``.

Three reduction regimes are used:

* global order: ordinary Buchberger with full division;
* local order with an Artinian quotient (``m^D`` inside ``J``): every term of
  degree ``>= D`` is dropped, which turns all computations into finite linear
  algebra, and plain division terminates;
* local order otherwise: Mora's weak normal form with ecart-minimal reducers
  and reducer-set augmentation.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Any, Dict, Iterable, List, Optional, Sequence

from sympy.polys.rings import PolyElement

from ..errors import LiftError, PreconditionError
from ..polycore.arith import truncate
from ..polycore.orders import Monomial
from ..polycore.rings import RingSpec
from utils.logging import get_logger

logger = get_logger(__name__)

Vector = tuple[PolyElement, ...]


@dataclass
class _Entry:
    vec: Vector
    comp: int
    mon: Monomial
    lc: Any
    ecart: int
    quotient: bool = False


@dataclass(frozen=True)
class RingContext:
    """Facts about the quotient ideal that every computation needs."""

    quotient_std: tuple[PolyElement, ...] = ()
    truncation: Optional[int] = None


def _degree_key(mon: Monomial):
    return (sum(mon), tuple(reversed(mon)))


def standard_monomials(
    leads: Sequence[Monomial], nvars: int, truncation: Optional[int] = None
) -> Optional[List[Monomial]]:
    """
    Monomials outside the monomial ideal generated by ``leads``.

    Args:
        leads: Generators of the monomial ideal
        nvars: Number of variables
        truncation: When set, monomials of degree ``>= truncation`` count as inside

    Returns:
        Sorted list, or ``None`` when infinitely many monomials are outside
    """

    def outside(m):
        return not any(all(a <= b for a, b in zip(lead, m)) for lead in leads)

    if truncation is not None:
        found = []
        for d in range(truncation):
            for combo in combinations_with_replacement(range(nvars), d):
                m = [0] * nvars
                for v in combo:
                    m[v] += 1
                m = tuple(m)
                if outside(m):
                    found.append(m)
        return sorted(found, key=_degree_key)
    bounds = []
    for v in range(nvars):
        pure = [lead[v] for lead in leads if all(e == 0 for i, e in enumerate(lead) if i != v)]
        if not pure:
            return None
        bounds.append(min(pure))
    found = [m for m in product(*(range(b) for b in bounds)) if outside(m)]
    return sorted(found, key=_degree_key)


@lru_cache(maxsize=None)
def ring_context(ring: RingSpec) -> RingContext:
    """Standard basis of the quotient ideal and, when Artinian, the truncation degree."""
    if not ring.quotient:
        return RingContext()
    builder = StandardBasisBuilder(ring.ambient(), 1)
    builder.add([(g,) for g in ring.quotient])
    std = tuple(v[0] for v in builder.result())
    truncation = None
    if ring.is_local:
        monos = standard_monomials([f.LM for f in std], ring.ngens)
        if monos is not None:
            truncation = max(sum(m) for m in monos) + 1
    logger.debug("quotient of %s: %d std elements, truncation %s", ring, len(std), truncation)
    return RingContext(std, truncation)


class _Arena:
    """Arithmetic on vectors of one rank over one ring."""

    def __init__(self, ring: RingSpec, rank: int, blocks: Optional[Iterable[int]] = None):
        ctx = ring_context(ring)
        self.ring = ring
        self.pr = ring.poly_ring
        self.rank = rank
        self.truncation = ctx.truncation
        self.mora = ring.is_local and ctx.truncation is None
        self.div = self.pr.monomial_div
        self.lcm = self.pr.monomial_lcm
        self.zero = self.pr.zero
        comps = range(rank) if blocks is None else blocks
        self.quotient_entries = []
        for c in comps:
            leads = []
            for g in ctx.quotient_std:
                vec = self.unit_vector(c, g)
                if any(vec):
                    self.quotient_entries.append(self.entry(vec, quotient=True))
                    leads.append(vec[c].LM)
            if self.truncation is not None:
                for mon in self.boundary_monomials(leads):
                    vec = [self.zero] * rank
                    vec[c] = self.pr.term_new(mon, self.pr.domain.one)
                    self.quotient_entries.append(self.entry(tuple(vec), quotient=True))

    def boundary_monomials(self, leads: Sequence[Monomial]) -> List[Monomial]:
        """Monomials of the truncation degree not divisible by ``leads``.

        Truncated arithmetic drops them, so they enter as explicit quotient
        generators and their S-pairs record the relations ``m^D e_i``.
        """
        out = []
        for combo in combinations_with_replacement(range(self.ring.ngens), self.truncation):
            m = [0] * self.ring.ngens
            for v in combo:
                m[v] += 1
            m = tuple(m)
            if not any(self.div(m, lead) is not None for lead in leads):
                out.append(m)
        return out

    def unit_vector(self, comp: int, f: PolyElement) -> Vector:
        vec = [self.zero] * self.rank
        vec[comp] = self.clip(f)
        return tuple(vec)

    def clip(self, f: PolyElement) -> PolyElement:
        return f if self.truncation is None else truncate(f, self.truncation)

    def clip_vec(self, vec: Sequence[PolyElement]) -> Vector:
        if self.truncation is None:
            return tuple(vec)
        return tuple(truncate(f, self.truncation) for f in vec)

    def lead(self, vec: Vector):
        for i, f in enumerate(vec):
            if f:
                m = f.LM
                return i, m, f[m]
        return None

    def ecart(self, vec: Vector, mon: Monomial) -> int:
        if not self.mora:
            return 0
        return max(sum(m) for f in vec for m in f) - sum(mon)

    def entry(self, vec: Vector, quotient: bool = False) -> _Entry:
        comp, mon, lc = self.lead(vec)
        return _Entry(vec, comp, mon, lc, self.ecart(vec, mon), quotient)

    def monic(self, vec: Vector) -> Vector:
        lc = self.lead(vec)[2]
        if lc == self.pr.domain.one:
            return vec
        return tuple(f.quo_ground(lc) for f in vec)

    def sub(self, h: Vector, c, mon: Monomial, g: Vector) -> Vector:
        """``h - c * x^mon * g``."""
        out = tuple(hi - gi.mul_term((mon, c)) if gi else hi for hi, gi in zip(h, g))
        return self.clip_vec(out) if self.truncation is not None else out

    def spoly(self, a: _Entry, b: _Entry) -> Vector:
        L = self.lcm(a.mon, b.mon)
        left = tuple(f.mul_term((self.div(L, a.mon), b.lc)) for f in a.vec)
        return self.sub(left, a.lc, self.div(L, b.mon), b.vec)

    def weak_nf(self, h: Vector, reducers: Dict[int, List[_Entry]], stop_comp: Optional[int] = None) -> Vector:
        """Top-reduce ``h`` until its lead is not divisible by any reducer lead."""
        extra: Dict[int, List[_Entry]] = {}
        while True:
            ld = self.lead(h)
            if ld is None:
                return h
            comp, mon, lc = ld
            if stop_comp is not None and comp >= stop_comp:
                return h
            best = None
            for pool in (reducers.get(comp, ()), extra.get(comp, ())):
                for e in pool:
                    q = self.div(mon, e.mon)
                    if q is None:
                        continue
                    if best is None or e.ecart < best[0].ecart:
                        best = (e, q)
                    if not self.mora or e.ecart == 0:
                        break
                if best is not None and (not self.mora or best[0].ecart == 0):
                    break
            if best is None:
                return h
            e, q = best
            if self.mora and e.ecart > self.ecart(h, mon):
                extra.setdefault(comp, []).append(self.entry(h))
            h = self.sub(h, lc / e.lc, q, e.vec)

    def full_nf(
        self,
        h: Vector,
        reducers: Dict[int, List[_Entry]],
        keep_lead: bool = False,
        homogeneous_only: bool = False,
    ) -> Vector:
        """Reduce every term of ``h``; with ``keep_lead`` the leading term stays."""
        rem = [self.zero] * self.rank
        first = True
        while True:
            ld = self.lead(h)
            if ld is None:
                break
            comp, mon, lc = ld
            found = None
            if not (first and keep_lead):
                for e in reducers.get(comp, ()):
                    if homogeneous_only and e.ecart:
                        continue
                    q = self.div(mon, e.mon)
                    if q is not None:
                        found = (e, q)
                        break
            first = False
            if found is None:
                term = self.pr.term_new(mon, lc)
                rem[comp] = rem[comp] + term
                h = h[:comp] + (h[comp] - term,) + h[comp + 1 :]
            else:
                e, q = found
                h = self.sub(h, lc / e.lc, q, e.vec)
        return tuple(rem)

    def normal_form(self, h: Vector, reducers: Dict[int, List[_Entry]]) -> Vector:
        h = self.clip_vec(h)
        if self.mora:
            h = self.weak_nf(h, reducers)
            if not any(h):
                return h
            return self.full_nf(h, reducers, homogeneous_only=True)
        return self.full_nf(h, reducers)


def _index(entries: Iterable[_Entry]) -> Dict[int, List[_Entry]]:
    table: Dict[int, List[_Entry]] = {}
    for e in entries:
        table.setdefault(e.comp, []).append(e)
    return table


class StandardBasisBuilder:
    """Incremental Buchberger/Mora completion with the Gebauer-Moeller criteria.

    Args:
        ring: Ring the vectors live over
        rank: Length of the vectors
        blocks: Components that receive quotient blocks (default: all)
    """

    def __init__(self, ring: RingSpec, rank: int, blocks: Optional[Iterable[int]] = None):
        self.arena = _Arena(ring, rank, blocks)
        self.entries: List[_Entry] = list(self.arena.quotient_entries)
        self.table = _index(self.entries)
        self.pairs: Dict[tuple[int, int], Monomial] = {}

    @property
    def ring(self) -> RingSpec:
        return self.arena.ring

    @property
    def rank(self) -> int:
        return self.arena.rank

    def reduce(self, vec: Sequence[PolyElement]) -> Vector:
        """Weak normal form against the current basis."""
        return self.arena.weak_nf(self.arena.clip_vec(vec), self.table)

    def contains(self, vec: Sequence[PolyElement]) -> bool:
        return not any(self.reduce(vec))

    def add(self, vectors: Iterable[Sequence[PolyElement]]) -> List[bool]:
        """
        Insert vectors and complete to a standard basis.

        Args:
            vectors: New generators

        Returns:
            For each vector, whether it was new (did not reduce to zero)
        """
        fresh = []
        for vec in vectors:
            if len(vec) != self.rank:
                raise PreconditionError(f"vector of length {len(vec)} in a rank {self.rank} module")
            h = self.reduce(vec)
            fresh.append(bool(any(h)))
            if any(h):
                self._insert(h)
        self._complete()
        return fresh

    def _insert(self, h: Vector) -> None:
        arena = self.arena
        h = arena.monic(h)
        new = arena.entry(h)
        k = len(self.entries)
        same = [i for i, e in enumerate(self.entries) if e.comp == new.comp]
        lcm, div = arena.lcm, arena.div

        for (i, j), L in list(self.pairs.items()):
            if self.entries[i].comp != new.comp or div(L, new.mon) is None:
                continue
            if L != lcm(self.entries[i].mon, new.mon) and L != lcm(self.entries[j].mon, new.mon):
                del self.pairs[(i, j)]

        groups: Dict[Monomial, List[int]] = {}
        for i in same:
            groups.setdefault(lcm(self.entries[i].mon, new.mon), []).append(i)
        kept: List[Monomial] = []
        for L in sorted(groups, key=_degree_key):
            if any(div(L, other) is not None for other in kept):
                continue
            kept.append(L)
            if self.rank == 1 and any(
                arena.pr.monomial_mul(self.entries[i].mon, new.mon) == L for i in groups[L]
            ):
                continue
            self.pairs[(min(groups[L]), k)] = L

        self.entries.append(new)
        self.table.setdefault(new.comp, []).append(new)

    def _complete(self) -> None:
        arena = self.arena
        steps = 0
        while self.pairs:
            (i, j), L = min(
                self.pairs.items(), key=lambda item: (sum(item[1]), self.entries[item[0][0]].comp, item[1], item[0])
            )
            del self.pairs[(i, j)]
            s = arena.spoly(self.entries[i], self.entries[j])
            h = arena.weak_nf(s, self.table)
            steps += 1
            if any(h):
                self._insert(h)
        if steps:
            logger.debug("completion: %d pairs reduced, basis size %d", steps, len(self.entries))

    def result(self, reduce_tails: bool = True) -> List[Vector]:
        """Minimal, monic, tail-reduced elements (quotient blocks excluded), descending leads."""
        arena = self.arena
        quot = _index(e for e in self.entries if e.quotient)
        kept: List[_Entry] = []
        candidates = sorted(
            (e for e in self.entries if not e.quotient), key=lambda e: (e.comp, _degree_key(e.mon))
        )
        for e in candidates:
            pool = quot.get(e.comp, []) + [k for k in kept if k.comp == e.comp]
            if any(arena.div(e.mon, other.mon) is not None for other in pool):
                continue
            kept.append(e)
        if reduce_tails:
            reduced = []
            for e in kept:
                others = _index([k for k in kept if k is not e] + [q for qs in quot.values() for q in qs])
                vec = arena.full_nf(e.vec, others, keep_lead=True, homogeneous_only=arena.mora)
                reduced.append(arena.entry(arena.monic(vec)))
            kept = reduced
        order = arena.pr.order
        kept.sort(key=lambda e: (-e.comp, order(e.mon)), reverse=True)
        return [e.vec for e in kept]

    def lead_terms(self) -> List[tuple[int, Monomial]]:
        """Leads of the full basis, quotient blocks included."""
        return [(e.comp, e.mon) for e in self.entries]


@dataclass(frozen=True)
class StdBasis:
    """A finished standard basis of a submodule ``U`` of ``A^rank``."""

    ring: RingSpec
    rank: int
    elements: tuple[Vector, ...]
    _entries: tuple[_Entry, ...] = field(repr=False, compare=False, default=())

    @classmethod
    def compute(cls, vectors: Iterable[Sequence[PolyElement]], ring: RingSpec, rank: int) -> "StdBasis":
        builder = StandardBasisBuilder(ring, rank)
        builder.add(list(vectors))
        elements = tuple(builder.result())
        arena = builder.arena
        entries = tuple(arena.quotient_entries) + tuple(arena.entry(v) for v in elements)
        return cls(ring, rank, elements, entries)

    @property
    def _arena(self) -> _Arena:
        return _arena_for(self.ring, self.rank)

    def normal_form(self, vec: Sequence[PolyElement]) -> Vector:
        return self._arena.normal_form(tuple(vec), _index(self._entries))

    def contains(self, vec: Sequence[PolyElement]) -> bool:
        arena = self._arena
        return not any(arena.weak_nf(arena.clip_vec(vec), _index(self._entries)))

    def lead_terms(self) -> List[tuple[int, Monomial]]:
        return [(e.comp, e.mon) for e in self._entries]

    def leads_by_component(self) -> Dict[int, List[Monomial]]:
        table: Dict[int, List[Monomial]] = {c: [] for c in range(self.rank)}
        for comp, mon in self.lead_terms():
            table[comp].append(mon)
        return table

    def colength(self) -> Optional[int]:
        """``dim_k A^rank / U``, or ``None`` when infinite."""
        truncation = ring_context(self.ring).truncation
        total = 0
        for comp, leads in self.leads_by_component().items():
            monos = standard_monomials(leads, self.ring.ngens, truncation)
            if monos is None:
                return None
            total += len(monos)
        return total

    def certify(self) -> bool:
        """Every S-pair of the basis reduces to zero."""
        arena = self._arena
        table = _index(self._entries)
        entries = list(self._entries)
        for a in range(len(entries)):
            for b in range(a + 1, len(entries)):
                ea, eb = entries[a], entries[b]
                if ea.comp != eb.comp or (ea.quotient and eb.quotient):
                    continue
                if any(arena.weak_nf(arena.spoly(ea, eb), table)):
                    return False
        return True


@lru_cache(maxsize=256)
def _arena_for(ring: RingSpec, rank: int) -> _Arena:
    return _Arena(ring, rank)


def syzygies(columns: Sequence[Sequence[PolyElement]], nrows: int, ring: RingSpec) -> List[Vector]:
    """
    Generators of the kernel of the map ``A^k -> A^nrows`` given by ``columns``.

    Args:
        columns: ``k`` vectors of length ``nrows``
        nrows: Rank of the target
        ring: Base ring

    Returns:
        Vectors of length ``k`` generating all relations modulo the quotient
    """
    k = len(columns)
    if k == 0:
        return []
    pr = ring.poly_ring
    extended = []
    for j, col in enumerate(columns):
        unit = [pr.zero] * k
        unit[j] = pr.one
        extended.append(tuple(col) + tuple(unit))
    builder = StandardBasisBuilder(ring, nrows + k)
    builder.add(extended)
    out = []
    for vec in builder.result(reduce_tails=False):
        if builder.arena.lead(vec)[0] >= nrows:
            tail = vec[nrows:]
            if any(tail):
                out.append(tail)
    return out


def invert_unit(u: PolyElement, ring: RingSpec) -> PolyElement:
    """
    Inverse of a unit of the local ring, when it is a polynomial.

    Constants always invert; other units invert only over an Artinian
    quotient, where the geometric series terminates.
    """
    c = u.const()
    if not c:
        raise LiftError(f"{u} is not a unit")
    if u.is_ground:
        return ring.poly_ring.ground_new(ring.field.domain.one / c)
    truncation = ring_context(ring).truncation
    if not ring.is_local or truncation is None:
        raise LiftError(f"the unit {u} has no polynomial inverse in {ring}")
    w = ring.poly_ring.one - u.quo_ground(c)
    inv, power = ring.poly_ring.one, ring.poly_ring.one
    for _ in range(truncation):
        power = truncate(power * w, truncation)
        if not power:
            break
        inv = inv + power
    return truncate(inv.quo_ground(c), truncation)


class Lifter:
    """Express vectors as combinations of fixed generators modulo the quotient.

    Args:
        generators: Vectors ``g_1..g_k`` of length ``nrows``
        nrows: Length of the vectors
        ring: Base ring
    """

    def __init__(self, generators: Sequence[Sequence[PolyElement]], nrows: int, ring: RingSpec):
        self.ring = ring
        self.nrows = nrows
        self.k = len(generators)
        pr = ring.poly_ring
        rank = nrows + self.k + 1
        self.builder = StandardBasisBuilder(ring, rank, blocks=range(nrows))
        extended = []
        for j, g in enumerate(generators):
            tail = [pr.zero] * (self.k + 1)
            tail[j] = pr.one
            extended.append(tuple(g) + tuple(tail))
        self.builder.add(extended)

    def lift(self, target: Sequence[PolyElement]) -> tuple[PolyElement, List[PolyElement]]:
        """
        Find a unit ``u`` and cofactors ``a`` with ``u * target = sum a_j g_j``.

        Raises:
            LiftError: ``target`` is not in the span of the generators
        """
        pr = self.ring.poly_ring
        tail = [pr.zero] * (self.k + 1)
        tail[-1] = pr.one
        vec = tuple(target) + tuple(tail)
        arena = self.builder.arena
        h = arena.weak_nf(arena.clip_vec(vec), self.builder.table, stop_comp=self.nrows)
        if any(h[: self.nrows]):
            raise LiftError("target is not in the submodule spanned by the generators")
        unit = h[-1]
        cofactors = [-a for a in h[self.nrows : self.nrows + self.k]]
        return unit, cofactors

    def solve(self, target: Sequence[PolyElement]) -> List[PolyElement]:
        """Cofactors with ``target = sum a_j g_j`` exactly (unit inverted)."""
        unit, cofactors = self.lift(target)
        if unit == self.ring.one:
            return cofactors
        inv = invert_unit(unit, self.ring)
        truncation = ring_context(self.ring).truncation
        out = [a * inv for a in cofactors]
        if truncation is not None:
            out = [truncate(a, truncation) for a in out]
        return out


def lift(target: Sequence[PolyElement], generators: Sequence[Sequence[PolyElement]], ring: RingSpec):
    """Unit ``u`` and cofactors ``a`` with ``u * target = sum a_i g_i``; see ``Lifter.lift``."""
    return Lifter(generators, len(target), ring).lift(target)
