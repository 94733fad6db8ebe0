from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF, Mul, Poly, Symbol, div, groebner, symbols
from sympy.polys.matrices import DomainMatrix

from algebra.errors import InfiniteLengthError, LiftError, NotArtinianError, NotHomogeneousError
from algebra.polycore import parse_poly, parse_ring
from algebra.stdbasis import (
    Ideal,
    StdBasis,
    colon_ideal,
    contained_in_power,
    intersect,
    invert_unit,
    is_gorenstein_artinian,
    krull_dim,
    lift,
    maximal_ideal,
    mingens,
    normal_form,
    socle,
    syzygies,
    vspace_dim,
)
from algebra.stdbasis.invariants import socle_dim


PLANE = parse_ring("GF(32003)[x,y] local")
X, Y = symbols("x y")

exponents = st.tuples(st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4))
forms = st.integers(min_value=1, max_value=3).flatmap(
    lambda d: st.lists(st.integers(min_value=-3, max_value=3), min_size=d + 1, max_size=d + 1).map(
        lambda cs: sum((c * X ** (len(cs) - 1 - i) * Y**i for i, c in enumerate(cs)), 0 * X)
    )
)


def ideal(ring, *texts):
    return Ideal.of(ring, [parse_poly(t, ring) for t in texts])


def monomial(ring, exps):
    x, y = ring.gens
    return x ** exps[0] * y ** exps[1]


def graded_mingens_count(polys, variables, modulus):
    """Minimal generator count of a homogeneous ideal, by ranks degree by degree."""
    gens = [Poly(p, *variables, modulus=modulus) for p in polys]
    gens = [g for g in gens if not g.is_zero]
    domain = GF(modulus)
    count = 0
    for d in sorted({g.total_degree() for g in gens}):
        lower = []
        for g in gens:
            shift = d - g.total_degree()
            if shift <= 0:
                continue
            for combo in combinations_with_replacement(variables, shift):
                lower.append(g * Poly(Mul(*combo), *variables, modulus=modulus))
        current = [g for g in gens if g.total_degree() == d]
        count += _rank(lower + current, domain) - _rank(lower, domain)
    return count


def _rank(polys, domain):
    if not polys:
        return 0
    monomials = sorted({m for p in polys for m in p.as_dict()})
    rows = [[domain.convert(int(p.as_dict().get(m, 0))) for m in monomials] for p in polys]
    return DomainMatrix(rows, (len(rows), len(monomials)), domain).rank()


def graded_colon(ideal_gens, f, variables, modulus):
    """``(ideal_gens) : f`` for homogeneous input, by elimination of an auxiliary variable."""
    t = Symbol("t")
    system = [t * g for g in ideal_gens] + [(1 - t) * f]
    basis = groebner(system, t, *variables, order="lex", modulus=modulus)
    meet = [g for g in basis.exprs if not g.has(t)]
    return [div(g, f, *variables, modulus=modulus)[0] for g in meet]


class TestMembership:
    def test_units_are_invertible_in_the_local_ring(self, plane):
        assert ideal(plane, "x + x^2").contains(parse_poly("x", plane))

    def test_units_are_not_invertible_globally(self, plane_global):
        assert not ideal(plane_global, "x + x^2").contains(parse_poly("x", plane_global))

    def test_unit_ideal(self, plane):
        assert ideal(plane, "1 + x*y").is_unit
        assert not ideal(plane, "x*y").is_unit

    def test_quotient_relations_are_zero(self, squares):
        assert Ideal.of(squares, []).contains(parse_poly("x^2 + x*y^2", squares))
        assert not Ideal.of(squares, []).contains(parse_poly("x*y", squares))

    def test_normal_form_vanishes_on_members(self, plane):
        I = ideal(plane, "x^2", "y^3")
        assert not normal_form(parse_poly("x^2*y + y^4", plane), I)
        assert normal_form(parse_poly("x*y", plane), I)

    def test_basis_certifies(self, plane):
        basis = StdBasis.compute([(parse_poly("x^2 + y^3", plane),), (parse_poly("x*y", plane),)], plane, 1)
        assert basis.certify()

    def test_colength(self, plane):
        assert ideal(plane, "x^2", "y^2").basis.colength() == 4
        assert ideal(plane, "x^2").basis.colength() is None


class TestIdealOperations:
    def test_colon(self, plane):
        assert colon_ideal(ideal(plane, "x^2"), ideal(plane, "x")).equals(ideal(plane, "x"))

    def test_colon_by_unit_is_identity(self, plane):
        I = ideal(plane, "x^2", "x*y")
        assert colon_ideal(I, ideal(plane, "1 + x")).equals(I)

    def test_intersection(self, plane):
        assert intersect(ideal(plane, "x"), ideal(plane, "y")).equals(ideal(plane, "x*y"))

    def test_sum_and_product(self, plane):
        I, J = ideal(plane, "x"), ideal(plane, "y")
        assert (I + J).equals(maximal_ideal(plane))
        assert (I * J).equals(ideal(plane, "x*y"))

    def test_mingens_drops_redundant_generators(self, plane):
        assert len(mingens(ideal(plane, "x", "x^2", "x*y"))) == 1

    def test_mingens_local_non_homogeneous(self, plane):
        gens = mingens(ideal(plane, "x + y^2", "x^2 + x*y^2", "y^3"))
        assert len(gens) == 2

    def test_mingens_needs_local_or_graded_input(self, plane_global):
        with pytest.raises(NotHomogeneousError):
            mingens(ideal(plane_global, "x + y^2", "x"))

    @settings(deadline=None)
    @given(st.lists(exponents, min_size=1, max_size=4), exponents)
    def test_colon_of_monomial_ideals(self, gens, divisor):
        I = Ideal.of(PLANE, [monomial(PLANE, e) for e in gens])
        expected = Ideal.of(PLANE, [monomial(PLANE, [max(a - b, 0) for a, b in zip(e, divisor)]) for e in gens])
        assert colon_ideal(I, Ideal.of(PLANE, [monomial(PLANE, divisor)])).equals(expected)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(forms, min_size=1, max_size=4))
    def test_mingens_counts_generators_modulo_the_maximal_ideal(self, polys):
        gens = [PLANE.poly_ring.from_expr(p) for p in polys if p != 0]
        if not gens:
            return
        expected = graded_mingens_count([g.as_expr() for g in gens], (X, Y), 32003)
        assert len(mingens(Ideal.of(PLANE, gens))) == expected

    def test_contained_in_power(self, plane):
        assert contained_in_power(ideal(plane, "x^3", "x*y^2"), 3)
        assert not contained_in_power(ideal(plane, "x^3", "x*y"), 3)


class TestInvariants:
    def test_artinian_complete_intersection(self, squares):
        assert krull_dim(squares) == 0
        assert vspace_dim(squares) == 4
        assert socle(squares).equals(ideal(squares, "x*y"))
        assert is_gorenstein_artinian(squares)

    def test_non_gorenstein(self):
        ring = parse_ring("GF(32003)[x,y] local / (x^2, x*y, y^2)")
        assert socle_dim(ring) == 2
        assert not is_gorenstein_artinian(ring)

    def test_positive_dimension(self, quadric_surface, plane):
        assert krull_dim(quadric_surface) == 2
        assert krull_dim(plane) == 2
        with pytest.raises(NotArtinianError):
            socle(plane)
        with pytest.raises(InfiniteLengthError):
            vspace_dim(plane)


class TestSyzygiesAndLifts:
    def test_koszul_syzygy(self, plane):
        x, y = plane.gens
        relations = syzygies([(x,), (y,)], 1, plane)
        assert relations
        assert all(not a * x + b * y for a, b in relations)
        assert Ideal.of(plane, [a for a, _ in relations]).equals(Ideal.of(plane, [y]))

    def test_syzygies_modulo_quotient(self, cubic):
        x = cubic.gens[0]
        relations = syzygies([(x,)], 1, cubic)
        assert relations
        zero = Ideal.of(cubic, [])
        assert all(zero.contains(r[0] * x) for r in relations)
        assert Ideal.of(cubic, [r[0] for r in relations]).equals(Ideal.of(cubic, [x**2]))

    def test_syzygies_of_relations_at_truncation_degree(self):
        ring = parse_ring("GF(32003)[x,y] local / (x^2, x*y, y^2)")
        x, y = ring.gens
        relations = syzygies([(x,)], 1, ring)
        assert Ideal.of(ring, [r[0] for r in relations]).equals(maximal_ideal(ring))

    def test_socle_of_cubic_hypersurface(self, cubic):
        assert socle(cubic).equals(ideal(cubic, "x^2"))
        assert is_gorenstein_artinian(cubic)

    def test_lift_with_unit(self, plane):
        x, y = plane.gens
        unit, cofactors = lift((x,), [(x + x * y,)], plane)
        assert unit.const()
        assert not unit * x - cofactors[0] * (x + x * y)

    def test_lift_outside_span(self, plane):
        x, y = plane.gens
        with pytest.raises(LiftError):
            lift((y,), [(x,)], plane)

    def test_invert_unit_in_artinian_ring(self, cubic):
        x = cubic.gens[0]
        inv = invert_unit(1 + x, cubic)
        assert inv == 1 - x + x**2
        assert Ideal.of(cubic, []).contains(inv * (1 + x) - 1)

    def test_invert_non_unit(self, cubic):
        with pytest.raises(LiftError):
            invert_unit(cubic.gens[0], cubic)


@pytest.mark.slow
class TestCounterexampleIdeal:
    @pytest.fixture(scope="class")
    def generators(self):
        R = parse_ring("GF(32003)[x,y,z] local / (x^2 + y^2 + z^2)")
        I = colon_ideal(ideal(R, "x^7", "y^7"), ideal(R, "x*y + y*z + x*z"))
        return R, mingens(I)

    def test_generator_count_matches_graded_elimination(self, generators):
        R, gens = generators
        x, y, z = symbols("x y z")
        u = x**2 + y**2 + z**2
        colon = graded_colon([x**7, y**7, u], x * y + y * z + x * z, (x, y, z), 32003)
        # u is a minimal generator of the colon in the polynomial ring
        assert len(gens) == graded_mingens_count(colon, (x, y, z), 32003) - 1

    def test_colon_contains_the_original_ideal(self, generators):
        R, gens = generators
        assert Ideal.of(R, gens).contains_ideal(ideal(R, "x^7", "y^7"))

    @pytest.mark.xfail(reason="the published count of twelve is not reproduced by the local computation", strict=False)
    def test_twelve_generators_in_sixth_power(self, generators):
        R, gens = generators
        assert len(gens) == 12
        assert contained_in_power(Ideal.of(R, gens), 6)
