import pytest
from hypothesis import given
from hypothesis import strategies as st

from algebra.errors import (
    NonLiteralDivisionError,
    PolySyntaxError,
    PreconditionError,
    RingMismatchError,
    UnknownVariableError,
)
from algebra.polycore import (
    Comparison,
    FieldSpec,
    OrderKind,
    RingSpec,
    compare_monomials,
    format_poly,
    lowest_degree,
    parse_poly,
    parse_ring,
    poly_arith,
    truncate,
)

SMALL = RingSpec.create(FieldSpec.prime(101), ("x", "y", "z"), OrderKind.LOCAL)
RATIONAL = RingSpec.create(FieldSpec.rationals(), ("x", "y"), OrderKind.GREVLEX)
LARGE_PRIME = 2**31 - 1

big = st.integers(min_value=-(10**40), max_value=10**40)
monomials = st.tuples(*[st.integers(min_value=0, max_value=4)] * 3)
polys = st.dictionaries(monomials, st.integers(min_value=1, max_value=100), max_size=6).map(
    lambda d: SMALL.poly_ring.from_dict({m: SMALL.field.domain(c) for m, c in d.items()})
)


class TestFields:
    def test_rejects_composite_characteristic(self):
        with pytest.raises(PreconditionError):
            FieldSpec.prime(4)

    def test_rejects_large_characteristic(self):
        with pytest.raises(PreconditionError):
            FieldSpec.prime(2**31 + 11)

    def test_prime_field_prints_canonical_representatives(self):
        ring = parse_ring("GF(7)[x]")
        assert format_poly(parse_poly("-1", ring), ring) == "6"
        assert format_poly(parse_poly("-x", ring), ring) == "6*x"

    @given(big, big, big)
    def test_prime_field_arithmetic_matches_integers(self, a, b, c):
        field = FieldSpec.prime(LARGE_PRIME)
        ring = RingSpec.create(field, ("x",), OrderKind.LOCAL)
        x = ring.gens[0]
        f = poly_arith("add", poly_arith("scale", x, a, ring), poly_arith("scale", ring.one, b, ring), ring)
        g = poly_arith("sub", poly_arith("mul", f, f, ring), poly_arith("scale", x, c, ring), ring)
        coefficients = {m[0]: field.canonical_int(v) for m, v in g.terms()}
        assert coefficients.get(2, 0) == (a * a) % LARGE_PRIME
        assert coefficients.get(1, 0) == (2 * a * b - c) % LARGE_PRIME
        assert coefficients.get(0, 0) == (b * b) % LARGE_PRIME

    def test_rational_coefficients(self):
        f = parse_poly("3/2*x - 1/2", RATIONAL)
        assert format_poly(f, RATIONAL) == "3/2*x - 1/2"


class TestOrders:
    def test_local_order_puts_one_on_top(self):
        assert compare_monomials((0, 0), (1, 0), OrderKind.LOCAL) is Comparison.GT
        assert compare_monomials((0, 1), (2, 0), OrderKind.LOCAL) is Comparison.GT

    def test_grevlex_is_a_well_order(self):
        assert compare_monomials((0, 0), (1, 0), OrderKind.GREVLEX) is Comparison.LT
        assert compare_monomials((2, 0), (1, 1), OrderKind.GREVLEX) is Comparison.GT

    def test_equal_monomials(self):
        assert compare_monomials((1, 2), (1, 2), OrderKind.LOCAL) is Comparison.EQ

    def test_order_aliases(self):
        assert OrderKind.parse("ds") is OrderKind.LOCAL
        assert OrderKind.parse("dp") is OrderKind.GREVLEX
        with pytest.raises(PreconditionError):
            OrderKind.parse("lex")

    @given(monomials, monomials, monomials)
    def test_local_order_is_multiplicative(self, a, b, c):
        cmp = compare_monomials(a, b, OrderKind.LOCAL)
        shifted = compare_monomials(
            tuple(x + z for x, z in zip(a, c)), tuple(y + z for y, z in zip(b, c)), OrderKind.LOCAL
        )
        assert cmp is shifted


class TestParser:
    def test_expands_powers(self, plane):
        f = parse_poly("(x+y)^2", plane)
        x, y = plane.gens
        assert f == x**2 + 2 * x * y + y**2

    def test_unknown_variable(self, plane):
        with pytest.raises(UnknownVariableError):
            parse_poly("x + w", plane)

    def test_division_by_polynomial_is_rejected(self, plane):
        with pytest.raises(NonLiteralDivisionError):
            parse_poly("x / y", plane)

    def test_syntax_error_reports_position(self, plane):
        with pytest.raises(PolySyntaxError) as info:
            parse_poly("x + * y", plane)
        assert info.value.position is not None

    def test_local_printing_starts_at_lowest_degree(self, plane):
        f = parse_poly("x^3 + x", plane)
        assert format_poly(f, plane) == "x + x^3"

    def test_ring_declaration(self):
        ring = parse_ring("QQ[a,b] grevlex / (a^2 - b)")
        assert ring.vars == ("a", "b")
        assert ring.order is OrderKind.GREVLEX
        assert ring.characteristic == 0
        assert len(ring.quotient) == 1

    def test_ring_declaration_default_field(self):
        ring = parse_ring("k[x]", default_characteristic=101)
        assert ring.characteristic == 101
        assert ring.order is OrderKind.LOCAL

    @given(polys)
    def test_print_then_parse_is_identity(self, f):
        assert parse_poly(format_poly(f, SMALL), SMALL) == f


class TestRings:
    def test_unit_quotient_is_rejected_locally(self, plane):
        with pytest.raises(PreconditionError):
            plane.quotient_by(["1 + x"])

    def test_quotient_keeps_ambient(self, squares):
        assert squares.ambient().quotient == ()
        assert squares.same_ambient(squares.ambient())

    def test_with_order_carries_quotient(self, squares):
        other = squares.with_order(OrderKind.GREVLEX)
        assert other.order is OrderKind.GREVLEX
        assert len(other.quotient) == 2

    def test_arith_rejects_foreign_operands(self, plane):
        other = parse_ring("GF(101)[x,y]")
        with pytest.raises(RingMismatchError):
            poly_arith("add", plane.gens[0], other.gens[0], plane)

    def test_scale(self, plane):
        x = plane.gens[0]
        assert poly_arith("scale", x, 3, plane) == 3 * x

    @given(polys, polys, polys)
    def test_distributive(self, f, g, h):
        lhs = poly_arith("mul", poly_arith("add", f, g, SMALL), h, SMALL)
        rhs = poly_arith("add", poly_arith("mul", f, h, SMALL), poly_arith("mul", g, h, SMALL), SMALL)
        assert lhs == rhs

    def test_truncate_and_order(self, plane):
        f = parse_poly("x^2 + x*y^3 + y^5", plane)
        assert truncate(f, 4) == parse_poly("x^2", plane)
        assert lowest_degree(f) == 2
        assert lowest_degree(plane.zero) == -1
