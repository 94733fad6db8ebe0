import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from algebra.errors import InfiniteLengthError, LengthMismatchError, NotCohenMacaulayError, NotGorensteinError
from algebra.homcore import (
    FreeComplex,
    FreeModuleMap,
    PresentedModule,
    annihilator,
    artinian_dual,
    codim_profile,
    dagger,
    ext,
    ext_length,
    fingerprint,
    hom,
    minimize,
    resolve,
    syzygy_module,
    tensor,
    tor,
    tor_length,
    tor_vanishes,
    trace_and_stability,
    transpose_module,
)
from algebra.polycore import parse_poly, parse_ring
from algebra.stdbasis import Ideal

SQUARES = parse_ring("GF(32003)[x,y] local / (x^2, y^2)")
ENTRIES = ["0", "x", "y", "x*y", "x + y"]


def cyclic(ring, *texts):
    return PresentedModule.cyclic(Ideal.of(ring, [parse_poly(t, ring) for t in texts]))


class TestPresentations:
    def test_unit_entries_cancel(self, plane):
        M = PresentedModule.from_matrix(plane, [["1", "0"], ["0", "x"]])
        pres = M.minimal_presentation()
        assert pres.rank == 1
        assert pres.presentation.entries_in_maximal_ideal()
        assert fingerprint(pres) == fingerprint(cyclic(plane, "x"))

    def test_redundant_relations_are_dropped(self, plane):
        M = cyclic(plane, "x", "x^2", "x*y")
        assert len(M.minimal_presentation().relations) == 1

    def test_ragged_matrix(self, plane):
        with pytest.raises(LengthMismatchError):
            FreeModuleMap.from_rows(plane, [["x", "y"], ["x"]])

    def test_zero_module(self, plane):
        assert cyclic(plane, "1 + x").is_zero()
        assert cyclic(plane, "1 + x").num_generators() == 0

    def test_length(self, plane):
        assert cyclic(plane, "x^2", "y^2").length() == 4
        with pytest.raises(InfiniteLengthError):
            cyclic(plane, "x").length()

    def test_filtration(self, plane):
        assert cyclic(plane, "x", "y").filtration_dims(3) == [1, 1, 1]
        assert cyclic(plane, "x").filtration_dims(3) == [1, 2, 3]

    def test_annihilated_by(self, squares):
        M = cyclic(squares, "x")
        assert M.annihilated_by(parse_poly("x", squares))
        assert not M.annihilated_by(parse_poly("y", squares))


class TestResolutions:
    def test_free_module(self, squares):
        res = resolve(PresentedModule.free(squares, 2), 3)
        assert res.betti().betti == [2, 0, 0, 0]
        assert res.terminated
        assert res.length() == 0

    def test_residue_field_over_hypersurface(self, cubic):
        table = resolve(PresentedModule.residue_field(cubic), 4).betti()
        assert table.betti == [1, 1, 1, 1, 1]
        assert not table.terminated

    def test_residue_field_over_complete_intersection(self, squares):
        table = resolve(PresentedModule.residue_field(squares), 8).betti()
        assert table.betti == [1, 2, 3, 4, 5, 6, 7, 8, 9]

    def test_koszul_complex(self, plane):
        res = resolve(PresentedModule.residue_field(plane), 4)
        assert res.betti().betti == [1, 2, 1, 0, 0]
        assert res.terminated
        assert res.length() == 2

    def test_resolution_is_minimal_and_exact(self, squares):
        res = resolve(cyclic(squares, "x", "y^2"), 4)
        assert res.complex.squares_to_zero()
        assert res.complex.is_minimal()

    def test_cached_resolution_extends(self, cubic):
        M = PresentedModule.residue_field(cubic)
        short = resolve(M, 2)
        longer = resolve(M, 5)
        assert short.betti().betti == [1, 1, 1]
        assert longer.betti().betti == [1, 1, 1, 1, 1, 1]

    def test_minimize_cancels_split_complex(self, plane):
        x = plane.gens[0]
        d1 = FreeModuleMap.from_rows(plane, [[1, x]])
        d2 = FreeModuleMap.from_columns(plane, 2, [(x, -1)])
        cx = FreeComplex(plane, {0: 1, 1: 2, 2: 1}, {1: d1, 2: d2})
        assert cx.squares_to_zero()
        small = minimize(cx)
        assert small.betti() == [0, 0, 0]
        assert small.is_minimal()

    def test_homology_of_multiplication(self, plane):
        x = plane.gens[0]
        cx = FreeComplex(plane, {0: 1, 1: 1}, {1: FreeModuleMap.from_rows(plane, [[x]])})
        assert cx.homology(1).is_zero()
        assert fingerprint(cx.homology(0)) == fingerprint(cyclic(plane, "x"))


class TestFunctors:
    def test_transpose_of_cyclic(self, cubic):
        M = cyclic(cubic, "x")
        assert fingerprint(transpose_module(M)) == fingerprint(M)

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.lists(st.sampled_from(ENTRIES), min_size=2, max_size=2), min_size=1, max_size=2))
    def test_transpose_twice_returns_stable_module(self, rows):
        M = PresentedModule.from_matrix(SQUARES, rows).minimal_presentation()
        assume(M.rank and trace_and_stability(M).stable)
        assert fingerprint(transpose_module(transpose_module(M))) == fingerprint(M)

    def test_syzygy(self, cubic):
        assert fingerprint(syzygy_module(cyclic(cubic, "x"))) == fingerprint(cyclic(cubic, "x^2"))
        assert syzygy_module(PresentedModule.free(cubic, 1)).is_zero()

    def test_tensor(self, plane):
        assert tensor(cyclic(plane, "x"), cyclic(plane, "y")).length() == 1
        k = PresentedModule.residue_field(plane)
        assert tensor(k, k).length() == 1

    def test_ext_of_residue_field(self, cubic):
        k = PresentedModule.residue_field(cubic)
        for i in range(4):
            assert ext(k, k, i).length() == 1
            assert ext_length(k, k, i) == 1

    def test_hom(self, squares):
        k = PresentedModule.residue_field(squares)
        assert hom(k, PresentedModule.free(squares, 1)).length() == 1

    def test_tor_lengths_follow_betti_numbers(self, squares):
        k = PresentedModule.residue_field(squares)
        assert [tor_length(k, k, i) for i in range(5)] == [1, 2, 3, 4, 5]

    def test_tor_agrees_with_its_length(self, squares):
        M = cyclic(squares, "x")
        k = PresentedModule.residue_field(squares)
        for i in range(3):
            assert tor(M, k, i).length() == tor_length(M, k, i)

    def test_regular_sequence_has_no_tor(self, plane):
        assert tor_vanishes(cyclic(plane, "x"), cyclic(plane, "y"), 1)
        assert not tor_vanishes(cyclic(plane, "x"), cyclic(plane, "x"), 1)


class TestInvariants:
    def test_annihilator_of_cyclic(self, plane):
        expected = Ideal.of(plane, [parse_poly("x^2", plane), parse_poly("y", plane)])
        assert annihilator(cyclic(plane, "x^2", "y")).equals(expected)

    def test_stability(self, cubic):
        assert not trace_and_stability(PresentedModule.free(cubic, 1)).stable
        report = trace_and_stability(PresentedModule.residue_field(cubic))
        assert report.stable
        assert not report.trace.is_unit

    def test_codimension(self, plane):
        profile = codim_profile(cyclic(plane, "x"))
        assert profile.g == 1
        assert profile.cohen_macaulay
        assert codim_profile(PresentedModule.residue_field(plane)).g == 2
        assert codim_profile(PresentedModule.free(plane, 1)).g == 0

    def test_dagger_of_hypersurface_quotient(self, plane):
        M = cyclic(plane, "x")
        assert fingerprint(dagger(M)) == fingerprint(M)

    def test_dagger_needs_cohen_macaulay(self, plane):
        with pytest.raises(NotCohenMacaulayError):
            dagger(cyclic(plane, "x^2", "x*y"))

    def test_artinian_dual(self, squares):
        k = PresentedModule.residue_field(squares)
        assert artinian_dual(k).length() == 1
        assert artinian_dual(PresentedModule.free(squares, 1)).length() == 4

    def test_artinian_dual_needs_gorenstein(self, plane):
        ring = parse_ring("GF(32003)[x,y] local / (x^2, x*y, y^2)")
        with pytest.raises(NotGorensteinError):
            artinian_dual(PresentedModule.residue_field(ring))
