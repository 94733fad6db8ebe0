import pytest

from algebra.errors import AnnihilatorError, PreconditionError, UnstableModuleError
from algebra.homcore import BettiTable, PresentedModule, fingerprint
from algebra.linkage import (
    HARNESSES,
    AgreementReport,
    CxClass,
    VerdictMode,
    certify_mcm,
    classify_betti,
    complexity,
    complexity_transfer_check,
    cone_report,
    eisenbud_operators,
    ext_tor_agreement,
    ferrand_cone,
    horizontal_link,
    link_chain,
    link_ideal,
    link_over_ambient,
    link_via,
    mcm_approx,
    run_all,
    self_ext_agreement,
    vanishing_verdict,
)
from algebra.linkage.harness import _missing_upgrade
from algebra.linkage.links import chain_fingerprints
from algebra.linkage.verdicts import TransferRegime, is_complete_intersection
from algebra.polycore import parse_poly, parse_ring
from algebra.stdbasis import Ideal


def ideal(ring, *texts):
    return Ideal.of(ring, [parse_poly(t, ring) for t in texts])


def cyclic(ring, *texts):
    return PresentedModule.cyclic(ideal(ring, *texts))


class TestHorizontalLinkage:
    def test_free_modules_cannot_be_linked(self, cubic):
        with pytest.raises(UnstableModuleError):
            horizontal_link(PresentedModule.free(cubic, 1))

    def test_link_of_cyclic_module(self, cubic):
        assert fingerprint(horizontal_link(cyclic(cubic, "x"))) == fingerprint(cyclic(cubic, "x^2"))

    @pytest.mark.parametrize("texts", [("x",), ("x", "y"), ("x*y",), ("x + y",)])
    def test_linking_twice_returns(self, squares, texts):
        M = cyclic(squares, *texts).minimal_presentation()
        assert fingerprint(horizontal_link(horizontal_link(M))) == fingerprint(M)


class TestLinkVia:
    def test_hypersurface_section(self, plane):
        datum = link_via(cyclic(plane, "x"), ideal(plane, "x*y"))
        assert datum.g == 1
        assert fingerprint(datum.N_over_A) == fingerprint(cyclic(plane, "y"))

    def test_ideal_must_annihilate(self, plane):
        with pytest.raises(AnnihilatorError):
            link_via(cyclic(plane, "x"), ideal(plane, "y"))

    def test_chain_returns_after_two_steps(self, plane):
        M = cyclic(plane, "x")
        q = ideal(plane, "x*y")
        data = link_chain(M, [q, q])
        prints = chain_fingerprints(data)
        assert prints[0] == fingerprint(cyclic(plane, "y").over(data[0].B))
        assert prints[1] == fingerprint(M.over(data[1].B))

    def test_ideal_linkage(self, plane):
        link = link_ideal(ideal(plane, "x"), ideal(plane, "x*y"))
        assert link.linked.equals(ideal(plane, "y"))
        assert link.double_colon_returns

    def test_ideal_linkage_needs_containment(self, plane):
        with pytest.raises(PreconditionError):
            link_ideal(ideal(plane, "x"), ideal(plane, "y^2"))


class TestCone:
    def test_cone_is_concentrated_in_codimension(self, plane):
        M, q = cyclic(plane, "x"), ideal(plane, "x*y")
        cone = ferrand_cone(M, q, 3)
        report = cone_report(cone, link=link_over_ambient(M, q))
        assert report.g == 1
        assert report.squares_to_zero
        assert report.concentrated
        assert report.matches_link

    def test_cone_over_artinian_ring(self, cubic):
        M = cyclic(cubic, "x")
        cone = ferrand_cone(M, Ideal.of(cubic, []), 3)
        report = cone_report(cone, link=link_over_ambient(M, Ideal.of(cubic, [])))
        assert report.g == 0
        assert report.concentrated
        assert fingerprint(cone.cohomology(0)) == fingerprint(cyclic(cubic, "x^2"))

    def test_cone_rejects_non_annihilating_ideal(self, plane):
        with pytest.raises(PreconditionError):
            ferrand_cone(cyclic(plane, "x"), ideal(plane, "y"), 2)

    def test_mcm_approximation(self, plane):
        cone = ferrand_cone(cyclic(plane, "x"), ideal(plane, "x*y"), 3)
        certificate = certify_mcm(mcm_approx(cone), 4)
        assert certificate.y_finite_projdim
        assert all(certificate.x_ext_vanishing.values())
        assert certificate.passed


class TestComplexity:
    def test_free_module(self, cubic):
        estimate = complexity(PresentedModule.free(cubic, 1), 8)
        assert estimate.cx_class is CxClass.ZERO
        assert estimate.value == 0

    def test_hypersurface(self, cubic):
        estimate = complexity(PresentedModule.residue_field(cubic), 8)
        assert estimate.cx_class is CxClass.ONE
        assert estimate.betti.betti == [1] * 9

    def test_codimension_two(self, squares):
        estimate = complexity(PresentedModule.residue_field(squares), 8)
        assert estimate.cx_class is CxClass.TWO
        assert estimate.betti.betti == [i + 1 for i in range(9)]

    def test_bound_too_small(self, cubic):
        with pytest.raises(PreconditionError):
            complexity(PresentedModule.residue_field(cubic), 5)

    def test_exponential_growth(self):
        table = BettiTable(betti=[2**i for i in range(9)], bound=8, terminated=False)
        assert classify_betti(table).cx_class is CxClass.AT_LEAST_THREE

    def test_erratic_growth(self):
        table = BettiTable(betti=[1, 1, 1, 2, 1, 3, 1, 4, 1], bound=8, terminated=False)
        assert classify_betti(table).cx_class is CxClass.INCONCLUSIVE


class TestOperators:
    def test_hypersurface_operator_is_periodic(self, cubic):
        ops = eisenbud_operators(PresentedModule.residue_field(cubic), 6)
        assert ops.count == 1
        assert ops.identity_holds
        assert ops.chain_maps
        assert ops.isomorphic_on(0, range(2, 7))

    def test_two_operators(self, squares):
        ops = eisenbud_operators(PresentedModule.residue_field(squares), 6)
        assert ops.count == 2
        assert ops.identity_holds
        assert ops.chain_maps

    def test_needs_relations(self, plane):
        with pytest.raises(PreconditionError):
            eisenbud_operators(PresentedModule.residue_field(plane), 6)


class TestVerdicts:
    def test_residue_field_never_vanishes(self, cubic):
        k = PresentedModule.residue_field(cubic)
        verdict = vanishing_verdict(k, k, VerdictMode.EXT_FROM, (2, 5))
        assert verdict.values == {2: 1, 3: 1, 4: 1, 5: 1}
        assert not verdict.vanishes_on_window
        assert verdict.periodic_upgrade

    def test_free_module_has_no_higher_ext(self, cubic):
        free, k = PresentedModule.free(cubic, 1), PresentedModule.residue_field(cubic)
        verdict = vanishing_verdict(free, k, "ext_from", (1, 4))
        assert verdict.vanishes_on_window

    def test_ext_into_swaps_arguments(self, cubic):
        free, k = PresentedModule.free(cubic, 1), PresentedModule.residue_field(cubic)
        verdict = vanishing_verdict(k, free, "ext_into", (1, 3))
        assert verdict.vanishes_on_window

    def test_empty_window(self, cubic):
        k = PresentedModule.residue_field(cubic)
        with pytest.raises(PreconditionError):
            vanishing_verdict(k, k, "tor", (4, 2))

    def test_ext_tor_agreement(self, cubic):
        datum = link_via(cyclic(cubic, "x"), Ideal.of(cubic, []))
        report = ext_tor_agreement(PresentedModule.residue_field(cubic), datum, bound=5)
        assert report.agree

    def test_self_ext_agreement(self, squares):
        datum = link_via(cyclic(squares, "x"), Ideal.of(squares, []))
        assert self_ext_agreement(datum, bound=5).agree


class TestTransfer:
    def test_complete_intersection_check(self, squares):
        assert is_complete_intersection(squares)
        assert not is_complete_intersection(parse_ring("GF(32003)[x,y] local / (x^2, x*y, y^2)"))

    def test_gorenstein_regime(self, cubic):
        datum = link_via(cyclic(cubic, "x"), Ideal.of(cubic, []))
        report = complexity_transfer_check(datum, 8)
        assert report.regime is TransferRegime.GORENSTEIN
        assert report.matches

    def test_rejects_non_complete_intersection(self):
        ring = parse_ring("GF(32003)[x,y] local / (x^2, x*y, y^2)")
        datum = link_via(PresentedModule.residue_field(ring), Ideal.of(ring, []))
        with pytest.raises(PreconditionError):
            complexity_transfer_check(datum, 8)


class TestHarnessChecks:
    def test_matlis_duality_is_registered(self):
        report = HARNESSES["matlis-duality"](3, seed=1)
        assert report.name == "matlis-duality"
        assert report.ok, report.failures

    def test_cone_harness_certifies_the_approximation(self):
        report = HARNESSES["cone"](2, seed=4)
        assert report.ok, report.failures

    def test_periodicity_from_degree_two(self):
        assert HARNESSES["periodicity"](3, seed=2).ok

    def test_hypersurface_verdicts_need_the_upgrade(self, cubic):
        k = PresentedModule.residue_field(cubic)
        verdict = vanishing_verdict(k, k, VerdictMode.EXT_FROM, (2, 8))
        assert _missing_upgrade(cubic, AgreementReport(left=verdict, right=verdict)) is None
        stale = verdict.model_copy(update={"periodic_upgrade": False})
        assert _missing_upgrade(cubic, AgreementReport(left=verdict, right=stale))


@pytest.mark.slow
class TestHarnesses:
    def test_all_harnesses_pass(self):
        for report in run_all(5, seed=7):
            assert report.ok, report.failures

    def test_reproducible_with_seed(self):
        first = HARNESSES["double-link"](4, seed=3)
        second = HARNESSES["double-link"](4, seed=3)
        assert first == second

    def test_matlis_duality_acceptance_run(self):
        report = HARNESSES["matlis-duality"](50, seed=7)
        assert report.passed == 50, report.failures
