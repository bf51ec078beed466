import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgbounds.errors import OutOfRange
from lgbounds.inequalities import (
    REPORT_TOLERANCE,
    TWO_SQRT_TWO,
    BlgCorrelations,
    BoundReport,
    ComplexLgiCorrelations,
    LgiCorrelations,
    blg_parameter,
    complementarity_check,
    complex_lgi_bounds,
    evaluate_bipartite_schedule,
    evaluate_schedule,
    intermediate_bounds,
    lgi_parameter,
    theorem1_bound,
    theorem1_check,
    theorem4_bound,
    theorem4_check,
    tlm_check,
    tlm_single_check,
)
from lgbounds.operators import maximally_mixed
from lgbounds.schedule import MeasurementSchedule
from lgbounds.search import (
    RandomInstanceConfig,
    random_bipartite_instance,
    random_instance,
)
from lgbounds.spinmodel import spin_hamiltonian, spin_lgi_correlations, spin_observable

C = math.cos(math.pi / 4)
SATURATION = MeasurementSchedule(0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, omega=1.0)
SPIN_CORR = spin_lgi_correlations(SATURATION)

unit_floats = st.floats(-1.0, 1.0)


class TestLgiParameter:
    def test_saturation_schedule(self):
        assert lgi_parameter(SPIN_CORR) == pytest.approx(TWO_SQRT_TWO, abs=1e-12)

    def test_all_equal_times(self):
        c = LgiCorrelations(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
        assert lgi_parameter(c) == 2.0

    def test_all_zero(self):
        assert lgi_parameter(LgiCorrelations(0, 0, 0, 0, 0, 0)) == 0.0

    def test_out_of_range_field(self):
        with pytest.raises(OutOfRange):
            LgiCorrelations(1.5, 0, 0, 0, 0, 0)

    @given(unit_floats, unit_floats, unit_floats, unit_floats)
    @settings(max_examples=100, deadline=None)
    def test_never_exceeds_four(self, c12, c23, c34, c14):
        c = LgiCorrelations(c12, c23, c34, c14, 0.0, 0.0)
        assert 0.0 <= lgi_parameter(c) <= 4.0


class TestTheorem1Bound:
    def test_vanishing_auxiliaries(self):
        assert theorem1_bound(0.0, 0.0) == pytest.approx(TWO_SQRT_TWO)

    def test_perfect_auxiliary(self):
        assert theorem1_bound(1.0, 0.3) == pytest.approx(2.0)

    def test_mixed_point(self):
        # max of (cos pi/3)^2 = 1/4 and (cos pi/4)^2 = 1/2 is 1/2
        value = theorem1_bound(math.cos(math.pi / 3), math.cos(math.pi / 4))
        assert value == pytest.approx(2.613125929752753, abs=1e-12)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            theorem1_bound(1.1, 0.0)

    @given(unit_floats, unit_floats)
    @settings(max_examples=100, deadline=None)
    def test_range_and_ceiling(self, c13, c24):
        value = theorem1_bound(c13, c24)
        assert 2.0 - 1e-12 <= value <= TWO_SQRT_TWO + 1e-12

    def test_equality_only_at_zero(self):
        assert theorem1_bound(1e-13, 0.0) == TWO_SQRT_TWO
        assert theorem1_bound(1e-6, 0.0) < TWO_SQRT_TWO

    @given(a=st.floats(0, 1), b=st.floats(0, 1))
    @settings(max_examples=60, deadline=None)
    def test_monotone_in_larger_auxiliary(self, a, b):
        lo, hi = sorted((a, b))
        assert theorem1_bound(hi, 0.0) <= theorem1_bound(lo, 0.0) + 1e-12


class TestIntermediateBounds:
    def test_saturation_margins_vanish(self):
        reports = intermediate_bounds(SPIN_CORR)
        assert len(reports) == 4
        for report in reports:
            assert report.margin == pytest.approx(0.0, abs=1e-12)
            assert report.satisfied

    def test_all_zero_correlations(self):
        reports = intermediate_bounds(LgiCorrelations(0, 0, 0, 0, 0, 0))
        for report in reports:
            assert report.margin == pytest.approx(math.sqrt(2.0))

    @pytest.mark.parametrize("seed", range(25))
    def test_realizable_margins_nonnegative(self, seed):
        cfg = RandomInstanceConfig(dim=2, seed=seed)
        rho, h, q = random_instance(cfg, 0)
        outcome = evaluate_schedule(rho, q, h, MeasurementSchedule(0.1, 0.8, 1.9, 3.0))
        for report in outcome.intermediates:
            assert report.margin >= -1e-9


class TestTlmChecks:
    def test_single_pivot_saturation(self):
        report = tlm_single_check(C, C, 0.0)
        assert report.lhs == pytest.approx(0.5)
        assert report.rhs == pytest.approx(0.5)
        assert report.margin == pytest.approx(0.0, abs=1e-12)

    def test_single_pivot_uncorrelated(self):
        report = tlm_single_check(0.0, 0.0, 0.0)
        assert (report.lhs, report.rhs) == (0.0, 1.0)

    def test_single_pivot_perfect_chain(self):
        report = tlm_single_check(1.0, 1.0, 1.0)
        assert report.lhs == 0.0
        assert report.rhs == 0.0
        assert report.satisfied

    def test_two_pivot_saturation(self):
        # shared products 1/2 and -1/2; complements 1/2 each
        report = tlm_check(C, C, -C, C)
        assert report.lhs == pytest.approx(1.0)
        assert report.rhs == pytest.approx(1.0)
        assert report.margin == pytest.approx(0.0, abs=1e-12)

    def test_two_pivot_all_zero(self):
        report = tlm_check(0.0, 0.0, 0.0, 0.0)
        assert (report.lhs, report.rhs) == (0.0, 2.0)

    @pytest.mark.parametrize("seed", range(25))
    def test_realizable_margin_nonnegative(self, seed):
        cfg = RandomInstanceConfig(dim=3, seed=seed, observable_kind="general")
        rho, h, q = random_instance(cfg, 0)
        outcome = evaluate_schedule(rho, q, h, MeasurementSchedule(0.0, 1.1, 2.2, 3.3))
        assert outcome.theorem2.margin >= -1e-9


class TestComplementarity:
    def test_saturation_point_hits_one(self):
        report = complementarity_check(TWO_SQRT_TWO, 0.0, 0.0)
        assert report.lhs == pytest.approx(1.0)
        assert report.satisfied

    def test_zero_point(self):
        assert complementarity_check(0.0, 0.0, 0.0).lhs == 0.0

    def test_classical_corner(self):
        report = complementarity_check(2.0, 1.0, 1.0)
        assert report.lhs == pytest.approx(0.75)

    def test_rejects_large_parameter(self):
        with pytest.raises(OutOfRange):
            complementarity_check(4.5, 0.0, 0.0)

    @given(c13=unit_floats, c24=unit_floats)
    @settings(max_examples=60, deadline=None)
    def test_implied_by_the_ceiling(self, c13, c24):
        # any parameter value at the theorem1 ceiling stays inside the ball
        at_ceiling = theorem1_bound(c13, c24)
        assert complementarity_check(at_ceiling, c13, c24).lhs <= 1.0 + 1e-9


class TestBlg:
    def test_worked_example(self):
        c = BlgCorrelations(cA1A2=1.0, cA1B2=0.0, cB1B2=1.0, cB1A2=0.0, cA1B1=0.0, cA2B2=0.0)
        assert blg_parameter(c) == 2.0
        report = theorem4_check(c)
        assert report.rhs == pytest.approx(TWO_SQRT_TWO)
        assert report.satisfied

    def test_all_zero(self):
        c = BlgCorrelations(0, 0, 0, 0, 0, 0)
        assert blg_parameter(c) == 0.0

    def test_algebraic_ceiling(self):
        c = BlgCorrelations(1.0, 1.0, 1.0, -1.0, 0.0, 0.0)
        assert blg_parameter(c) == 4.0

    def test_bound_matches_temporal_form(self):
        assert theorem4_bound(0.0, 0.0) == theorem1_bound(0.0, 0.0)
        assert theorem4_bound(1.0, 0.0) == pytest.approx(2.0)

    @pytest.mark.parametrize("seed", range(20))
    def test_random_bipartite_margin(self, seed):
        cfg = RandomInstanceConfig(dim=4, seed=seed)
        rho, h, alice, bob = random_bipartite_instance(cfg, 0)
        outcome = evaluate_bipartite_schedule(rho, alice, bob, h, MeasurementSchedule(0.0, 0.9, 0.3, 1.7))
        assert outcome.theorem4.margin >= -1e-9
        assert outcome.blg <= TWO_SQRT_TWO + 1e-9


class TestComplexBounds:
    def test_real_inputs_reduce_to_main_checks(self):
        c = SPIN_CORR
        cx = ComplexLgiCorrelations(
            c12=c.c12, c23=c.c23, c34=c.c34, c14=c.c14, c13=c.c13, c24=c.c24,
            c21=c.c12, c32=c.c23, c43=c.c34,
        )
        met, (lgi_report, ball_report) = complex_lgi_bounds(cx)
        assert met
        assert lgi_report.lhs == pytest.approx(lgi_parameter(c), abs=1e-12)
        assert lgi_report.rhs == pytest.approx(theorem1_bound(c.c13, c.c24), abs=1e-12)
        assert ball_report.lhs == pytest.approx(complementarity_check(lgi_parameter(c), c.c13, c.c24).lhs, abs=1e-12)

    def test_second_clause(self):
        cx = ComplexLgiCorrelations(
            c12=0.4, c23=0.3 + 0.2j, c34=-0.1, c14=0.0, c13=0.2, c24=0.1,
            c21=0.4, c32=0.3 - 0.2j, c43=-0.1,
        )
        met, reports = complex_lgi_bounds(cx)
        assert met  # edge pairs symmetric even though the middle pair is not
        assert all(r.applicable for r in reports)

    def test_precondition_failure(self):
        cx = ComplexLgiCorrelations(
            c12=0.5j, c23=1j, c34=0.2j, c14=0.0, c13=0.0, c24=0.0,
            c21=-0.5j, c32=-1j, c43=-0.2j,
        )
        met, reports = complex_lgi_bounds(cx)
        assert not met
        for report in reports:
            assert not report.applicable
            assert report.satisfied is None

    def test_modulus_validation(self):
        with pytest.raises(OutOfRange):
            ComplexLgiCorrelations(1.2, 0, 0, 0, 0, 0, 0, 0, 0)


class TestBoundReport:
    @given(lhs=st.floats(-5, 5), rhs=st.floats(-5, 5))
    @settings(max_examples=100, deadline=None)
    def test_satisfied_iff_margin_clears_tolerance(self, lhs, rhs):
        report = BoundReport.evaluate("probe", lhs, rhs, {})
        assert report.margin == rhs - lhs
        assert report.satisfied == (report.margin >= -REPORT_TOLERANCE)

    def test_boundary_flag(self):
        assert BoundReport.evaluate("probe", 1.0, 1.0, {}).boundary
        assert not BoundReport.evaluate("probe", 0.0, 1.0, {}).boundary


class TestEvaluateSchedule:
    def test_saturation_point(self):
        outcome = evaluate_schedule(
            maximally_mixed(2), spin_observable(), spin_hamiltonian(1.0), SATURATION
        )
        assert outcome.lgi == pytest.approx(TWO_SQRT_TWO, abs=1e-9)
        assert outcome.theorem1.rhs == pytest.approx(TWO_SQRT_TWO, abs=1e-9)
        assert outcome.theorem1.satisfied
        assert outcome.theorem1.boundary

    def test_degenerate_schedule(self):
        times = MeasurementSchedule(0.0, 0.0, 0.0, 0.0)
        outcome = evaluate_schedule(
            maximally_mixed(2), spin_observable(), spin_hamiltonian(1.0), times
        )
        c = outcome.correlations
        assert (c.c12, c.c23, c.c34, c.c14) == pytest.approx((1.0, 1.0, 1.0, 1.0))
        assert outcome.lgi == pytest.approx(2.0)
        assert outcome.theorem1.rhs == pytest.approx(2.0)
        assert outcome.theorem1.boundary

    @pytest.mark.parametrize("dim", [2, 3, 4])
    @pytest.mark.parametrize("seed", range(8))
    def test_random_instances_satisfy_everything(self, dim, seed):
        cfg = RandomInstanceConfig(dim=dim, seed=seed, observable_kind="general")
        rho, h, q = random_instance(cfg, 0)
        outcome = evaluate_schedule(rho, q, h, MeasurementSchedule(0.2, 1.4, 2.9, 5.1))
        for report in outcome.reports:
            if report.applicable:
                assert report.satisfied, report
        assert outcome.min_eigenvalue >= -1e-9

    def test_report_collection_shape(self):
        outcome = evaluate_schedule(
            maximally_mixed(2), spin_observable(), spin_hamiltonian(1.0), SATURATION
        )
        names = [r.name for r in outcome.reports]
        assert names == [
            "theorem1",
            "intermediate_c12_c23",
            "intermediate_c34_c14",
            "intermediate_c23_c34",
            "intermediate_c12_c14",
            "tlm_single_q2",
            "tlm_single_q4",
            "theorem2",
            "theorem3",
            "appendix_lgi",
            "appendix_complementarity",
            "correlation_matrix_psd",
        ]
