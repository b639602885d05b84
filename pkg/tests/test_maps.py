import numpy as np
import pytest

from framelab import (
    Classification,
    GridMismatchError,
    NotAFrameError,
    PreconditionError,
    RawSamples,
    ShapeMismatchError,
    TestFunction,
    Trigonometric,
    UnsupportedSpaceError,
    band_limited_family,
    bump_family,
    canonical_dual,
    check_hyper_orthogonal,
    check_pseudo_orthogonal,
    counting,
    delta_frame,
    dft,
    diagnose,
    discrete_sequence_map,
    duality_residual,
    exponential_frame,
    from_samples,
    fourier_grid,
    make_model,
    periodic_unit_grid,
    riesz_transition,
    scaled_bump_family,
    symmetric_grid,
    to_samples,
    translated_window_frame,
    weighted_delta_frame,
)
from conftest import random_overcomplete_map, random_riesz_map

C2_VECTORS = [(1, 0), (1, 1), (0, 1)]


def c2_map():
    model = make_model(counting(2), RawSamples())
    return discrete_sequence_map(model, C2_VECTORS)


def unit_grid_setup(n, degree=None):
    space = periodic_unit_grid(n)
    model = make_model(space, Trigonometric(degree if degree is not None else n // 2))
    return model, space


class TestDeltaFrame:
    def test_parseval_gelfand_on_full_trigonometric_regime(self):
        model, space = unit_grid_setup(16)
        diag = diagnose(delta_frame(model, space))
        assert abs(diag.lower - 1.0) < 1e-10
        assert abs(diag.upper - 1.0) < 1e-10
        assert diag.mu_independent
        assert diag.classification is Classification.GELFAND_BASIS

    def test_parseval_but_not_gelfand_on_proper_subspace(self):
        model, space = unit_grid_setup(16, degree=7)  # K = 15 < J = 16
        diag = diagnose(delta_frame(model, space))
        assert diag.classification is Classification.PARSEVAL
        assert not diag.mu_independent

    def test_counting_raw_samples_table_is_identity(self):
        space = counting(3)
        model = make_model(space, RawSamples())
        assert np.allclose(delta_frame(model, space).table, np.eye(3))

    def test_analysis_equals_sample_values(self, rng):
        model, space = unit_grid_setup(8)
        omega = delta_frame(model, space)
        f = TestFunction(rng.standard_normal(8) + 1j * rng.standard_normal(8))
        assert np.max(np.abs(omega.analyze(f) - to_samples(model, f))) < 1e-12

    def test_grid_mismatch(self):
        model, _ = unit_grid_setup(8)
        with pytest.raises(GridMismatchError):
            delta_frame(model, periodic_unit_grid(16))


class TestExponentialFrame:
    def test_riesz_basis_on_unit_grid(self):
        model, space = unit_grid_setup(8)
        diag = diagnose(exponential_frame(model, space))
        assert diag.classification is Classification.RIESZ_BASIS
        assert diag.condition_number == pytest.approx(1.0, abs=1e-10)
        assert diag.lower == pytest.approx(1 / 8, abs=1e-12)

    def test_gelfand_on_self_dual_grid(self):
        space = fourier_grid(8)
        model = make_model(space, RawSamples())
        diag = diagnose(exponential_frame(model, space))
        assert diag.classification is Classification.GELFAND_BASIS

    def test_analysis_matches_transform_oracle(self, rng):
        model, space = unit_grid_setup(8)
        omega = exponential_frame(model, space)
        f = TestFunction(rng.standard_normal(8) + 1j * rng.standard_normal(8))
        assert np.max(np.abs(omega.analyze(f) - dft(model, to_samples(model, f)))) < 1e-12

    def test_constant_function_concentrates_at_zero_frequency(self):
        model, space = unit_grid_setup(8)
        omega = exponential_frame(model, space)
        values = omega.analyze(from_samples(model, np.ones(8)))
        assert abs(values[0]) > 0.5
        assert np.max(np.abs(values[1:])) < 1e-12

    def test_needs_periodic_grid(self):
        space = symmetric_grid(9, 4.0)
        model = make_model(space, RawSamples())
        with pytest.raises(UnsupportedSpaceError):
            exponential_frame(model, space)


class TestWeightedDeltaFrame:
    def test_unit_weight_equals_delta(self):
        model, space = unit_grid_setup(8)
        assert np.allclose(
            weighted_delta_frame(model, space, lambda x: 1.0).table,
            delta_frame(model, space).table,
        )

    def test_zero_weight_is_the_degenerate_bessel_map(self):
        model, space = unit_grid_setup(8)
        diag = diagnose(weighted_delta_frame(model, space, lambda x: 0.0))
        assert diag.classification is Classification.BESSEL
        assert not diag.total
        assert diag.upper == 0.0

    def test_upper_bound_grows_like_l_squared(self):
        uppers = []
        for L in (2.0, 4.0, 8.0):
            space = symmetric_grid(int(8 * L) + 1, L)
            model = make_model(space, RawSamples())
            omega = weighted_delta_frame(model, space, lambda x: x)
            uppers.append(diagnose(omega).upper)
        assert uppers[0] == pytest.approx(4.0, rel=1e-12)
        assert uppers[1] == pytest.approx(16.0, rel=1e-12)
        assert uppers[2] == pytest.approx(64.0, rel=1e-12)


class TestTranslatedWindowFrame:
    def test_point_mass_window_equals_delta(self):
        space = counting(6)
        model = make_model(space, RawSamples())
        window = np.zeros(6)
        window[0] = 1.0
        omega = translated_window_frame(model, space, window)
        assert np.allclose(omega.table, delta_frame(model, space).table)

    def test_truncated_gaussian_window_is_pseudo_orthogonal(self):
        space = counting(16)
        model = make_model(space, RawSamples())
        window = np.exp(-0.5 * np.arange(16.0) ** 2)
        window[np.abs(window) < 1e-3] = 0.0
        omega = translated_window_frame(model, space, window)
        report = check_pseudo_orthogonal(omega, bump_family(model), support_tol=1e-9)
        assert report.passed

    def test_full_support_window_fails_pseudo_orthogonality(self):
        space = counting(8)
        model = make_model(space, RawSamples())
        omega = translated_window_frame(model, space, np.ones(8))
        assert omega.note != ""
        report = check_pseudo_orthogonal(omega, bump_family(model), support_tol=1e-9)
        assert not report.passed
        assert "support" in report.reason


class TestDiscreteSequenceMap:
    def test_c2_frame_bounds(self):
        diag = diagnose(c2_map())
        assert diag.lower == pytest.approx(1.0, abs=1e-12)
        assert diag.upper == pytest.approx(3.0, abs=1e-12)
        assert diag.classification is Classification.FRAME
        assert not diag.mu_independent  # J = 3 > K = 2

    def test_orthonormal_basis_is_parseval(self):
        model = make_model(counting(3), RawSamples())
        diag = diagnose(discrete_sequence_map(model, np.eye(3)))
        assert diag.lower == pytest.approx(1.0)
        assert diag.upper == pytest.approx(1.0)
        assert diag.classification is Classification.GELFAND_BASIS

    def test_rank_deficient_family_is_not_total(self):
        model = make_model(counting(2), RawSamples())
        diag = diagnose(discrete_sequence_map(model, [(1, 0), (2, 0)]))
        assert not diag.total
        assert diag.classification is Classification.BOUNDED_BESSEL

    def test_size_mismatch(self):
        model = make_model(counting(2), RawSamples())
        with pytest.raises(ShapeMismatchError):
            discrete_sequence_map(model, [(1, 0, 0)])


class TestDiagnoseProperties:
    def test_frame_inequality_holds_for_random_functions(self, rng):
        omega = random_overcomplete_map(12, 5, rng)
        diag = diagnose(omega)
        w = omega.space.weights
        for _ in range(100):
            c = rng.standard_normal(5) + 1j * rng.standard_normal(5)
            energy = float(np.sum(w * np.abs(omega.table @ c) ** 2))
            norm2 = float(np.vdot(c, c).real)
            assert diag.lower * norm2 <= energy + 1e-9
            assert energy <= diag.upper * norm2 + 1e-9

    def test_riesz_iff_square_and_nonsingular(self, rng):
        omega = random_riesz_map(6, rng)
        diag = diagnose(omega)
        assert diag.classification in (
            Classification.RIESZ_BASIS, Classification.GELFAND_BASIS
        )
        assert diag.total and diag.mu_independent


class TestCanonicalDual:
    def test_c2_dual_vectors(self):
        dual = canonical_dual(c2_map())
        expected = np.array([[2 / 3, -1 / 3], [1 / 3, 1 / 3], [-1 / 3, 2 / 3]])
        assert np.max(np.abs(dual.vectors() - expected)) < 1e-12

    def test_duality_identity(self, rng):
        omega = c2_map()
        assert duality_residual(omega, canonical_dual(omega), trials=100, seed=5) < 1e-10

    def test_dual_bounds_are_reciprocal(self):
        omega = c2_map()
        diag = diagnose(omega)
        dual_diag = diagnose(canonical_dual(omega))
        assert abs(dual_diag.lower - 1 / diag.upper) < 1e-8
        assert abs(dual_diag.upper - 1 / diag.lower) < 1e-8

    def test_parseval_map_is_self_dual(self):
        model, space = unit_grid_setup(16)
        omega = delta_frame(model, space)
        assert np.max(np.abs(canonical_dual(omega).table - omega.table)) < 1e-12

    def test_dual_of_dual_returns_original(self, rng):
        omega = random_riesz_map(6, rng)
        back = canonical_dual(canonical_dual(omega))
        assert np.max(np.abs(back.table - omega.table)) < 1e-12

    def test_non_frame_rejected(self):
        model = make_model(counting(2), RawSamples())
        omega = discrete_sequence_map(model, [(1, 0), (2, 0)])
        with pytest.raises(NotAFrameError):
            canonical_dual(omega)


class TestRieszTransition:
    def test_self_transition_is_identity(self):
        model, space = unit_grid_setup(8)
        zeta = delta_frame(model, space)
        report = riesz_transition(zeta, zeta)
        assert np.max(np.abs(report.matrix - np.eye(8))) < 1e-12
        assert report.invertible

    def test_scaling(self):
        model, space = unit_grid_setup(8)
        zeta = delta_frame(model, space)
        omega = weighted_delta_frame(model, space, lambda x: 2.0)
        report = riesz_transition(omega, zeta)
        assert np.max(np.abs(report.matrix - 2 * np.eye(8))) < 1e-12

    def test_exponential_versus_delta_is_perfectly_conditioned(self):
        model, space = unit_grid_setup(8)
        report = riesz_transition(exponential_frame(model, space),
                                  delta_frame(model, space))
        assert report.condition_number == pytest.approx(1.0, abs=1e-10)
        assert report.invertible

    def test_reference_must_be_gelfand(self):
        model, space = unit_grid_setup(8)
        omega = delta_frame(model, space)
        with pytest.raises(PreconditionError):
            riesz_transition(omega, weighted_delta_frame(model, space, lambda x: 3.0))


class TestPseudoOrthogonality:
    def test_delta_frame_with_bumps_passes(self):
        space = symmetric_grid(17, 4.0)
        model = make_model(space, RawSamples())
        omega = delta_frame(model, space)
        report = check_pseudo_orthogonal(omega, bump_family(model), support_tol=1e-9)
        assert report.passed
        assert all(r.support_size == 1 for r in report.records)

    def test_exponential_frame_with_band_limited_family_passes(self):
        model, space = unit_grid_setup(16)
        omega = exponential_frame(model, space)
        family = band_limited_family(model, space)
        report = check_pseudo_orthogonal(omega, family, support_tol=1e-8)
        assert report.passed

    def test_zero_family_fails_totality(self):
        model, space = unit_grid_setup(8)
        omega = delta_frame(model, space)
        report = check_pseudo_orthogonal(omega, [TestFunction(np.zeros(8))])
        assert not report.passed
        assert not report.total

    def test_off_support_stays_below_tolerance(self):
        space = symmetric_grid(17, 4.0)
        model = make_model(space, RawSamples())
        omega = delta_frame(model, space)
        report = check_pseudo_orthogonal(omega, bump_family(model), support_tol=1e-9)
        assert all(r.max_off_support <= 1e-9 for r in report.records)


class TestHyperOrthogonality:
    def test_delta_frame_with_unit_envelope(self):
        space = symmetric_grid(17, 4.0)
        model = make_model(space, RawSamples())
        omega = delta_frame(model, space)
        report = check_hyper_orthogonal(
            omega, np.ones(17), lambda a: scaled_bump_family(model, a)
        )
        assert report.passed

    def test_delta_frame_with_decaying_envelope(self):
        space = symmetric_grid(17, 4.0)
        model = make_model(space, RawSamples())
        omega = delta_frame(model, space)
        alpha = 1.0 / (1.0 + space.points ** 2)
        report = check_hyper_orthogonal(
            omega, alpha, lambda a: scaled_bump_family(model, a)
        )
        assert report.passed

    def test_envelope_violation_reports_witness(self):
        space = symmetric_grid(9, 4.0)
        model = make_model(space, RawSamples())
        omega = delta_frame(model, space)
        report = check_hyper_orthogonal(
            omega, np.ones(9),
            lambda a: bump_family(model, heights=np.full(9, 2.0)),
        )
        assert not report.passed
        violating = [r for r in report.records if r.bound_violation]
        assert violating
        j, value, allowed = violating[0].bound_violation
        assert value == pytest.approx(2.0, abs=1e-12)
        assert allowed == 1.0

    def test_empty_builder_fails_with_reason(self):
        model, space = unit_grid_setup(8)
        omega = delta_frame(model, space)
        report = check_hyper_orthogonal(omega, np.ones(8), lambda a: [])
        assert not report.passed
        assert "empty" in report.reason

    def test_alpha_must_be_positive(self):
        model, space = unit_grid_setup(8)
        omega = delta_frame(model, space)
        with pytest.raises(PreconditionError):
            check_hyper_orthogonal(omega, np.zeros(8),
                                   lambda a: bump_family(omega.model))
