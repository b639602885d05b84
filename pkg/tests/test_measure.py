import json

import numpy as np
import pytest

from framelab import (
    EmptySpaceError,
    RefinementFamily,
    SampledMeasureSpace,
    ScheduleError,
    ShapeMismatchError,
    SpaceKind,
    counting,
    counting_family,
    ess_sup,
    fourier_grid,
    l2_inner,
    periodic_unit_grid,
    refine,
    same_grid,
    symmetric_grid,
    symmetric_grid_family,
    unit_grid_family,
)


class TestL2Inner:
    def test_orthogonal_coordinates(self):
        space = counting([1, 2])
        assert l2_inner(space, (1, 0), (0, 1)) == 0

    def test_counting_norm(self):
        space = counting([1, 2, 3])
        assert l2_inner(space, (1, 1, 1), (1, 1, 1)) == 3

    def test_uniform_quadrature_of_constant_is_exact(self):
        space = periodic_unit_grid(4)
        assert np.allclose(space.weights, 0.25)
        assert l2_inner(space, np.ones(4), np.ones(4)) == pytest.approx(1.0, abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            l2_inner(counting(3), (1, 2), (1, 2, 3))

    def test_conjugate_symmetry_and_positivity(self, rng):
        space = periodic_unit_grid(16)
        for _ in range(20):
            x = rng.standard_normal(16) + 1j * rng.standard_normal(16)
            y = rng.standard_normal(16) + 1j * rng.standard_normal(16)
            assert l2_inner(space, x, y) == pytest.approx(
                np.conj(l2_inner(space, y, x)), abs=1e-14
            )
            assert l2_inner(space, x, x).real > 0

    def test_counting_measure_reduces_to_plain_inner_product(self, rng):
        space = counting(5)
        x = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        y = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        assert l2_inner(space, x, y) == pytest.approx(np.vdot(y, x), abs=1e-14)


class TestEssSup:
    def test_max_modulus(self):
        assert ess_sup(counting(3), (2, -3, 5)) == 5

    def test_unit_modulus(self):
        assert ess_sup(counting(2), (1j, -1j)) == pytest.approx(1.0)

    def test_coordinate_on_symmetric_grid(self):
        space = symmetric_grid(9, 4.0)
        assert ess_sup(space, space.points) == pytest.approx(4.0)

    def test_submultiplicative(self, rng):
        space = counting(8)
        for _ in range(20):
            x = rng.standard_normal(8) + 1j * rng.standard_normal(8)
            y = rng.standard_normal(8) + 1j * rng.standard_normal(8)
            assert ess_sup(space, x * y) <= ess_sup(space, x) * ess_sup(space, y) + 1e-12


class TestSpaceInvariants:
    def test_empty_space_rejected(self):
        with pytest.raises(EmptySpaceError):
            SampledMeasureSpace(points=[], weights=[], kind=SpaceKind.ATOMIC,
                                extent=0.0)

    def test_zero_weight_rejected(self):
        with pytest.raises(ValueError, match="strictly positive"):
            SampledMeasureSpace(points=[0.0, 1.0], weights=[1.0, 0.0],
                                kind=SpaceKind.ATOMIC, extent=2.0)

    def test_duplicate_points_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            SampledMeasureSpace(points=[1.0, 1.0], weights=[1.0, 1.0],
                                kind=SpaceKind.ATOMIC, extent=2.0)

    def test_counting_weights_are_unit(self):
        assert np.all(counting(7).weights == 1.0)

    def test_total_measure(self):
        assert periodic_unit_grid(8).total_measure == pytest.approx(1.0)
        assert fourier_grid(9).total_measure == pytest.approx(3.0)

    def test_json_roundtrip(self):
        space = symmetric_grid(9, 4.0)
        restored = SampledMeasureSpace.from_json(space.to_json())
        assert same_grid(space, restored)
        assert restored.kind is SpaceKind.QUADRATURE
        assert restored.extent == 4.0

    def test_json_is_plain_data(self):
        payload = json.loads(periodic_unit_grid(4).to_json())
        assert set(payload) == {"kind", "points", "weights", "extent", "periodic"}


class TestRefinement:
    def test_unit_grid_step(self):
        family = unit_grid_family([8, 16])
        space = refine(family, 0)
        assert len(space) == 8
        assert np.allclose(space.weights, 1 / 8)

    def test_counting_family_unit_weights(self):
        family = counting_family([4, 8, 16])
        for step in range(3):
            assert np.all(refine(family, step).weights == 1.0)

    def test_symmetric_grid_points(self):
        family = symmetric_grid_family([(9, 4.0), (17, 8.0)])
        space = refine(family, 0)
        assert np.allclose(space.points, np.arange(-4, 5))

    def test_refine_is_deterministic(self):
        family = unit_grid_family([8, 16])
        assert same_grid(refine(family, 1), refine(family, 1))

    def test_step_out_of_range(self):
        with pytest.raises(ScheduleError):
            refine(unit_grid_family([8]), 1)

    def test_schedule_must_increase(self):
        with pytest.raises(ScheduleError):
            RefinementFamily(generator=lambda n, L: counting(n),
                             schedule=[(8, 1.0), (8, 2.0)])
