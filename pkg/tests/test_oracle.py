import numpy as np
import pytest

from bitquant import (
    ChannelSpec,
    DensityModel,
    InputDistribution,
    ThresholdVector,
    brute_force,
    mc_mutual_information,
    mutual_information,
    solve,
)
from bitquant.channel import matrix_from_threshold_vector

from conftest import random_gaussian_pair


class TestBruteForce:
    def test_symmetric_single_threshold(self, symmetric_spec):
        result = brute_force(symmetric_spec, max_thresholds=1, grid_points=2001, p_grid_points=201)
        # 0 and 0.5 lie exactly on the grids, so the optimum is hit exactly
        assert result.best_thresholds == (0.0,)
        assert result.best_p0 == 0.5
        assert result.best_mask == (True, False)
        assert result.best_capacity_bits == pytest.approx(0.3689172, abs=1e-6)

    def test_identical_densities_carry_nothing(self, identical_spec):
        result = brute_force(identical_spec, max_thresholds=2, grid_points=101, p_grid_points=21)
        assert result.best_capacity_bits <= 1e-6

    def test_overlap_pair_confirms_solver(self, overlap_spec):
        report = solve(overlap_spec, step=0.01)
        oracle_spec = ChannelSpec(overlap_spec.phi0, overlap_spec.phi1, support=(-40.0, 40.0))
        result = brute_force(oracle_spec, max_thresholds=2, grid_points=801, p_grid_points=101)
        assert result.best_thresholds[0] == pytest.approx(-4.9, abs=0.3)
        assert result.best_thresholds[1] == pytest.approx(16.0, abs=0.3)
        assert abs(report.capacity_bits - result.best_capacity_bits) <= 2e-3

    def test_disjoint_supports_reach_one_bit(self, disjoint_tabulated_spec):
        result = brute_force(disjoint_tabulated_spec, max_thresholds=1, grid_points=301, p_grid_points=41)
        assert result.best_capacity_bits == pytest.approx(1.0, abs=1e-9)

    def test_triple_thresholds_never_hurt(self, symmetric_spec):
        small = brute_force(symmetric_spec, max_thresholds=1, grid_points=64, p_grid_points=11)
        large = brute_force(symmetric_spec, max_thresholds=3, grid_points=64, p_grid_points=11)
        assert large.best_capacity_bits >= small.best_capacity_bits - 1e-15

    def test_dominates_sampled_configurations(self, symmetric_spec):
        grid_points, p_grid_points = 201, 41
        result = brute_force(symmetric_spec, max_thresholds=2, grid_points=grid_points, p_grid_points=p_grid_points)
        lo, hi = symmetric_spec.support
        grid = np.linspace(lo, hi, grid_points)
        p_grid = np.linspace(0.0, 1.0, p_grid_points)
        rng = np.random.default_rng(71)
        for _ in range(200):
            i, j = sorted(rng.choice(grid_points, size=2, replace=False))
            parity = bool(rng.integers(2))
            tv = ThresholdVector(
                (float(grid[i]), float(grid[j])),
                (parity, not parity, parity),
            )
            matrix = matrix_from_threshold_vector(symmetric_spec, tv)
            p = InputDistribution(float(rng.choice(p_grid)))
            assert mutual_information(p, matrix) <= result.best_capacity_bits + 1e-12

    def test_agrees_with_search_on_random_specs(self):
        rng = np.random.default_rng(73)
        for _ in range(5):
            spec = random_gaussian_pair(rng)
            report = solve(spec, step=0.01)
            result = brute_force(spec, max_thresholds=2, grid_points=2001, p_grid_points=201)
            assert abs(report.capacity_bits - result.best_capacity_bits) <= 2e-3

    def test_reproducible_bit_for_bit(self, symmetric_spec):
        a = brute_force(symmetric_spec, max_thresholds=2, grid_points=201, p_grid_points=41)
        b = brute_force(symmetric_spec, max_thresholds=2, grid_points=201, p_grid_points=41)
        assert a == b

    def test_validates_arguments(self, symmetric_spec):
        with pytest.raises(ValueError):
            brute_force(symmetric_spec, max_thresholds=4)
        with pytest.raises(ValueError):
            brute_force(symmetric_spec, grid_points=16)
        with pytest.raises(ValueError):
            brute_force(symmetric_spec, p_grid_points=5)


class TestMonteCarlo:
    def test_separable_channel_reaches_one_bit(self, disjoint_tabulated_spec):
        tv = ThresholdVector((1.5,), (True, False))
        est = mc_mutual_information(
            disjoint_tabulated_spec, tv, InputDistribution(0.5), n=100_000, seed=13
        )
        assert abs(est.i_hat_bits - 1.0) <= max(3.0 * est.std_error_bits, 1e-4)

    def test_symmetric_channel_value(self, symmetric_spec):
        tv = ThresholdVector((0.0,), (True, False))
        est = mc_mutual_information(symmetric_spec, tv, InputDistribution(0.5), n=1_000_000, seed=13)
        assert abs(est.i_hat_bits - 0.3689172) <= 3.0 * est.std_error_bits

    def test_identical_densities_near_zero(self, identical_spec):
        tv = ThresholdVector((0.0,), (True, False))
        est = mc_mutual_information(identical_spec, tv, InputDistribution(0.5), n=1_000_000, seed=13)
        assert est.i_hat_bits <= 5e-5 + 3.0 * est.std_error_bits

    def test_deterministic_for_fixed_seed(self, symmetric_spec):
        tv = ThresholdVector((0.0,), (True, False))
        a = mc_mutual_information(symmetric_spec, tv, InputDistribution(0.4), n=10_000, seed=99)
        b = mc_mutual_information(symmetric_spec, tv, InputDistribution(0.4), n=10_000, seed=99)
        assert a == b

    def test_estimates_are_calibrated(self, symmetric_spec):
        tv = ThresholdVector((0.0,), (True, False))
        p = InputDistribution(0.5)
        truth = mutual_information(p, matrix_from_threshold_vector(symmetric_spec, tv))
        inside = 0
        for seed in range(100):
            est = mc_mutual_information(symmetric_spec, tv, p, n=20_000, seed=seed)
            if abs(est.i_hat_bits - truth) <= 4.0 * est.std_error_bits:
                inside += 1
        assert inside >= 99

    def test_mixture_and_table_sampling_paths(self):
        from bitquant import GaussianComponent

        phi0 = DensityModel.mixture(
            [GaussianComponent(-2.0, 0.7, 0.5), GaussianComponent(-0.5, 1.2, 0.5)]
        )
        phi1 = DensityModel.tabulated([[0.0, 0.0], [1.0, 0.5], [2.0, 0.5], [3.0, 0.0]])
        spec = ChannelSpec(phi0, phi1)
        tv = ThresholdVector((0.0,), (True, False))
        p = InputDistribution(0.5)
        truth = mutual_information(p, matrix_from_threshold_vector(spec, tv))
        est = mc_mutual_information(spec, tv, p, n=400_000, seed=7)
        assert abs(est.i_hat_bits - truth) <= 4.0 * est.std_error_bits

    def test_rejects_tiny_sample_counts(self, symmetric_spec):
        tv = ThresholdVector((0.0,), (True, False))
        with pytest.raises(ValueError):
            mc_mutual_information(symmetric_spec, tv, InputDistribution(0.5), n=100, seed=0)
