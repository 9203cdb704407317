"""Random-walk diffusion: moments, coefficient fit, central-limit histogram."""

import math
from itertools import product

import numpy as np
import pytest

from demonlab import brownian as br
from demonlab.errors import InvalidInputError


def pm1_msd_standard_error(n_steps: int, n_walkers: int) -> float:
    # Var(x^2) = 2 n (n - 1) for the +-1 walk (verified by enumeration below)
    return math.sqrt(2.0 * n_steps * (n_steps - 1) / n_walkers)


def test_pm1_moment_formulas_by_enumeration():
    # brute-force oracle over all 2^n paths for small n
    for n in (2, 3, 4, 6):
        finals = [sum(path) for path in product((1, -1), repeat=n)]
        sq = np.array([x * x for x in finals], dtype=float)
        assert sq.mean() == n
        assert sq.var() == 2 * n * (n - 1)


class TestWalkSpec:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            br.WalkSpec(n_steps=0, n_walkers=10, rng_seed=0)
        with pytest.raises(InvalidInputError):
            br.WalkSpec(n_steps=10, n_walkers=0, rng_seed=0)
        with pytest.raises(InvalidInputError):
            br.WalkSpec(n_steps=10, n_walkers=10, rng_seed=0, step_law="levy")
        with pytest.raises(InvalidInputError):
            br.WalkSpec(n_steps=10, n_walkers=10, rng_seed=0, sigma_step=0.0)


class TestSimulateWalks:
    def test_pm1_msd_within_3sigma(self):
        spec = br.WalkSpec(n_steps=100, n_walkers=100_000, rng_seed=0)
        report = br.simulate_walks(spec)
        tol = 3.0 * pm1_msd_standard_error(100, 100_000)
        assert tol == pytest.approx(1.335, abs=5e-3)
        assert abs(report.msd[-1] - 100.0) <= tol

    def test_mean_displacement_statistically_zero(self):
        spec = br.WalkSpec(n_steps=100, n_walkers=100_000, rng_seed=1)
        report = br.simulate_walks(spec)
        tol = 3.0 * math.sqrt(100.0 / 100_000)
        assert abs(report.mean_displacement[-1]) <= tol

    def test_single_step_msd_exact(self):
        spec = br.WalkSpec(n_steps=1, n_walkers=5_000, rng_seed=2)
        report = br.simulate_walks(spec)
        assert report.msd[-1] == 1.0

    def test_fitted_diffusion_coefficient(self):
        spec = br.WalkSpec(n_steps=100, n_walkers=20_000, rng_seed=3)
        report = br.simulate_walks(spec)
        assert report.analytic_D == 0.5
        assert report.fitted_D == pytest.approx(0.5, rel=0.05)

    def test_gaussian_step_law(self):
        spec = br.WalkSpec(
            n_steps=80, n_walkers=20_000, rng_seed=4, step_law=br.STEP_GAUSSIAN, sigma_step=2.0
        )
        report = br.simulate_walks(spec)
        assert report.analytic_D == 2.0
        assert report.fitted_D == pytest.approx(2.0, rel=0.05)

    def test_doubling_sigma_quadruples_fit(self):
        base = br.simulate_walks(br.WalkSpec(
            n_steps=60, n_walkers=20_000, rng_seed=5, step_law=br.STEP_GAUSSIAN, sigma_step=1.0
        ))
        doubled = br.simulate_walks(br.WalkSpec(
            n_steps=60, n_walkers=20_000, rng_seed=5, step_law=br.STEP_GAUSSIAN, sigma_step=2.0
        ))
        assert doubled.fitted_D == pytest.approx(4.0 * base.fitted_D, rel=0.1)

    def test_msd_linearity_r_squared(self):
        spec = br.WalkSpec(n_steps=100, n_walkers=10_000, rng_seed=6)
        report = br.simulate_walks(spec)
        assert report.r_squared > 0.999

    def test_seed_determinism_bit_identical(self):
        spec = br.WalkSpec(n_steps=50, n_walkers=1_000, rng_seed=7)
        a = br.simulate_walks(spec)
        b = br.simulate_walks(spec)
        assert np.array_equal(a.msd, b.msd)
        assert np.array_equal(a.mean_displacement, b.mean_displacement)
        assert a.fitted_D == b.fitted_D

    def test_msd_nondecreasing_within_noise(self):
        spec = br.WalkSpec(n_steps=200, n_walkers=50_000, rng_seed=8)
        report = br.simulate_walks(spec)
        drops = np.diff(report.msd)
        # single-step MSD increments are 1 +- noise; allow 3-sigma dips
        step_noise = 3.0 * math.sqrt(8.0 * 200.0 / 50_000)
        assert drops.min() > -step_noise

    def test_csv_emission(self, tmp_path):
        spec = br.WalkSpec(n_steps=10, n_walkers=100, rng_seed=9)
        report = br.simulate_walks(spec)
        path = tmp_path / "walk.csv"
        report.to_csv(path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "t,mean_displacement,msd"
        assert len(lines) == 12
        assert lines[1].startswith("0.0,0.0,0.0")


class TestHistogramVsGaussian:
    def test_pm1_passes_at_central_limit(self):
        spec = br.WalkSpec(n_steps=100, n_walkers=100_000, rng_seed=10)
        report = br.histogram_vs_gaussian(spec, 100)
        assert len(report.observed) == 20
        assert report.chi2_per_bin <= 2.0
        assert report.passes

    def test_gaussian_steps_pass(self):
        spec = br.WalkSpec(
            n_steps=64, n_walkers=100_000, rng_seed=11, step_law=br.STEP_GAUSSIAN, sigma_step=1.5
        )
        report = br.histogram_vs_gaussian(spec, 64)
        assert report.passes

    def test_pm1_odd_time_parity_safe(self):
        spec = br.WalkSpec(n_steps=75, n_walkers=100_000, rng_seed=12)
        report = br.histogram_vs_gaussian(spec, 75)
        assert report.passes

    def test_early_time_rejected(self):
        spec = br.WalkSpec(n_steps=100, n_walkers=100_000, rng_seed=13)
        with pytest.raises(InvalidInputError):
            br.histogram_vs_gaussian(spec, 1)

    def test_insufficient_walkers_rejected(self):
        spec = br.WalkSpec(n_steps=100, n_walkers=50_000, rng_seed=14)
        with pytest.raises(InvalidInputError):
            br.histogram_vs_gaussian(spec, 100)

    def test_t_beyond_walk_rejected(self):
        spec = br.WalkSpec(n_steps=50, n_walkers=100_000, rng_seed=15)
        with pytest.raises(InvalidInputError):
            br.histogram_vs_gaussian(spec, 60)

    def test_expected_counts_from_gaussian_cdf(self):
        spec = br.WalkSpec(n_steps=100, n_walkers=100_000, rng_seed=16)
        report = br.histogram_vs_gaussian(spec, 100)
        # expectations integrate N(0, t) over the bins: they sum to < walkers
        assert report.expected.sum() < spec.n_walkers
        assert report.expected.min() > 5.0
