import math

import numpy as np
import pytest

from orbitwave import kepler_classical as kc
from orbitwave import orbit_ensemble_oracle as oo
from orbitwave.hydrogen_quantum import QuantumNumbers
from orbitwave.kepler_classical import make_params


def bisect_kepler(M, ecc, iters=200):
    """Brute bisection oracle for u - ecc sin(u) = M on [0, 2 pi)."""
    lo, hi = 0.0, 2.0 * math.pi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid - ecc * math.sin(mid) - M > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


class TestSolveKepler:
    def test_fixed_points(self):
        for ecc in (0.0, 0.3, 0.999999, 1.0):
            assert oo.solve_kepler(0.0, ecc) == 0.0
            assert oo.solve_kepler(math.pi, ecc) == pytest.approx(math.pi, rel=1e-14)

    def test_against_bisection_oracle(self):
        assert oo.solve_kepler(math.pi / 2, 0.5) == pytest.approx(
            bisect_kepler(math.pi / 2, 0.5), abs=1e-12)

    def test_residual_bound_random(self):
        rng = np.random.default_rng(17)
        M = rng.uniform(0.0, 2.0 * math.pi, 100_000)
        for ecc in (0.0, 0.37, 0.999999, 1.0):
            u = oo.solve_kepler(M, ecc)
            res = u - ecc * np.sin(u) - M
            res -= 2.0 * math.pi * np.round(res / (2.0 * math.pi))
            assert np.max(np.abs(res)) < 1e-12
            assert np.all((u >= 0.0) & (u < 2.0 * math.pi))

    def test_bad_eccentricity(self):
        with pytest.raises(ValueError):
            oo.solve_kepler(1.0, 1.5)


class TestSamplePosition:
    def test_fields_and_bounds(self):
        params = make_params(QuantumNumbers(10, 5, 1))
        rng = np.random.default_rng(0)
        for _ in range(200):
            s = oo.sample_position(params, rng)
            assert params.r_peri <= s.r <= params.r_apo
            assert 0.0 <= s.theta <= math.pi
            assert 0.0 <= s.phi < 2.0 * math.pi
            assert s.branch in (1, 2)
            assert abs(math.cos(s.theta)) <= params.sin_alpha + 1e-12

    def test_perihelion_identity(self):
        # n^2 (1 - ecc) equals ell^2/(1 + ecc): the u = 0 radius is the perihelion
        for n, l in [(10, 5), (50, 10), (200, 100)]:
            p = make_params(QuantumNumbers(n, l, 0))
            assert n * n * (1.0 - p.eccentricity) == pytest.approx(p.r_peri, rel=1e-13)

    def test_mean_radius(self):
        params = make_params(QuantumNumbers(10, 5, 1))
        r = oo._draw_positions(params, np.random.default_rng(5), 200_000, "two-branch")[0]
        want = params.semi_major * (1.0 + params.eccentricity**2 / 2.0)
        z = (r.mean() - want) / (r.std() / math.sqrt(r.size))
        assert abs(z) < 3.0

    def test_time_average_consistency(self):
        # mean of dt/du-weight reciprocal is exactly 1 for a time-uniform stream
        for n, l, m in [(10, 5, 1), (100, 50, 10)]:
            params = make_params(QuantumNumbers(n, l, m))
            u = oo._draw_positions(params, np.random.default_rng(5), 200_000, "two-branch")[4]
            x = 1.0 / (1.0 - params.eccentricity * np.cos(u))
            z = (x.mean() - 1.0) / (x.std() / math.sqrt(x.size))
            assert abs(z) < 3.0

    def test_l0_isotropic(self):
        params = make_params(QuantumNumbers(10, 0, 0))
        r, theta, _, _, u, gamma = oo._draw_positions(
            params, np.random.default_rng(2), 50_000, "two-branch")
        assert np.all((r >= 0.0) & (r <= 200.0))
        # cos(theta) uniform on [-1, 1]
        c = np.cos(theta)
        assert abs(c.mean()) < 3.0 / math.sqrt(c.size) * math.sqrt(1.0 / 3.0)
        assert np.array_equal(gamma, np.zeros_like(gamma))

    def test_bad_phase_mode(self):
        params = make_params(QuantumNumbers(10, 5, 1))
        with pytest.raises(ValueError):
            oo.sample_position(params, np.random.default_rng(0), "other")


class TestHistogramRadial:
    def test_l1_against_analytic(self):
        params = make_params(QuantumNumbers(10, 5, 0))
        h = oo.histogram_radial(params, 200_000, 100, seed=7)
        l1 = oo.histogram_l1(h, oo.analytic_radial_at_centers(params, h))
        assert l1 < 0.03  # ~2x the multinomial noise floor at this N

    def test_density_sums_to_one(self):
        params = make_params(QuantumNumbers(10, 5, 0))
        h = oo.histogram_radial(params, 10_000, 37, seed=1)
        assert float(np.sum(h.density * h.widths)) == pytest.approx(1.0, abs=1e-12)
        assert h.total == 10_000

    def test_interior_bins_occupied(self):
        params = make_params(QuantumNumbers(10, 5, 0))
        h = oo.histogram_radial(params, 200_000, 100, seed=7)
        assert np.all(h.counts[1:-1] > 0)

    def test_doubling_samples_shrinks_l1(self):
        params = make_params(QuantumNumbers(10, 5, 0))
        ratios = []
        for s in range(10):
            hA = oo.histogram_radial(params, 100_000, 100, seed=100 + s)
            hB = oo.histogram_radial(params, 200_000, 100, seed=200 + s)
            a = oo.histogram_l1(hA, oo.analytic_radial_at_centers(params, hA))
            b = oo.histogram_l1(hB, oo.analytic_radial_at_centers(params, hB))
            ratios.append(a / b)
        assert 1.25 < np.mean(ratios) < 1.65  # ~sqrt(2) on average

    def test_l0_case(self):
        params = make_params(QuantumNumbers(10, 0, 0))
        h = oo.histogram_radial(params, 200_000, 100, seed=3)
        l1 = oo.histogram_l1(h, oo.analytic_radial_at_centers(params, h))
        assert l1 < 0.03

    def test_argument_validation(self):
        params = make_params(QuantumNumbers(10, 5, 0))
        with pytest.raises(ValueError):
            oo.histogram_radial(params, 0, 10, seed=0)
        with pytest.raises(ValueError):
            oo.histogram_radial(params, 10, 1, seed=0)


class TestHistogramAngular:
    def test_l1_two_branch(self):
        params = make_params(QuantumNumbers(10, 5, 1))
        h = oo.histogram_angular(params, 200_000, 100, seed=7)
        t0 = params.theta_min
        l1 = oo.histogram_l1(h, oo.analytic_angular_at_centers(params, h),
                             singular=(t0, math.pi - t0))
        assert l1 < 0.035

    def test_support_band_respected(self):
        params = make_params(QuantumNumbers(10, 5, 1))
        h = oo.histogram_angular(params, 100_000, 100, seed=4)
        t0 = params.theta_min
        outside = (h.edges[1:] < t0 - 1e-9) | (h.edges[:-1] > math.pi - t0 + 1e-9)
        assert np.all(h.counts[outside] == 0)

    def test_uniform_phase_reported_distance(self):
        # experiment only: the phase-averaged ensemble is NOT the two-branch mean
        params = make_params(QuantumNumbers(10, 5, 1))
        h = oo.histogram_angular(params, 100_000, 100, seed=4, phase_mode="uniform-phase")
        t0 = params.theta_min
        l1 = oo.histogram_l1(h, oo.analytic_angular_at_centers(params, h),
                             singular=(t0, math.pi - t0))
        assert math.isfinite(l1)
        print(f"uniform-phase vs two-branch analytic angular L1: {l1:.4f}")


class TestHistogram2d:
    def test_marginals_match_1d(self):
        params = make_params(QuantumNumbers(10, 5, 1))
        h2 = oo.histogram_2d(params, 200_000, 60, 60, seed=7)
        r_marg = h2.counts.sum(axis=1) / (200_000 * np.diff(h2.r_edges))
        h1 = oo.histogram_radial(params, 200_000, 60, seed=8)
        l1 = float(np.sum(np.abs(r_marg - h1.density) * np.diff(h1.edges)))
        assert l1 < 0.03

    def test_same_seed_marginal_is_exact(self):
        params = make_params(QuantumNumbers(10, 5, 1))
        h2 = oo.histogram_2d(params, 50_000, 40, 30, seed=11)
        h1 = oo.histogram_radial(params, 50_000, 40, seed=11)
        assert np.array_equal(h2.counts.sum(axis=1), h1.counts)

    def test_two_branch_concentrates_uniform_phase_fills(self):
        params = make_params(QuantumNumbers(10, 5, 1))
        tb = oo.histogram_2d(params, 200_000, 60, 60, seed=7)
        up = oo.histogram_2d(params, 200_000, 60, 60, seed=7, phase_mode="uniform-phase")
        occ_tb = float((tb.counts > 0).mean())
        occ_up = float((up.counts > 0).mean())
        assert occ_tb < 0.15
        assert occ_up > 0.5

    def test_mass_normalized(self):
        params = make_params(QuantumNumbers(10, 5, 1))
        h = oo.histogram_2d(params, 20_000, 25, 25, seed=2)
        area = np.outer(np.diff(h.r_edges), np.diff(h.theta_edges))
        assert float(np.sum(h.density * area)) == pytest.approx(1.0, abs=1e-12)


class TestDeterminism:
    def test_worker_count_invariance(self):
        params = make_params(QuantumNumbers(10, 5, 1))
        a = oo.histogram_radial(params, 100_000, 50, seed=3, workers=1)
        b = oo.histogram_radial(params, 100_000, 50, seed=3, workers=4)
        assert np.array_equal(a.counts, b.counts)
        assert np.array_equal(a.density, b.density)
        c = oo.histogram_angular(params, 70_000, 50, seed=3, workers=3)
        d = oo.histogram_angular(params, 70_000, 50, seed=3, workers=1)
        assert np.array_equal(c.counts, d.counts)

    def test_seed_changes_stream(self):
        params = make_params(QuantumNumbers(10, 5, 1))
        a = oo.histogram_radial(params, 50_000, 50, seed=3)
        b = oo.histogram_radial(params, 50_000, 50, seed=4)
        assert not np.array_equal(a.counts, b.counts)
