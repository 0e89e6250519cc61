import math

import numpy as np
import pytest

from orbitwave import kepler_classical as kc
from orbitwave._quad import gauss_nodes
from orbitwave.hydrogen_quantum import QuantumNumbers
from orbitwave.kepler_classical import make_params


class TestMakeParams:
    def test_eccentricity_exact_cases(self):
        assert make_params(QuantumNumbers(6, 4, 0)).eccentricity == 2.0 / 3.0
        assert make_params(QuantumNumbers(100, 99, 0)).eccentricity == 0.1

    def test_degenerate_l0(self):
        p = make_params(QuantumNumbers(10, 0, 0))
        assert p.eccentricity == 1.0
        assert p.r_peri == 0.0
        assert p.r_apo == 200.0
        assert p.tau is None and p.alpha is None
        with pytest.raises(ValueError):
            _ = p.sin_alpha

    def test_apsides(self):
        p = make_params(QuantumNumbers(10, 5, 0))
        assert p.r_peri == pytest.approx(16.33399734659244, rel=1e-13)
        assert p.r_apo == pytest.approx(183.66600265340756, rel=1e-13)
        assert p.r_peri + p.r_apo == 200.0  # exact by construction
        assert p.r_peri * p.r_apo == pytest.approx(100.0 * 30.0, rel=1e-14)

    def test_apsis_identities_sweep(self):
        for n, l in [(2, 1), (10, 5), (50, 25), (100, 50), (200, 100), (137, 40)]:
            p = make_params(QuantumNumbers(n, l, 0))
            assert p.r_peri + p.r_apo == 2.0 * n * n
            assert p.r_peri * p.r_apo == pytest.approx(n * n * l * (l + 1.0), rel=1e-13)

    def test_negative_m_maps_to_abs(self):
        a = make_params(QuantumNumbers(10, 5, -3))
        b = make_params(QuantumNumbers(10, 5, 3))
        assert a == b and a.m == 3

    def test_inclination_and_tau(self):
        p = make_params(QuantumNumbers(10, 5, 1))
        ell = math.sqrt(30.0)
        assert math.cos(p.alpha) == pytest.approx(1.0 / ell, rel=1e-14)
        assert p.tau >= p.eccentricity
        assert p.tau == pytest.approx(p.eccentricity / math.sin(p.alpha), rel=1e-14)
        assert p.theta_min == pytest.approx(math.asin(1.0 / ell), rel=1e-13)

    def test_period_and_sizes(self):
        p = make_params(QuantumNumbers(7, 2, 0))
        assert p.period == pytest.approx(2.0 * math.pi * 343.0, rel=1e-15)
        assert p.semi_major == 49.0
        assert p.semi_latus == 6.0

    def test_tau_finite_even_at_max_m(self):
        # m = l < ell strictly, so tau can never blow up
        for n, l in [(2, 1), (50, 49), (200, 199)]:
            p = make_params(QuantumNumbers(n, l, l))
            assert math.isfinite(p.tau)


class TestRadialDensityL0:
    def test_midpoint_value(self):
        assert kc.radial_density_l0(10, 100.0) == pytest.approx(
            1.0 / (100.0 * math.pi), rel=1e-14)

    def test_beyond_support(self):
        assert kc.radial_density_l0(10, 250.0) == 0.0
        assert kc.radial_density_l0(10, 200.0) == 0.0

    def test_divergence_toward_cutoff(self):
        vals = kc.radial_density_l0(10, np.array([199.0, 199.9, 199.999, 199.99999, 199.9999999]))
        assert np.all(np.diff(vals) > 0.0)
        assert vals[-1] > 100.0

    def test_nonpositive_radius_rejected(self):
        with pytest.raises(ValueError):
            kc.radial_density_l0(10, 0.0)
        with pytest.raises(ValueError):
            kc.radial_density_l0(10, np.array([1.0, -2.0]))


class TestRadialDensity:
    def test_value_cross_checked_two_routes(self):
        # sqrt(10/7)/(100 pi); also verified by the eccentric-anomaly form below
        p = make_params(QuantumNumbers(10, 5, 0))
        want = math.sqrt(10.0 / 7.0) / (100.0 * math.pi)
        assert kc.radial_density(p, 100.0) == pytest.approx(want, rel=1e-13)
        assert kc.radial_density_eccentric(p, 100.0) == pytest.approx(want, rel=1e-13)

    def test_inside_inner_apsis(self):
        p = make_params(QuantumNumbers(10, 5, 0))
        assert kc.radial_density(p, 10.0) == 0.0

    def test_l0_reduction(self):
        p = make_params(QuantumNumbers(10, 0, 0))
        r = np.linspace(1.0, 199.0, 57)
        np.testing.assert_allclose(kc.radial_density(p, r), kc.radial_density_l0(10, r), rtol=1e-14)

    def test_divergence_at_both_apsides(self):
        p = make_params(QuantumNumbers(10, 5, 0))
        near_apo = p.r_apo - np.array([1.0, 1e-2, 1e-4, 1e-6])
        near_peri = p.r_peri + np.array([1.0, 1e-2, 1e-4, 1e-6])
        assert np.all(np.diff(kc.radial_density(p, near_apo)) > 0.0)
        assert np.all(np.diff(kc.radial_density(p, near_peri)) > 0.0)

    @pytest.mark.parametrize("n,l", [(10, 5), (50, 25), (100, 50)])
    def test_eccentric_form_equivalence(self, n, l):
        p = make_params(QuantumNumbers(n, l, 0))
        rng = np.random.default_rng(42 + n)
        width = p.r_apo - p.r_peri
        r = p.r_peri + width * rng.uniform(1e-6, 1.0 - 1e-6, 10_000)
        a = kc.radial_density(p, r)
        b = kc.radial_density_eccentric(p, r)
        np.testing.assert_allclose(a, b, rtol=1e-10)

    def test_eccentric_form_degenerate_case(self):
        rng = np.random.default_rng(9)
        r = 200.0 * rng.uniform(1e-6, 1.0 - 1e-6, 10_000)
        a = kc.radial_density_l0(10, r)
        b = kc.radial_density_eccentric(10, r)
        np.testing.assert_allclose(a, b, rtol=1e-10)

    @pytest.mark.parametrize("n,l", [(10, 5), (50, 25), (100, 50), (10, 0)])
    def test_normalization_u_substitution(self, n, l):
        p = make_params(QuantumNumbers(n, l, 0))
        assert kc.radial_mass(p) == pytest.approx(1.0, abs=1e-8)


class TestAngularDensity:
    def test_midplane_value_both_branches(self):
        # branches coincide at theta = pi/2; value cross-checked by Monte Carlo
        p = make_params(QuantumNumbers(10, 5, 1))
        want = 0.05319779576399813
        assert kc.angular_density_branch(p, math.pi / 2, 1) == pytest.approx(want, rel=1e-12)
        assert kc.angular_density_branch(p, math.pi / 2, 2) == pytest.approx(want, rel=1e-12)
        assert kc.angular_density(p, math.pi / 2) == pytest.approx(want, rel=1e-12)

    def test_branch_mirror_symmetry(self):
        p = make_params(QuantumNumbers(10, 5, 1))
        th = np.linspace(0.19, math.pi - 0.19, 101)
        b1 = kc.angular_density_branch(p, th, 1)
        b2 = kc.angular_density_branch(p, math.pi - th, 2)
        np.testing.assert_allclose(b1, b2, rtol=1e-11)

    def test_mean_symmetric(self):
        p = make_params(QuantumNumbers(10, 5, 1))
        th = np.linspace(0.0, math.pi, 401)
        a = kc.angular_density(p, th)
        np.testing.assert_allclose(a, a[::-1], rtol=1e-11, atol=1e-300)

    def test_support_band(self):
        p = make_params(QuantumNumbers(10, 5, 1))
        t0 = p.theta_min
        outside = np.array([0.0, 0.5 * t0, t0, math.pi - t0, math.pi - 0.5 * t0, math.pi])
        np.testing.assert_array_equal(kc.angular_density(p, outside), 0.0)
        inside = np.linspace(t0 + 1e-6, math.pi - t0 - 1e-6, 99)
        assert np.all(kc.angular_density(p, inside) > 0.0)

    @pytest.mark.parametrize("n,l,m", [(10, 5, 1), (100, 50, 10), (200, 100, 20)])
    def test_normalization_gamma_substitution(self, n, l, m):
        p = make_params(QuantumNumbers(n, l, m))
        assert kc.angular_mass(p) == pytest.approx(1.0, abs=1e-6)

    def test_m0_integrable_endpoints(self):
        p = make_params(QuantumNumbers(10, 5, 0))
        assert kc.angular_mass(p) == pytest.approx(1.0, abs=1e-6)
        assert math.isfinite(kc.angular_density(p, 1e-9))

    def test_l0_isotropic_convention(self):
        p = make_params(QuantumNumbers(4, 0, 0))
        th = np.linspace(0.0, math.pi, 33)
        np.testing.assert_allclose(kc.angular_density(p, th), 0.5 * np.sin(th), rtol=1e-15)
        with pytest.raises(ValueError):
            kc.angular_density_branch(p, 1.0, 1)

    def test_bad_inputs(self):
        p = make_params(QuantumNumbers(10, 5, 1))
        with pytest.raises(ValueError):
            kc.angular_density(p, -0.1)
        with pytest.raises(ValueError):
            kc.angular_density_branch(p, 1.0, 3)


class TestDensity3dProduct:
    def test_marginal_identity(self):
        p = make_params(QuantumNumbers(10, 5, 1))
        sa = p.sin_alpha
        g, w = gauss_nodes(0.0, math.pi, 200)
        th = np.arccos(sa * np.cos(g))
        jac = sa * np.sin(g) / np.sin(th)
        for r0 in (30.0, 100.0, 170.0):
            vals = kc.density3d_product(p, np.full_like(th, r0), th)
            marginal = 2.0 * math.pi * r0 * r0 * float(np.dot(w, vals * np.sin(th) * jac))
            assert marginal == pytest.approx(kc.radial_density(p, r0), rel=1e-10)

    def test_total_mass(self):
        p = make_params(QuantumNumbers(10, 5, 1))
        u, wu = gauss_nodes(0.0, math.pi, 300)
        r = p.semi_major * (1.0 - p.eccentricity * np.cos(u))
        jr = p.semi_major * p.eccentricity * np.sin(u)
        sa = p.sin_alpha
        g, wt = gauss_nodes(0.0, math.pi, 200)
        th = np.arccos(sa * np.cos(g))
        jt = sa * np.sin(g) / np.sin(th)
        vals = kc.density3d_product(p, r[:, None], th[None, :])
        weight = np.outer(wu * jr, wt * jt) * 2.0 * math.pi * (r**2)[:, None] * np.sin(th)[None, :]
        assert float(np.sum(weight * vals)) == pytest.approx(1.0, abs=1e-6)

    def test_iso_level_sets_are_bounded(self):
        # cells above the iso level never touch the grid boundary
        p = make_params(QuantumNumbers(6, 4, 2))
        r = np.linspace(1e-3, 2.2 * 36.0, 100)
        th = np.linspace(1e-3, math.pi - 1e-3, 100)
        vals = kc.density3d_product(p, r[:, None], th[None, :])
        mask = vals > 1e-5
        assert mask.any()
        assert not mask[0, :].any() and not mask[-1, :].any()
        assert not mask[:, 0].any() and not mask[:, -1].any()

    def test_outside_support_zero(self):
        p = make_params(QuantumNumbers(10, 5, 1))
        assert kc.density3d_product(p, 5.0, math.pi / 2) == 0.0
        assert kc.density3d_product(p, 100.0, 0.05) == 0.0

    def test_l0_rejected(self):
        with pytest.raises(ValueError):
            kc.density3d_product(make_params(QuantumNumbers(3, 0, 0)), 5.0, 1.0)


class TestOscillatorClassical:
    def test_center_value(self):
        assert kc.oscillator_classical_density(10, 0.0) == pytest.approx(
            1.0 / (math.pi * math.sqrt(21.0)), rel=1e-14)

    def test_beyond_turning_point(self):
        assert kc.oscillator_classical_density(10, 5.0) == 0.0
        assert kc.oscillator_classical_density(10, math.sqrt(21.0)) == 0.0

    def test_arcsine_normalization(self):
        # substitute x = sqrt(2E) sin(phi): the integrand becomes 1/pi exactly
        turn = math.sqrt(21.0)
        phi, w = gauss_nodes(-math.pi / 2, math.pi / 2, 50)
        x = turn * np.sin(phi)
        vals = kc.oscillator_classical_density(10, x) * turn * np.cos(phi)
        assert float(np.dot(w, vals)) == pytest.approx(1.0, rel=1e-12)
