import math

import numpy as np
import pytest

from orbitwave import correspondence_analysis as ca
from orbitwave import hydrogen_quantum as hq
from orbitwave.hydrogen_quantum import QuantumNumbers
from orbitwave.kepler_classical import make_params


class TestDensityCurve:
    def test_mass_recorded(self):
        grid = np.linspace(0.0, 1.0, 101)
        curve = ca.DensityCurve(grid, np.full(101, 1.0), "quantum")
        assert curve.integral == pytest.approx(1.0, rel=1e-14)
        assert curve.mass_ok

    def test_off_mass_flagged_not_rejected(self):
        grid = np.linspace(0.0, 1.0, 11)
        curve = ca.DensityCurve(grid, np.full(11, 0.5), "quantum")
        assert not curve.mass_ok

    def test_validation(self):
        grid = np.linspace(0.0, 1.0, 11)
        with pytest.raises(ValueError):
            ca.DensityCurve(grid[::-1], np.ones(11), "quantum")
        with pytest.raises(ValueError):
            ca.DensityCurve(grid, -np.ones(11), "quantum")
        with pytest.raises(ValueError):
            ca.DensityCurve(grid, np.ones(11), "banana")


class TestSmooth:
    def test_constant_unchanged(self):
        params = make_params(QuantumNumbers(10, 5, 0))
        grid = np.linspace(0.0, 220.0, 800)
        curve = ca.DensityCurve(grid, np.full(800, 0.7), "quantum")
        out = ca.smooth(curve, params)
        np.testing.assert_allclose(out.values, 0.7, rtol=1e-12)

    def test_mass_preserved(self):
        qn = QuantumNumbers(50, 25, 0)
        curve = ca.quantum_radial_curve(qn)
        out = ca.smooth(curve, make_params(qn))
        assert out.integral == pytest.approx(curve.integral, abs=1e-6)

    def test_never_negative(self):
        qn = QuantumNumbers(20, 5, 0)
        out = ca.smooth(ca.quantum_radial_curve(qn), make_params(qn))
        assert np.all(out.values >= 0.0)

    def test_brings_quantum_closer_to_classical(self):
        qn = QuantumNumbers(50, 25, 0)
        params = make_params(qn)
        quantum = ca.quantum_radial_curve(qn)
        classical = ca.classical_radial_curve(params, quantum.grid)
        smoothed = ca.smooth(quantum, params)
        window = (params.r_peri + 0.05 * (params.r_apo - params.r_peri),
                  params.r_apo - 0.05 * (params.r_apo - params.r_peri))
        assert ca.l1_distance(smoothed, classical, window) < ca.l1_distance(
            quantum, classical, window)

    def test_nonuniform_grid_rejected(self):
        params = make_params(QuantumNumbers(10, 5, 0))
        grid = np.concatenate([np.linspace(0.0, 100.0, 50), np.linspace(101.0, 220.0, 200)])
        curve = ca.DensityCurve(grid, np.ones(250), "quantum")
        with pytest.raises(ValueError):
            ca.smooth(curve, params)


class TestL1Distance:
    def test_identical_curves(self):
        qn = QuantumNumbers(10, 5, 0)
        curve = ca.quantum_radial_curve(qn, points=500)
        assert ca.l1_distance(curve, curve) == 0.0

    def test_symmetry_on_different_grids(self):
        grid_a = np.linspace(0.0, 1.0, 301)
        grid_b = np.linspace(0.0, 1.0, 407)
        f = ca.DensityCurve(grid_a, np.exp(-grid_a), "quantum")
        g = ca.DensityCurve(grid_b, grid_b, "classical")
        assert ca.l1_distance(f, g) == ca.l1_distance(g, f)

    def test_triangle_bound_for_densities(self):
        a = ca.quantum_radial_curve(QuantumNumbers(10, 5, 0), points=800)
        b = ca.classical_radial_curve(make_params(QuantumNumbers(10, 5, 0)), a.grid)
        assert ca.l1_distance(a, b) <= 2.0 + 1e-9

    def test_disjoint_domains_rejected(self):
        f = ca.DensityCurve(np.linspace(0.0, 1.0, 10), np.ones(10), "quantum")
        g = ca.DensityCurve(np.linspace(2.0, 3.0, 10), np.ones(10), "quantum")
        with pytest.raises(ValueError):
            ca.l1_distance(f, g)


class TestEnvelope:
    def test_self_ratio_is_half(self):
        qn = QuantumNumbers(20, 0, 0)
        curve = ca.quantum_radial_curve(qn, points=3000)
        doubled = ca.DensityCurve(curve.grid, 2.0 * curve.values, "classical")
        report = ca.envelope_ratios(curve, doubled, (1.0, 2.0 * 400.0))
        assert report.peaks
        assert all(r == 0.5 for _, r in report.peaks)

    def test_hydrogen_envelope_n50(self):
        report = ca.envelope_check(QuantumNumbers(50, 0, 0))
        assert 0.85 <= report.mean_ratio <= 1.05
        assert report.max_ratio <= 1.10

    def test_hydrogen_envelope_n10_reports(self):
        report = ca.envelope_check(QuantumNumbers(10, 0, 0))
        assert len(report.peaks) >= 5
        print(f"n=10 envelope ratios: mean {report.mean_ratio:.4f} max {report.max_ratio:.4f}")

    def test_oscillator_envelope(self):
        report = ca.oscillator_envelope_check(10)
        assert 0.85 <= report.mean_ratio <= 1.10
        assert report.max_ratio <= 1.10


class TestMassInSupport:
    def test_n10_range(self):
        frac = ca.mass_in_support(QuantumNumbers(10, 0, 0))
        assert 0.8 < frac < 1.0

    def test_classical_is_fully_contained(self):
        # the classical density vanishes outside its support by construction
        from orbitwave import kepler_classical as kc
        params = make_params(QuantumNumbers(10, 5, 0))
        inside = kc.radial_mass(params)
        r = np.array([params.r_peri / 2.0, params.r_apo + 1.0, params.r_apo + 50.0])
        assert np.array_equal(kc.radial_density(params, r), np.zeros(3))
        assert inside == pytest.approx(1.0, abs=1e-8)


class TestConvergenceStudy:
    def test_single_entry(self):
        from fractions import Fraction
        rows = ca.convergence_study(Fraction(1, 2), Fraction(1, 5), [10])
        assert len(rows) == 1
        assert (rows[0].n, rows[0].l, rows[0].m) == (10, 5, 1)
        assert rows[0].radial.l1 > 0.0
        assert rows[0].angular is not None

    def test_non_integer_rejected_with_offending_n(self):
        from fractions import Fraction
        with pytest.raises(ValueError, match="15"):
            ca.convergence_study(Fraction(1, 2), None, [10, 15])

    def test_l0_has_no_angular_report(self):
        from fractions import Fraction
        rows = ca.convergence_study(Fraction(0), None, [10])
        assert rows[0].l == 0 and rows[0].angular is None


class TestSingularLimit:
    def test_distance_decreases(self):
        study = ca.singular_limit_study([5, 10, 20])
        assert study.strictly_decreasing
        d = dict(study.entries)
        assert d[20] < d[5]

    def test_frozen_regression_value(self):
        study = ca.singular_limit_study([5, 10])
        assert dict(study.entries)[5] == pytest.approx(0.20559, abs=5e-4)

    def test_origin_behavior(self):
        # R_n1(0) = 0 while R_n0(0) != 0: the curves can never agree at 0
        for n in (5, 20):
            assert hq.radial_wavefunction(QuantumNumbers(n, 1, 0), 0.0) == 0.0
            assert hq.radial_wavefunction(QuantumNumbers(n, 0, 0), 0.0) != 0.0

    def test_peak_signs_opposite(self):
        # leading Laguerre coefficients of l=0 and l=1 differ by one power of -1
        n = 12
        grid = hq.default_radial_grid(n, 2000)
        y0 = grid * hq.radial_wavefunction(QuantumNumbers(n, 0, 0), grid)
        y1 = grid * hq.radial_wavefunction(QuantumNumbers(n, 1, 0), grid)
        i = int(np.argmax(np.abs(y0)))
        assert y0[i] * y1[i] < 0.0

    def test_small_lists_rejected(self):
        with pytest.raises(ValueError):
            ca.singular_limit_study([5])
        with pytest.raises(ValueError):
            ca.singular_limit_study([1, 5])


class TestLastTermApprox:
    def test_n1_identity(self):
        for r in (0.1, 1.0, 5.0, 17.0):
            assert ca.last_term_approx(1, r) == pytest.approx(2.0 * math.exp(-r), rel=1e-14)

    def test_strictly_positive(self):
        r = np.geomspace(1e-3, 1e3, 25)
        assert np.all(ca.last_term_approx(12, r) > 0.0)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            ca.last_term_approx(0, 1.0)
        with pytest.raises(ValueError):
            ca.last_term_approx(3, 0.0)

    def test_error_report_runs(self):
        err = ca.last_term_relative_error(10)
        assert math.isfinite(err) and err > 0.0
