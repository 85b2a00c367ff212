#!/usr/bin/env python3
"""
Tests for the lifted angle Θ̂ and window classification
"""
import os
import sys
from fractions import Fraction

import numpy as np
import pytest

sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.common.errors import BoundaryAmbiguous, NonInvariantClass, PhaseOutOfRange
from src.dhym.central_charge import WholeSpace, central_charge
from src.dhym.phase_angles import Window, arctan_sum, classify_window, lifted_angle, window_thresholds
from src.flag.parabolic_geometry import volume
from tests.flag_samples import random_flag, random_integral_class, random_kahler


class TestLiftedAngle:
    """Test Θ̂ = Σ arctan q_β"""

    def test_wallach_hypercritical(self, wallach, wallach_omega):
        """Test ψ = (4,4) gives q = 2 on every root and Θ̂ = 3 arctan 2"""
        report = lifted_angle(wallach, wallach_omega, wallach.invariant_class([4, 4]))
        assert report.eigenvalues == (2, 2, 2)
        assert report.theta_hat == pytest.approx(3 * np.arctan(2.0), abs=1e-12)
        assert report.window is Window.HYPERCRITICAL
        assert report.modulus_sq == 125

    def test_wallach_subcritical(self, wallach, wallach_omega):
        report = lifted_angle(wallach, wallach_omega, wallach.invariant_class([-1, -1]))
        assert report.theta_hat == pytest.approx(-3 * np.arctan(0.5), abs=1e-12)
        assert report.window is Window.SUBCRITICAL
        assert not report.window.is_supercritical

    def test_boundary_is_ambiguous(self, wallach):
        """Test q = (2, 0, 1/2) lands exactly on (n-2)π/2 = π/2"""
        omega = wallach.kahler_class([1, 3])
        report = lifted_angle(wallach, omega, wallach.invariant_class([2, 0]))
        assert report.eigenvalues == (2, 0, Fraction(1, 2))
        assert report.theta_hat == pytest.approx(np.pi / 2, abs=1e-12)
        assert report.ambiguous
        assert report.window is None

    def test_wallach_closed_form(self, rng, wallach, wallach_omega):
        """Test Θ̂(s₁,s₂) = arctan(s₁/2) + arctan(s₂/2) + arctan((s₁+s₂)/4) for random rationals"""
        for _ in range(100):
            s1 = Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 10)))
            s2 = Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 10)))
            report = lifted_angle(wallach, wallach_omega, wallach.invariant_class([s1, s2]))
            expected = np.arctan(float(s1) / 2) + np.arctan(float(s2) / 2) + np.arctan(float(s1 + s2) / 4)
            assert report.theta_hat == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("scale,window", [
        (10 ** 17, Window.HYPERCRITICAL),
        (10 ** 30, Window.HYPERCRITICAL),
        (-10 ** 17, Window.SUPERCRITICAL),
    ])
    def test_saturated_angle_on_a_curve(self, projective_line, scale, window):
        """Test arctan saturating at ±π/2 still yields a window on P¹"""
        report = lifted_angle(projective_line, projective_line.kahler_class([1]),
                              projective_line.invariant_class([scale]))
        assert report.window is window
        assert abs(report.theta_hat) == pytest.approx(np.pi / 2)

    @pytest.mark.parametrize("scale,window", [(10 ** 17, Window.HYPERCRITICAL), (-10 ** 17, Window.SUBCRITICAL)])
    def test_saturated_angle_on_wallach(self, wallach, scale, window):
        report = lifted_angle(wallach, wallach.kahler_class([1, 1]), wallach.invariant_class([scale, scale]))
        assert report.window is window
        assert not report.ambiguous

    def test_zero_class(self, wallach, wallach_omega):
        report = lifted_angle(wallach, wallach_omega, wallach.invariant_class([0, 0]))
        assert report.theta_hat == 0.0
        assert report.modulus_sq == 1
        assert report.calibration_modulus == pytest.approx(1.0)

    def test_non_invariant_psi(self, projective_plane):
        with pytest.raises(NonInvariantClass):
            lifted_angle(projective_plane, projective_plane.kahler_class([1]),
                         projective_plane.invariant_class([1, 1]))

    def test_matches_argument_of_total_charge(self, rng):
        """Test e^{i(Θ̂ + π - nπ/2)} is the direction of Z(ψ, X)"""
        for _ in range(100):
            flag = random_flag(rng)
            omega = random_kahler(rng, flag)
            psi = random_integral_class(rng, flag)
            report = lifted_angle(flag, omega, psi)
            z = complex(central_charge(flag, omega, psi, WholeSpace()).value)
            expected = np.exp(1j * (report.theta_hat + np.pi - flag.dimension * np.pi / 2))
            assert z / abs(z) == pytest.approx(expected, abs=1e-9)
            assert abs(report.theta_hat) < flag.dimension * np.pi / 2

    def test_modulus_matches_volume(self, rng):
        """Test |∫(ω + iψ)ⁿ|/n! = Vol·√Π(1+q²)"""
        for _ in range(50):
            flag = random_flag(rng)
            omega = random_kahler(rng, flag)
            psi = random_integral_class(rng, flag)
            report = lifted_angle(flag, omega, psi)
            z = central_charge(flag, omega, psi, WholeSpace()).value
            assert z.abs_sq() == volume(flag, omega) ** 2 * report.modulus_sq


class TestWindows:
    """Test window classification and the boundary guard"""

    def test_thresholds(self):
        assert window_thresholds(3) == pytest.approx((np.pi / 2, np.pi))

    @pytest.mark.parametrize("theta,n,window", [
        (3.3, 3, Window.HYPERCRITICAL),
        (2.0, 3, Window.SUPERCRITICAL),
        (-1.0, 3, Window.SUBCRITICAL),
        (0.5, 1, Window.HYPERCRITICAL),
        (-0.5, 1, Window.SUPERCRITICAL),
        (1.6, 2, Window.HYPERCRITICAL),
        (1.0, 2, Window.SUPERCRITICAL),
        (0.3, 2, Window.SUPERCRITICAL),
    ])
    def test_classification(self, theta, n, window):
        assert classify_window(theta, n).window is window

    def test_dimension_one_is_always_supercritical(self):
        """Test every admissible angle on a curve counts as supercritical"""
        for theta in np.linspace(-1.5, 1.5, 13):
            if abs(theta) > 1e-6:
                assert classify_window(float(theta), 1).window.is_supercritical

    @pytest.mark.parametrize("theta,n", [(np.pi / 2, 3), (np.pi, 3), (0.0, 2), (np.pi / 2 + 1e-12, 3)])
    def test_boundary_ambiguous(self, theta, n):
        with pytest.raises(BoundaryAmbiguous) as excinfo:
            classify_window(theta, n)
        assert excinfo.value.distance < 1e-9

    def test_custom_epsilon(self):
        """Test a wider guard catches nearby angles"""
        with pytest.raises(BoundaryAmbiguous):
            classify_window(np.pi + 1e-4, 3, epsilon=1e-3)
        assert classify_window(np.pi + 1e-4, 3).window is Window.HYPERCRITICAL

    @pytest.mark.parametrize("theta,n", [(3 * np.pi / 2, 3), (-2.0, 1), (5.0, 2)])
    def test_out_of_range(self, theta, n):
        with pytest.raises(PhaseOutOfRange):
            classify_window(theta, n)

    def test_arctan_sum_empty(self):
        assert arctan_sum([]) == 0.0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
