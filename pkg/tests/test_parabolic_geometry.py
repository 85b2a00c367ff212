#!/usr/bin/env python3
"""
Tests for parabolic flag geometry: Φ_I⁺, δ_P, volume and degree
"""
import os
import sys
from fractions import Fraction
from math import factorial

import pytest

sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.common.errors import (
    DimensionMismatch,
    DimensionTooSmall,
    IndexOutOfRange,
    NonInvariantClass,
    NotIntegral,
    NotKahler,
    RootNotInParabolicSet,
)
from src.flag.parabolic_geometry import (
    SplitBundle,
    anticanonical,
    anticanonical_kahler_class,
    contraction,
    curve_class_decomposition,
    degree,
    effective,
    eigenvalues,
    find_phi_root,
    schubert_divisor,
    volume,
)
from src.rootsys.root_system import build_root_system
from tests.flag_samples import SWEEP_TYPES, make_flag, random_flag, random_integral_class, random_kahler


class TestFlagConstruction:
    """Test Φ_I⁺, dimension and δ_P"""

    def test_wallach(self, wallach):
        """Test the A2 full flag"""
        assert wallach.dimension == 3
        assert wallach.picard_number == 2
        assert [beta.coeffs for beta in wallach.phi] == [(1, 0), (0, 1), (1, 1)]
        assert wallach.delta_p.coords == (2, 2)

    def test_projective_plane(self, projective_plane):
        """Test P² = A2/P with I = {α2}"""
        assert projective_plane.dimension == 2
        assert [beta.coeffs for beta in projective_plane.phi] == [(1, 0), (1, 1)]
        assert projective_plane.delta_p.coords == (3, 0)

    def test_projective_line(self, projective_line):
        assert projective_line.dimension == 1
        assert projective_line.delta_p.coords == (2,)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_projective_spaces(self, n):
        """Test A_n/P with I = Δ∖{α1} is Pⁿ with K⁻¹ = 𝒪(n+1)"""
        flag = make_flag('A', n, range(1, n))
        assert flag.dimension == n
        assert flag.delta_p[0] == n + 1

    @pytest.mark.parametrize("series,rank", SWEEP_TYPES + [('F', 4), ('E', 6)])
    def test_full_flag_dimension(self, series, rank):
        """Test I = ∅ gives all positive roots and δ_B = 2ϱ"""
        flag = make_flag(series, rank)
        assert flag.dimension == len(build_root_system(series, rank).positive_roots)
        assert flag.delta_p.coords == (2,) * rank

    def test_phi_excludes_roots_supported_on_parabolic(self):
        """Test a root is dropped iff it is supported on I"""
        flag = make_flag('B', 3, [0, 1])
        for beta in flag.root_system.positive_roots:
            assert (beta in flag.phi) == (beta.coeffs[2] > 0)

    def test_parabolic_equal_to_delta_rejected(self):
        with pytest.raises(DimensionTooSmall):
            make_flag('A', 2, [0, 1])

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            make_flag('A', 2, [2])

    def test_delta_positive_on_picard_indices(self, rng):
        """Test δ_P is positive on Δ∖I for random flags"""
        for _ in range(30):
            flag = random_flag(rng)
            assert all(flag.delta_p[a] > 0 for a in flag.picard_indices)
            assert all(flag.delta_p[a] == 0 for a in flag.parabolic)


class TestClasses:
    """Test invariant and Kähler classes and split bundles"""

    def test_short_and_full_coordinates(self, projective_plane):
        """Test classes accept Δ∖I or full-rank coordinates"""
        assert projective_plane.invariant_class([3]).weight.coords == (3, 0)
        assert projective_plane.invariant_class([3, 0]).weight.coords == (3, 0)

    def test_non_invariant_rejected(self, projective_plane):
        with pytest.raises(NonInvariantClass):
            projective_plane.invariant_class([3, 1])

    def test_wrong_length(self, wallach):
        with pytest.raises(DimensionMismatch):
            wallach.invariant_class([1, 2, 3])

    @pytest.mark.parametrize("values", [[0, 1], [1, -1], [Fraction(-1, 2), 3]])
    def test_not_kahler(self, wallach, values):
        """Test nonpositive coordinates are refused"""
        with pytest.raises(NotKahler):
            wallach.kahler_class(values)

    def test_floats_refused(self, wallach):
        with pytest.raises(TypeError):
            wallach.invariant_class([0.5, 1])

    def test_split_bundle_requires_integral_summands(self, wallach):
        with pytest.raises(NotIntegral):
            wallach.split_bundle([[1, 0], [Fraction(1, 2), 0]])

    def test_split_bundle_determinant(self, wallach):
        bundle = wallach.split_bundle([[1, 0], [0, 1], [2, -3]])
        assert bundle.rank == 3
        assert bundle.determinant.coords == (3, -2)
        twisted = bundle.twist(wallach.invariant_class([1, 1]))
        assert twisted.determinant.coords == (6, 1)

    def test_empty_bundle(self):
        with pytest.raises(DimensionMismatch):
            SplitBundle(())

    def test_effective(self, wallach):
        assert effective(wallach.invariant_class([1, 0]), wallach)
        assert not effective(wallach.invariant_class([0, 0]), wallach)
        assert not effective(wallach.invariant_class([2, -1]), wallach)


class TestVolumeAndDegree:
    """Test Vol, Λ and deg on worked examples and random flags"""

    def test_wallach_volume(self, wallach, wallach_omega):
        assert volume(wallach, wallach_omega) == 8

    def test_wallach_volume_general(self, wallach):
        """Test Vol = s1 s2 (s1 + s2) / 2"""
        for s1, s2 in [(1, 1), (2, 1), (Fraction(1, 3), 5)]:
            omega = wallach.kahler_class([s1, s2])
            assert volume(wallach, omega) == Fraction(s1) * s2 * (Fraction(s1) + s2) / 2

    def test_projective_plane_volume(self, projective_plane):
        """Test Vol(P², kH) = k²/2"""
        for k in range(1, 6):
            assert volume(projective_plane, projective_plane.kahler_class([k])) == Fraction(k * k, 2)

    def test_wallach_degree_formula(self, wallach, wallach_omega):
        """Test deg 𝒪(a,b) = 12(a+b) and Λ = 3(a+b)/4 at ω = (2,2)"""
        for a in range(-5, 6):
            for b in range(-5, 6):
                cls = wallach.invariant_class([a, b])
                assert degree(wallach, wallach_omega, cls) == 12 * (a + b)
                assert contraction(wallach, wallach_omega, cls) == Fraction(3 * (a + b), 4)

    def test_generator_degrees(self, wallach):
        """Test deg 𝒪_1(1) = 5 and deg 𝒪_2(1) = 8 at ω = (2,1)"""
        omega = wallach.kahler_class([2, 1])
        assert degree(wallach, omega, schubert_divisor(wallach, 0)) == 5
        assert degree(wallach, omega, schubert_divisor(wallach, 1)) == 8

    def test_anticanonical_degree_is_top_intersection(self, rng):
        """Test deg_ω K⁻¹ at ω = c₁(K⁻¹) equals n!·Vol"""
        for _ in range(20):
            flag = random_flag(rng)
            omega = anticanonical_kahler_class(flag)
            assert degree(flag, omega, anticanonical(flag)) == factorial(flag.dimension) * volume(flag, omega)

    def test_volume_homogeneity(self, rng):
        """Test Vol(tω) = tⁿ Vol(ω) and Λ_{tω}(ψ) = Λ_ω(ψ)/t"""
        for _ in range(30):
            flag = random_flag(rng)
            omega = random_kahler(rng, flag)
            psi = random_integral_class(rng, flag)
            t = Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 5)))
            scaled = flag.kahler_class(omega.weight.scale(t))
            assert volume(flag, scaled) == t ** flag.dimension * volume(flag, omega)
            assert contraction(flag, scaled, psi) == contraction(flag, omega, psi) / t

    def test_degree_is_additive(self, rng):
        """Test deg(⊕) is the sum of summand degrees"""
        for _ in range(30):
            flag = random_flag(rng)
            omega = random_kahler(rng, flag)
            first, second = random_integral_class(rng, flag), random_integral_class(rng, flag)
            bundle = SplitBundle.of(first, second)
            assert degree(flag, omega, bundle) == degree(flag, omega, first) + degree(flag, omega, second)

    def test_integral_degrees_are_integers(self, rng):
        """Test deg_ω of an integral class at an integral ω is an integer"""
        for _ in range(30):
            flag = random_flag(rng)
            omega = random_kahler(rng, flag, integral=True)
            assert degree(flag, omega, random_integral_class(rng, flag)).denominator == 1

    def test_eigenvalues(self, wallach, wallach_omega):
        psi = wallach.invariant_class([4, 4])
        assert eigenvalues(wallach, wallach_omega, psi) == (2, 2, 2)


class TestCurvesAndDivisors:
    """Test curve decompositions and Schubert divisors"""

    def test_curve_decomposition_b2(self):
        """Test [P¹_β] in terms of the generator curves of B2"""
        flag = make_flag('B', 2)
        assert curve_class_decomposition(flag, find_phi_root(flag, (1, 1))).coords == (2, 1)
        assert curve_class_decomposition(flag, find_phi_root(flag, (1, 2))).coords == (1, 1)

    def test_root_outside_phi(self, projective_plane):
        with pytest.raises(RootNotInParabolicSet):
            find_phi_root(projective_plane, (0, 1))

    def test_schubert_divisor_in_parabolic(self, projective_plane):
        with pytest.raises(IndexOutOfRange):
            schubert_divisor(projective_plane, 1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
