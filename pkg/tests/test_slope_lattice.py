#!/usr/bin/env python3
"""
Tests for slope arithmetic: τ, prescribed slopes, Pic⁰, density, nef solutions and K₀
"""
import os
import sys
from fractions import Fraction

import pytest

sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.arith.slope_lattice import (
    basis_determinant,
    density,
    generator_degrees,
    k0_report,
    line_bundle_name,
    nef_guarantee_bound,
    nef_solve,
    pic0_generators,
    pic0_index,
    polystable_bundle,
    prime_slope_solvable,
    slope_lattice,
    solve_slope,
    tau,
    tau_factorization,
)
from src.common.errors import FlagVarietyError, IndexOutOfRange, InvalidRank, NotIntegral, Unsolvable
from src.flag.parabolic_geometry import SplitBundle, degree
from src.stability.slope_stability import Verdict, slope, split_stability
from tests.flag_samples import random_flag, random_kahler


class TestTau:
    """Test τ([ω]) and its factorization"""

    def test_wallach_values(self, wallach):
        assert tau(wallach, wallach.kahler_class([2, 2])) == 12
        assert tau(wallach, wallach.kahler_class([1, 1])) == 3
        assert tau(wallach, wallach.kahler_class([2, 1])) == 1
        assert generator_degrees(wallach, wallach.kahler_class([2, 1])) == (5, 8)

    def test_projective_plane(self, projective_plane):
        """Test τ(kH) = k on P²"""
        for k in range(1, 7):
            assert tau(projective_plane, projective_plane.kahler_class([k])) == k

    def test_factorization(self, wallach):
        assert tau_factorization(wallach, wallach.kahler_class([2, 2])) == {2: 2, 3: 1}
        assert tau_factorization(wallach, wallach.kahler_class([2, 1])) == {}

    def test_prime_slopes(self, projective_plane, wallach):
        assert prime_slope_solvable(projective_plane, projective_plane.kahler_class([2]), 2)
        assert not prime_slope_solvable(projective_plane, projective_plane.kahler_class([2]), 3)
        assert not prime_slope_solvable(wallach, wallach.kahler_class([2, 2]), 3)
        assert prime_slope_solvable(wallach, wallach.kahler_class([2, 1]), 7)
        with pytest.raises(FlagVarietyError):
            prime_slope_solvable(wallach, wallach.kahler_class([2, 1]), 4)

    def test_rational_omega_rejected(self, wallach):
        with pytest.raises(NotIntegral):
            tau(wallach, wallach.kahler_class([Fraction(1, 2), 1]))


class TestSolveSlope:
    """Test integral solutions of deg = m₀"""

    def test_every_slope_when_tau_is_one(self, wallach):
        omega = wallach.kahler_class([2, 1])
        for target in range(-100, 101):
            solution = solve_slope(wallach, omega, target)
            assert slope(wallach, omega, SplitBundle.of(solution)) == target

    def test_multiples_of_tau(self, wallach, wallach_omega):
        for target in range(-60, 61, 12):
            solution = solve_slope(wallach, wallach_omega, target)
            assert degree(wallach, wallach_omega, solution) == target

    def test_unsolvable(self, wallach, wallach_omega):
        with pytest.raises(Unsolvable) as excinfo:
            solve_slope(wallach, wallach_omega, 13)
        assert excinfo.value.tau == 12
        assert excinfo.value.target == 13

    def test_solvable_exactly_on_multiples_of_tau(self, wallach, wallach_omega):
        """Test m₀ ∈ [-100, 100] is a slope at ω = (2,2) iff 12 divides it"""
        for target in range(-100, 101):
            if target % 12 == 0:
                solution = solve_slope(wallach, wallach_omega, target)
                assert slope(wallach, wallach_omega, SplitBundle.of(solution)) == target
            else:
                with pytest.raises(Unsolvable):
                    solve_slope(wallach, wallach_omega, target)

    def test_random_flags(self, rng):
        """Test solutions exist exactly for multiples of τ"""
        for _ in range(20):
            flag = random_flag(rng)
            omega = random_kahler(rng, flag, high=4, integral=True)
            t = tau(flag, omega)
            assert slope(flag, omega, SplitBundle.of(solve_slope(flag, omega, 3 * t))) == 3 * t
            if t > 1:
                with pytest.raises(Unsolvable):
                    solve_slope(flag, omega, t + 1)


class TestPic0:
    """Test the degree-zero lattice"""

    def test_wallach_generators(self, wallach, wallach_omega):
        basis = pic0_generators(wallach, wallach_omega, 0)
        assert [b.weight.coords for b in basis] == [(-1, 1)]
        assert line_bundle_name(wallach, basis[0]) == "𝒪_1(-1)⊗𝒪_2(1)"

    def test_wallach_coprime_degrees(self, wallach):
        omega = wallach.kahler_class([2, 1])
        assert [b.weight.coords for b in pic0_generators(wallach, omega, 0)] == [(-8, 5)]
        assert [b.weight.coords for b in pic0_generators(wallach, omega, 1)] == [(8, -5)]
        assert pic0_index(wallach, omega) == 1

    def test_generators_have_degree_zero(self, rng):
        for _ in range(30):
            flag = random_flag(rng)
            omega = random_kahler(rng, flag, high=4, integral=True)
            for xi in pic0_generators(flag, omega):
                assert degree(flag, omega, xi) == 0
            assert len(pic0_generators(flag, omega)) == flag.picard_number - 1
            assert pic0_index(flag, omega) >= 1

    def test_picard_rank_two_index_is_one(self, rng):
        """Test a single generator (-q_α, q_γ) with coprime entries spans Pic⁰"""
        for _ in range(20):
            flag = random_flag(rng, types=[('A', 2), ('B', 2), ('G', 2)])
            if flag.picard_number != 2:
                continue
            assert pic0_index(flag, random_kahler(rng, flag, high=9, integral=True)) == 1

    def test_basis_determinant(self, wallach):
        """Test det(ω, ξ) = ω₁q₁ + ω₂q₂"""
        omega = wallach.kahler_class([2, 1])
        assert basis_determinant(wallach, omega) == 2 * 5 + 1 * 8

    def test_pivot_outside_picard_indices(self, projective_plane):
        with pytest.raises(IndexOutOfRange):
            pic0_generators(projective_plane, projective_plane.kahler_class([2]), 1)

    def test_slope_lattice(self, wallach, wallach_omega):
        lattice = slope_lattice(wallach, wallach_omega, target=24)
        assert lattice.tau == 12
        assert degree(wallach, wallach_omega, lattice.particular) == 24
        assert lattice.gamma == 0
        assert len(lattice.pic0_basis) == 1


class TestDensityAndNef:
    """Test natural density and nonnegative solutions"""

    def test_density(self, wallach, wallach_omega):
        report = density(wallach, wallach_omega, 120)
        assert report.count == 10
        assert report.limit == Fraction(1, 12)
        assert report.gap == 0

    def test_density_gap_bound(self, wallach, wallach_omega):
        for upper in range(1, 200, 7):
            report = density(wallach, wallach_omega, upper)
            assert 0 <= report.gap < report.bound

    @pytest.mark.parametrize("weights,t", [([2, 1], 1), ([2, 2], 12)])
    @pytest.mark.parametrize("upper", [10, 100, 1000])
    def test_density_against_counted_slopes(self, wallach, weights, t, upper):
        """Test |1/τ - #{m ≤ n solvable}/n| < τ/n by solving every slope up to n"""
        omega = wallach.kahler_class(weights)
        solvable = 0
        for target in range(1, upper + 1):
            try:
                solve_slope(wallach, omega, target)
            except Unsolvable:
                continue
            solvable += 1
        report = density(wallach, omega, upper)
        assert report.limit == Fraction(1, t)
        assert report.count == solvable
        assert abs(Fraction(1, t) - Fraction(solvable, upper)) < Fraction(t, upper)
        assert report.gap < report.bound

    def test_density_bad_bound(self, wallach, wallach_omega):
        with pytest.raises(FlagVarietyError):
            density(wallach, wallach_omega, 0)

    def test_guarantee_bound(self, wallach):
        omega = wallach.kahler_class([2, 1])
        assert nef_guarantee_bound(wallach, omega, 0) == 32
        assert nef_guarantee_bound(wallach, omega, 1) == 35

    def test_nef_solutions_above_bound(self, wallach):
        """Test every slope from the bound up has a dominant solution"""
        omega = wallach.kahler_class([2, 1])
        for target in range(32, 80):
            result = nef_solve(wallach, omega, target)
            assert result.found and result.guaranteed
            assert all(c >= 0 for c in result.solution.weight.coords)
            assert degree(wallach, omega, result.solution) == target

    def test_frobenius_gap(self, wallach):
        """Test 27 = 5·8 - 5 - 8 has no nonnegative solution"""
        result = nef_solve(wallach, wallach.kahler_class([2, 1]), 27)
        assert not result.found
        assert not result.guaranteed

    def test_nef_respects_tau(self, wallach, wallach_omega):
        assert not nef_solve(wallach, wallach_omega, 13).found
        assert nef_solve(wallach, wallach_omega, 36).found


class TestK0AndPolystable:
    """Test the K₀ report and polystable constructions"""

    def test_k0_statement(self, wallach, wallach_omega):
        report = k0_report(wallach, wallach_omega)
        assert report.statement == "K₀ ≅ SK₀ ⊕ ⟨𝒪_1(-1)⊗𝒪_2(1)⟩ ⊕ 12ℤ"
        assert report.pic0_index == 1

    def test_k0_statement_picard_one(self, projective_plane):
        report = k0_report(projective_plane, projective_plane.kahler_class([2]))
        assert report.statement == "K₀ ≅ SK₀ ⊕ 2ℤ"
        assert report.pic0_basis == ()

    def test_k0_statement_tau_one(self, wallach):
        report = k0_report(wallach, wallach.kahler_class([2, 1]))
        assert report.statement == "K₀ ≅ SK₀ ⊕ ⟨𝒪_1(-8)⊗𝒪_2(5)⟩ ⊕ ℤ"

    @pytest.mark.parametrize("rank", [1, 2, 3, 5])
    def test_polystable_bundle(self, wallach, rank):
        omega = wallach.kahler_class([2, 1])
        bundle = polystable_bundle(wallach, omega, 7, rank)
        assert bundle.rank == rank
        verdict = split_stability(wallach, omega, bundle)
        assert verdict.slope == 7
        assert verdict.verdict is (Verdict.STABLE if rank == 1 else Verdict.POLYSTABLE)
        assert len({s.weight.coords for s in bundle.summands}) == rank

    def test_polystable_on_picard_one(self, projective_plane):
        bundle = polystable_bundle(projective_plane, projective_plane.kahler_class([2]), 4, 3)
        assert all(s.weight.coords == (2, 0) for s in bundle.summands)

    def test_polystable_invalid_rank(self, wallach, wallach_omega):
        with pytest.raises(InvalidRank):
            polystable_bundle(wallach, wallach_omega, 12, 0)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
