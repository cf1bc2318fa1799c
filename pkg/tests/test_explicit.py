"""Truncated explicit-formula oracles: assembly, residuals, convergence.

Every oracle pits a direct prime-power sum against an assembly of main
term, central constants, a truncated zero sum, and a trivial-zero tail.
The residual then measures pure zero-sum truncation (plus rounding), so
these tests freeze measured residuals and check they sit inside the
configured tolerances, that they shrink on average as the truncation
grows, and that the algebraically derived formulas recombine their
ingredients exactly.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from prime_bias_lab import characters, zeros
from prime_bias_lab.bias_sums import SumSpec, riesz_sum
from prime_bias_lab.config import ResidualTolerances
from prime_bias_lab.explicit import (
    SingularityError,
    character_log_weighted_formula,
    character_power_sum_formula,
    character_shifted_formula,
    log_weighted_formula,
    power_sum_formula,
    residual_profile,
    residue_zero_formula,
    shifted_log_weighted_formula,
    shifted_riesz_decomposition,
    sqrt_scale_formula,
    trivial_zero_tail,
    zero_block,
)
from prime_bias_lab.specials import central_constants

TOL = ResidualTolerances()


# ---------------------------------------------------------------------------
# Building blocks.


class TestZeroBlock:
    def test_matches_manual_conjugate_pair_sum(self, zeros2000):
        gam = zeros2000.ordinates[:50]
        s = 0.3 + 2.0j
        x = 500.5
        rho = 0.5 + 1j * gam
        manual = np.sum(x ** (rho - s) / (rho - s)) + np.sum(
            x ** (np.conj(rho) - s) / (np.conj(rho) - s)
        )
        assert zero_block(x, gam, s, 1, symmetric=True) == pytest.approx(
            complex(manual), abs=1e-12
        )

    def test_signed_spectrum_sums_one_term_each(self, zeros2000):
        gam = zeros2000.ordinates[:10]
        signed = np.sort(np.concatenate([-gam, gam]))
        sym = zero_block(1000.5, gam, 0.5 + 0j, 2, symmetric=True)
        both = zero_block(1000.5, signed, 0.5 + 0j, 2, symmetric=False)
        assert both == pytest.approx(sym, abs=1e-12)

    def test_empty_spectrum_is_zero(self):
        assert zero_block(100.0, np.array([]), 0.5 + 0j, 1, True) == 0.0


class TestTrivialTail:
    """The tail sum_k x^(-2k-kappa-s)/(2k+kappa+s)^p, summed to < 1e-15."""

    def test_value_at_ten_central(self):
        tail = trivial_zero_tail(10.0, 0.5)
        brute8 = math.fsum(
            10 ** (-2 * k - 0.5) / (2 * k + 0.5) for k in range(1, 9)
        )
        assert abs(tail - brute8) <= 1e-14

    def test_three_terms_leave_sub_nano_remainder(self):
        # The k = 4 term is ~3.8e-10, so three terms are *not* enough for
        # 1e-14; they are enough for 1e-9.  Pin both sides of that fact.
        tail = trivial_zero_tail(10.0, 0.5)
        brute3 = math.fsum(
            10 ** (-2 * k - 0.5) / (2 * k + 0.5) for k in (1, 2, 3)
        )
        assert abs(tail - brute3) <= 1e-9
        assert abs(tail - brute3) >= 1e-11

    def test_odd_parity_tail_starts_at_three_halves(self):
        # kappa = 1 shifts the exponents: the leading term is
        # x^(-3/2)/(3/2) and dominates the rest at x = 10.
        t1 = complex(trivial_zero_tail(10.0, 0.5, power=1, kappa=1))
        first = 10.0 ** (-1.5) / 1.5
        assert t1.real > first
        assert abs(t1 - first) <= 0.005 * first

    def test_square_denominator_is_smaller(self):
        t1 = abs(trivial_zero_tail(50.0, 0.5, power=1))
        t2 = abs(trivial_zero_tail(50.0, 0.5, power=2))
        assert 0 < t2 < t1

    def test_rejects_x_at_most_one(self):
        with pytest.raises(ValueError, match="x must be > 1"):
            trivial_zero_tail(1.0, 0.5)


# ---------------------------------------------------------------------------
# General-s power-sum oracle.


class TestPowerSumFormula:
    def test_psi_formula_residual_at_thousand(self, table_e6, zeros2000):
        # s = 0 recovers the psi(x) formula.  The power-1 zero sum
        # converges only conditionally, so at this truncation the
        # residual is a few tenths; the configured bound reflects that.
        e = power_sum_formula(1000.5, 0.0, table_e6, zeros2000)
        assert e.residual == pytest.approx(0.16778644122155129, abs=1e-9)
        assert e.residual <= TOL.power_sum_low_s
        assert e.n_zeros == 4000
        assert e.t_max == pytest.approx(2515.286482924738, abs=1e-9)

    def test_assembled_matches_part_sum(self, table_e6, zeros2000):
        e = power_sum_formula(1000.5, 0.0, table_e6, zeros2000)
        assert e.assembled == (
            e.main_term + e.constant_part + e.zero_part + e.trivial_tail
        )
        assert e.residual == abs(e.direct_value - e.assembled)

    def test_conjugate_point_gives_conjugate_result(self, table_e6, zeros2000):
        ea = power_sum_formula(1000.5, 0.3 + 2.0j, table_e6, zeros2000)
        eb = power_sum_formula(1000.5, 0.3 - 2.0j, table_e6, zeros2000)
        assert ea.assembled == np.conj(eb.assembled)
        assert ea.direct_value == np.conj(eb.direct_value)
        assert ea.residual == eb.residual

    def test_pole_at_one_raises(self, table_e6, zeros2000):
        with pytest.raises(SingularityError, match="pole at s = 1"):
            power_sum_formula(1000.5, 1.0, table_e6, zeros2000)

    def test_trivial_zero_raises(self, table_e6, zeros2000):
        with pytest.raises(SingularityError, match="trivial zero"):
            power_sum_formula(1000.5, -2.0, table_e6, zeros2000)

    def test_nontrivial_zero_raises(self, table_e6, zeros2000):
        s = 0.5 + 14.134725141734693j
        with pytest.raises(SingularityError, match="nontrivial zero"):
            power_sum_formula(1000.5, s, table_e6, zeros2000)

    def test_prime_power_x_moves_off_the_jump(self, table_e6, zeros2000):
        e = power_sum_formula(243.0, 0.0, table_e6, zeros2000)
        assert e.x == 243.5
        assert not e.strict

    def test_strict_mode_stays_on_the_jump(self, table_e6, zeros2000):
        e = power_sum_formula(243.0, 0.0, table_e6, zeros2000, strict=True)
        assert e.x == 243.0
        assert e.strict


class TestSqrtScaleFormula:
    """Oracle for the primed sum of Lambda(n)/sqrt(n), the s = 1/2 case."""

    def test_residual_at_reference_scale(self, table_e6, zeros2000):
        e = sqrt_scale_formula(10000.5, table_e6, zeros2000)
        assert e.residual == pytest.approx(0.012830908878498803, abs=1e-9)
        assert e.residual <= TOL.sqrt_scale

    def test_residual_off_grid(self, table_e6, zeros2000):
        e = sqrt_scale_formula(10**4.5, table_e6, zeros2000)
        assert e.residual == pytest.approx(0.0008013467208911607, abs=1e-9)
        assert e.residual <= TOL.sqrt_scale

    def test_main_term_is_twice_root_x(self, table_e6, zeros2000):
        e = sqrt_scale_formula(10000.5, table_e6, zeros2000)
        assert e.main_term == pytest.approx(2.0 * math.sqrt(10000.5))
        assert e.constant_part == pytest.approx(
            -central_constants().zeta_logderiv_half
        )

    def test_half_weight_boundary_in_strict_mode(self, table_e6, zeros2000):
        # At a prime-power jump the truncated formula converges to the
        # half-weight value, so the strict residual stays moderate.
        e = sqrt_scale_formula(243.0, table_e6, zeros2000, strict=True)
        assert e.residual <= TOL.sqrt_scale


class TestLogWeightedFormula:
    """Oracle for f_log(x) - 4 sqrt(x), the absolutely convergent one."""

    @pytest.mark.parametrize(
        "x, frozen",
        [
            (1000.0, 3.3492469455609353e-06),
            (10000.0, 7.227514824847958e-06),
            (1e6, 4.427138946994091e-06),
        ],
    )
    def test_residuals_are_tiny(self, table_e6, zeros2000, x, frozen):
        e = log_weighted_formula(x, table_e6, zeros2000)
        assert e.residual == pytest.approx(frozen, abs=1e-9)
        assert e.residual <= TOL.log_weighted

    def test_residual_bounded_on_log_grid(self, table_e6, zeros2000):
        xs = np.geomspace(100.0, 1e6, 20)
        res = [
            log_weighted_formula(float(x), table_e6, zeros2000).residual
            for x in xs
        ]
        assert max(res) <= TOL.log_weighted

    def test_constant_part_uses_both_central_derivatives(
        self, table_e6, zeros2000
    ):
        cc = central_constants()
        e = log_weighted_formula(1000.0, table_e6, zeros2000)
        expect = -cc.zeta_logderiv_half * math.log(1000.0) - (
            cc.zeta_logderiv_prime_half
        )
        assert e.constant_part == pytest.approx(expect, abs=1e-12)


class TestResidualProfile:
    def test_log_weighted_mean_residual_shrinks_with_truncation(
        self, table_e6, zeros2000
    ):
        xs = np.geomspace(100.0, 1e6, 20)
        prof = residual_profile(
            log_weighted_formula, xs, table_e6, zeros2000
        )
        assert set(prof) == {500.0, 2000.0}
        assert prof[2000.0] < prof[500.0]
        assert prof[2000.0] <= TOL.log_weighted

    def test_sqrt_scale_mean_residual_shrinks_with_truncation(
        self, table_e6, zeros2000
    ):
        xs = np.geomspace(100.0, 1e6, 20)
        prof = residual_profile(sqrt_scale_formula, xs, table_e6, zeros2000)
        assert prof[2000.0] < prof[500.0]
        assert prof[500.0] == pytest.approx(0.044210740039397754, abs=1e-9)
        assert prof[2000.0] == pytest.approx(0.026451503331374936, abs=1e-9)


# ---------------------------------------------------------------------------
# Character oracles.


class TestCharacterPowerSum:
    def test_central_residual_for_quartic_character(
        self, table_e6, chi4_zeros_t500
    ):
        chi = characters.chi4()
        e = character_power_sum_formula(
            1000.5, 0.5, chi, table_e6, chi4_zeros_t500
        )
        assert e.residual == pytest.approx(0.03651982921266095, abs=1e-9)
        assert e.residual <= TOL.character_power_sum
        assert e.main_term == 0.0

    def test_odd_parity_enters_the_tail(self, table_e6, chi4_zeros_t500):
        chi = characters.chi4()
        e = character_power_sum_formula(
            1000.5, 0.5, chi, table_e6, chi4_zeros_t500
        )
        assert e.trivial_tail == trivial_zero_tail(
            1000.5, 0.5 + 0j, power=1, kappa=1
        )

    def test_rejects_principal_and_imprimitive(
        self, table_e6, chi4_zeros_t500
    ):
        principal = next(
            c for c in characters.character_group(4) if c.is_principal
        )
        with pytest.raises(ValueError, match="primitive non-principal"):
            character_power_sum_formula(
                1000.5, 0.5, principal, table_e6, chi4_zeros_t500
            )
        imprim = next(
            c
            for c in characters.character_group(8)
            if not c.is_principal and not c.is_primitive
        )
        with pytest.raises(ValueError, match="primitive non-principal"):
            character_power_sum_formula(
                1000.5, 0.5, imprim, table_e6, chi4_zeros_t500
            )

    def test_induced_character_has_identical_direct_sum(self, table_e6):
        # The character mod 8 induced from the quartic one differs only
        # on even n, where both vanish (2 is not coprime to 4 or to 8),
        # so the direct prime-power sums agree term by term.
        chi4 = characters.chi4()
        induced = next(
            c
            for c in characters.character_group(8)
            if not c.is_principal
            and not c.is_primitive
            and c.conductor == 4
        )
        k = table_e6.count_upto(3000.5)
        ns = table_e6.n[:k]
        amp = table_e6.log_p[:k] / np.sqrt(ns.astype(np.float64))
        s4 = np.sum(amp * chi4.on(ns))
        s8 = np.sum(amp * induced.on(ns))
        assert s4 == s8


class TestCharacterLogWeighted:
    def test_residual_for_quartic_character(self, table_e6, chi4_zeros_t500):
        chi = characters.chi4()
        e = character_log_weighted_formula(
            1000.0, chi, table_e6, chi4_zeros_t500
        )
        assert e.residual == pytest.approx(8.137243651340498e-06, abs=1e-9)
        assert e.residual <= TOL.character_log_weighted

    def test_constant_part_is_central_log_derivative_pair(
        self, table_e6, chi4_zeros_t500
    ):
        from prime_bias_lab.specials import L_logderiv, L_logderiv_prime

        chi = characters.chi4()
        e = character_log_weighted_formula(
            1000.0, chi, table_e6, chi4_zeros_t500
        )
        expect = -L_logderiv(0.5 + 0j, chi) * math.log(1000.0) - (
            L_logderiv_prime(0.5 + 0j, chi)
        )
        assert e.constant_part == pytest.approx(expect, abs=1e-12)


class TestCharacterShifted:
    def test_residual_shrinks_with_x(self, table_e6, chi4_zeros_t500):
        chi = characters.chi4()
        e1 = character_shifted_formula(1000.5, chi, table_e6, chi4_zeros_t500)
        e2 = character_shifted_formula(10000.5, chi, table_e6, chi4_zeros_t500)
        assert e1.residual == pytest.approx(0.07302804903779458, abs=1e-9)
        assert e2.residual == pytest.approx(0.0331334571869899, abs=1e-9)
        assert e2.residual < e1.residual
        assert e2.residual <= TOL.character_power_sum

    def test_recombines_component_assemblies_exactly(
        self, table_e6, chi4_zeros_t500
    ):
        chi = characters.chi4()
        e = character_shifted_formula(1000.5, chi, table_e6, chi4_zeros_t500)
        e_log = character_log_weighted_formula(
            1000.5, chi, table_e6, chi4_zeros_t500, strict=True
        )
        e_pow = character_power_sum_formula(
            1000.5, 0.5, chi, table_e6, chi4_zeros_t500, strict=True
        )
        assert abs(
            e.assembled - (e_log.assembled - 2.0 * e_pow.assembled)
        ) <= 1e-9
        assert e.direct_value == (
            e_log.direct_value - 2.0 * e_pow.direct_value
        )


# ---------------------------------------------------------------------------
# Derived central-point formulas.


class TestShiftedLogWeighted:
    def test_pure_algebraic_recombination(self, table_e6, zeros2000):
        # No new zero sums: the parts are exact combinations of the
        # log-weighted and sqrt-scale assemblies at the same truncation.
        x = 1000.5
        e = shifted_log_weighted_formula(x, table_e6, zeros2000)
        el = log_weighted_formula(x, table_e6, zeros2000, strict=True)
        es = sqrt_scale_formula(x, table_e6, zeros2000, strict=True)
        combo = el.assembled + 4.0 * math.sqrt(x) - 2.0 * es.assembled
        assert abs(e.assembled - combo) <= 1e-9
        assert e.direct_value == (
            el.direct_value + 4.0 * math.sqrt(x) - 2.0 * es.direct_value
        )

    def test_residual_within_tolerance(self, table_e6, zeros2000):
        e = shifted_log_weighted_formula(1000.5, table_e6, zeros2000)
        assert e.residual == pytest.approx(0.010609094701283794, abs=1e-9)
        assert e.residual <= TOL.shifted_riesz


class TestShiftedRieszDecomposition:
    def test_residual_at_reference_scale(self, table_e6, zeros2000):
        d = shifted_riesz_decomposition(1e4, table_e6, zeros2000)
        assert d.residual == pytest.approx(0.006568658622954082, abs=1e-9)
        assert d.residual <= TOL.shifted_riesz

    def test_direct_side_is_the_shifted_riesz_sum(self, table_e6, zeros2000):
        d = shifted_riesz_decomposition(1e4, table_e6, zeros2000)
        spec = SumSpec(kind="riesz_shifted")
        assert d.direct_value == riesz_sum(1e4, table_e6, spec)

    def test_terms_match_plain_zero_sums(self, table_e6, zeros2000):
        # Same zero data through an independent accumulation path.
        x = 1e4
        y = x * math.exp(2.0)
        d = shifted_riesz_decomposition(x, table_e6, zeros2000)
        zs1 = zeros.zero_sum(y, zeros2000, power=1)
        zs2 = zeros.zero_sum(y, zeros2000, power=2)
        assert d.oscillation_term == pytest.approx(
            2.0 * zs1.value / math.log(x), abs=1e-12
        )
        assert d.power2_term == pytest.approx(
            -zs2.value / math.log(x), abs=1e-12
        )

    def test_square_denominator_term_decays(self, table_e6, zeros2000):
        d_small = shifted_riesz_decomposition(1e3, table_e6, zeros2000)
        d_large = shifted_riesz_decomposition(1e5, table_e6, zeros2000)
        assert abs(d_large.power2_term) < abs(d_small.power2_term)

    def test_rejects_tiny_x(self, table_e6, zeros2000):
        with pytest.raises(ValueError, match="x must be >= 2"):
            shifted_riesz_decomposition(1.5, table_e6, zeros2000)


class TestRieszOracleIdentity:
    def test_riesz_deficit_matches_zero_assembly(self, table_e6, zeros2000):
        # riesz(x) + zeta'/zeta(1/2) should equal
        # -(1/log x) [(zeta'/zeta)'(1/2) + power-2 zero sum + tail]
        # to within the log-weighted residual divided by log x.
        x = 1e6
        cc = central_constants()
        e = log_weighted_formula(x, table_e6, zeros2000, strict=True)
        lhs = riesz_sum(x, table_e6, SumSpec(kind="riesz")) - (
            -cc.zeta_logderiv_half
        )
        rhs = float(
            e.assembled.real + cc.zeta_logderiv_half * math.log(x)
        ) / math.log(x)
        assert abs(lhs - rhs) <= 1e-6


# ---------------------------------------------------------------------------
# Residue-class assembly.


class TestResidueZeroFormula:
    def test_quartic_modulus_log_weighted(
        self, table_e6, zeros2000, chi4_zeros_t500
    ):
        chi = characters.chi4()
        e = residue_zero_formula(
            1000.0,
            4,
            table_e6,
            zeros2000,
            {chi: chi4_zeros_t500},
            kind="f_q",
            t_max=500.0,
        )
        assert e.residual == pytest.approx(3.336160419564749e-05, abs=1e-9)
        assert e.residual <= TOL.character_log_weighted

    def test_cubic_modulus_log_weighted(self, table_e6, zeros2000):
        group = characters.character_group(3)
        chi = next(c for c in group if not c.is_principal)
        chi_zeros = zeros.compute_dirichlet_zeros(chi, 500.0)
        e = residue_zero_formula(
            1000.0,
            3,
            table_e6,
            zeros2000,
            {chi: chi_zeros},
            kind="f_q",
            t_max=500.0,
        )
        assert e.residual == pytest.approx(5.921016055765449e-05, abs=1e-9)
        assert e.residual <= TOL.character_log_weighted
        # Supplying the zeros under the conjugate character works the
        # same way through the mirrored spectrum.
        e2 = residue_zero_formula(
            1000.0,
            3,
            table_e6,
            zeros2000,
            {chi.conjugate(): chi_zeros.mirrored()},
            kind="f_q",
            t_max=500.0,
        )
        assert e2.residual == e.residual

    def test_quartic_modulus_shifted(
        self, table_e6, zeros2000, chi4_zeros_t500
    ):
        # The shifted assembly carries power-1 zero sums for every
        # character, so its residual oscillates with the truncation
        # instead of shrinking smoothly; only a loose bound holds here.
        chi = characters.chi4()
        e = residue_zero_formula(
            1000.0,
            4,
            table_e6,
            zeros2000,
            {chi: chi4_zeros_t500},
            kind="F_q",
            t_max=500.0,
        )
        assert e.residual == pytest.approx(0.11867113567089405, abs=1e-9)
        assert e.residual <= 0.2

    def test_rejects_unknown_kind(self, table_e6, zeros2000, chi4_zeros_t500):
        with pytest.raises(ValueError, match="unknown kind"):
            residue_zero_formula(
                1000.0,
                4,
                table_e6,
                zeros2000,
                {characters.chi4(): chi4_zeros_t500},
                kind="g_q",
            )

    def test_rejects_modulus_with_imprimitive_characters(
        self, table_e6, zeros2000
    ):
        with pytest.raises(ValueError, match="imprimitive"):
            residue_zero_formula(1000.0, 8, table_e6, zeros2000, {})

    def test_missing_zero_set_is_reported(self, table_e6, zeros2000):
        with pytest.raises(KeyError, match="no zero set supplied"):
            residue_zero_formula(1000.0, 4, table_e6, zeros2000, {})
