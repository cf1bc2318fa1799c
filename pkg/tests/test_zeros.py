"""Critical-line zeros: computation, persistence, and truncated zero sums."""

import cmath
import math

import numpy as np
import pytest

from prime_bias_lab import characters, specials, zeros


class TestComputeZetaZeros:
    def test_count_below_100_is_29(self):
        zs = zeros.compute_zeta_zeros(100.0)
        assert len(zs.ordinates) == 29

    def test_first_ordinates_match_references(self):
        zs = zeros.compute_zeta_zeros(30.0)
        assert zs.ordinates[0] == pytest.approx(14.134725141734693, abs=1e-6)
        assert zs.ordinates[1] == pytest.approx(21.022039638771556, abs=1e-6)
        assert zs.ordinates[2] == pytest.approx(25.010857580145688, abs=1e-6)

    def test_count_matches_smooth_estimate(self):
        for t in (50.0, 100.0, 250.0):
            zs = zeros.compute_zeta_zeros(t)
            assert abs(len(zs.ordinates) - zeros.zero_count_estimate(t)) <= 2

    def test_metadata(self):
        zs = zeros.compute_zeta_zeros(50.0)
        assert zs.symmetric is True
        assert zs.assumes_rh is False
        assert zs.precision <= 1e-9
        assert "zeta" in zs.source

    def test_rejects_absurd_height(self):
        with pytest.raises(ValueError):
            zeros.compute_zeta_zeros(10**6)


class TestBundledZeros:
    def test_shape_and_monotonicity(self, zeros2000):
        assert len(zeros2000.ordinates) == 2000
        assert np.all(np.diff(zeros2000.ordinates) > 0)
        assert zeros2000.ordinates[-1] == pytest.approx(2515.286482924738, abs=1e-6)

    def test_agrees_with_fresh_computation(self, zeros2000):
        fresh = zeros.compute_zeta_zeros(100.0)
        delta = np.abs(fresh.ordinates - zeros2000.ordinates[: len(fresh.ordinates)])
        assert delta.max() <= 1e-9

    def test_truncated(self, zeros2000):
        cut = zeros2000.truncated(500.0)
        assert np.all(cut.ordinates <= 500.0)
        assert len(cut.ordinates) == np.sum(zeros2000.ordinates <= 500.0)


class TestHardyFunctionIsReal:
    def test_rotated_zeta_has_negligible_imaginary_part(self):
        # e^{i theta(t)} zeta(1/2 + it) must be real; compare the module's
        # real Hardy block with an independent rotation built from
        # log-gamma, and bound the rotated imaginary part.
        from prime_bias_lab.zeros import _z_block

        ts = np.linspace(5.0, 50.0, 91)
        block = _z_block(ts)
        for t, got in zip(ts, block):
            theta = (
                cmath.log(cmath.exp(specials.log_gamma(0.25 + 0.5j * t))).imag
                - 0.5 * t * math.log(math.pi)
            )
            rotated = cmath.exp(1j * theta) * specials.zeta(0.5 + 1j * t)
            assert abs(rotated.imag) <= 1e-8
            assert got == pytest.approx(rotated.real, abs=1e-8)

    def test_rotated_chi4_L_has_negligible_imaginary_part(self):
        from prime_bias_lab.zeros import _dirichlet_z_factory

        chi = characters.chi4()
        eps = characters.root_number(chi)
        w = _dirichlet_z_factory(chi)
        ts = np.linspace(5.0, 50.0, 46)
        block = np.asarray(w(ts))
        for t, got in zip(ts, block):
            s = 0.5 + 1j * t
            theta = (
                ((s + 1) / 2 * math.log(4.0 / math.pi)).imag
                + specials.log_gamma((s + 1) / 2).imag
                - cmath.phase(eps) / 2.0
            )
            rotated = cmath.exp(1j * theta) * specials.dirichlet_L(s, chi)
            assert abs(rotated.imag) <= 1e-8
            assert got == pytest.approx(rotated.real, abs=1e-8)


class TestDirichletZeros:
    def test_chi4_low_zeros(self):
        zs = zeros.compute_dirichlet_zeros(characters.chi4(), 50.0)
        assert zs.ordinates[0] == pytest.approx(6.0209, abs=5e-4)
        assert zs.symmetric is True
        smooth = 50.0 / (2 * math.pi) * math.log(4 * 50.0 / (2 * math.pi * math.e))
        assert abs(len(zs.ordinates) - smooth) <= 2

    def test_complex_character_scans_both_sides(self):
        group = characters.character_group(5)
        chi = next(c for c in group if c.order == 4)
        zs = zeros.compute_dirichlet_zeros(chi, 30.0)
        assert zs.symmetric is False
        assert np.any(zs.ordinates < 0) and np.any(zs.ordinates > 0)

    def test_conjugate_character_negates_the_spectrum(self):
        group = characters.character_group(5)
        chi = next(c for c in group if c.order == 4)
        zs = zeros.compute_dirichlet_zeros(chi, 30.0)
        zs_bar = zeros.compute_dirichlet_zeros(chi.conjugate(), 30.0)
        assert np.allclose(
            np.sort(-zs_bar.ordinates), np.sort(zs.ordinates), atol=1e-9
        )

    def test_rejects_imprimitive_and_out_of_range(self):
        principal = characters.character_group(8).principal
        with pytest.raises(ValueError):
            zeros.compute_dirichlet_zeros(principal, 30.0)
        with pytest.raises(ValueError):
            zeros.compute_dirichlet_zeros(characters.chi4(), 5000.0)


class TestSaveLoad:
    def test_roundtrip(self, tmp_path):
        zs = zeros.compute_zeta_zeros(60.0)
        path = tmp_path / "z.txt"
        zeros.save_zeros(zs, path)
        back = zeros.load_zeros(path)
        assert np.abs(back.ordinates - zs.ordinates).max() <= 1e-9
        assert back.symmetric == zs.symmetric
        assert back.assumes_rh == zs.assumes_rh
        assert back.precision == pytest.approx(zs.precision, rel=1e-2)

    def test_roundtrip_signed_spectrum(self, tmp_path):
        group = characters.character_group(5)
        chi = next(c for c in group if c.order == 4)
        zs = zeros.compute_dirichlet_zeros(chi, 20.0)
        path = tmp_path / "z5.txt"
        zeros.save_zeros(zs, path)
        back = zeros.load_zeros(path)
        assert np.abs(back.ordinates - zs.ordinates).max() <= 1e-9
        assert back.symmetric is False

    def test_empty_file_is_a_valid_empty_set(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("")
        zs = zeros.load_zeros(path)
        assert len(zs.ordinates) == 0

    def test_missing_precision_header_defaults(self, tmp_path):
        path = tmp_path / "bare.txt"
        path.write_text("14.134725141735\n21.022039638772\n")
        zs = zeros.load_zeros(path)
        assert zs.precision == 1e-9
        assert len(zs.ordinates) == 2

    def test_parse_error_reports_line_number(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("14.1347\n21.0220\nnot-a-number\n")
        with pytest.raises(ValueError, match=r"bad\.txt:3: not a number"):
            zeros.load_zeros(path)

    def test_non_monotone_reports_line_number(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("14.1347\n25.0109\n21.0220\n")
        with pytest.raises(ValueError, match=r"bad\.txt:3: .*increasing"):
            zeros.load_zeros(path)


class TestZeroSum:
    def test_exact_values_at_x_equal_one(self, zeros2000):
        gam = zeros2000.ordinates
        assert zeros.zero_sum(1.0, zeros2000, power=1).value == 0.0
        want = -2.0 * float(np.sum(1.0 / gam**2))
        assert zeros.zero_sum(1.0, zeros2000, power=2).value == pytest.approx(
            want, abs=1e-15
        )

    def test_parity_under_x_inversion(self, zeros2000):
        # power 1 is odd in log x, power 2 is even.
        p1 = zeros.zero_sum(50.0, zeros2000, power=1).value
        p1_inv = zeros.zero_sum(1 / 50.0, zeros2000, power=1).value
        assert p1_inv == -p1
        p2 = zeros.zero_sum(50.0, zeros2000, power=2).value
        p2_inv = zeros.zero_sum(1 / 50.0, zeros2000, power=2).value
        assert p2_inv == p2

    def test_truncation_self_consistency_within_window_mass(self, zeros2000):
        # Raising T from 500 to 1000 shifts the power-1 sum by at most the
        # absolute mass of the added window, sum 2/gamma.
        x = 1e4
        r500 = zeros.zero_sum(x, zeros2000, power=1, t_max=500.0)
        r1000 = zeros.zero_sum(x, zeros2000, power=1, t_max=1000.0)
        gam = zeros2000.ordinates
        window = np.sum(2.0 / gam[(gam > 500.0) & (gam <= 1000.0)])
        assert abs(r500.value - r1000.value) <= window
        assert r1000.n_terms > r500.n_terms

    def test_remains_bounded_over_wide_range(self, zeros2000):
        for x in np.logspace(1, 8, 40):
            value = zeros.zero_sum(float(x) + 0.5, zeros2000, power=1).value
            assert abs(value) <= 1.0

    def test_tail_estimate_only_for_power_two(self, zeros2000):
        r1 = zeros.zero_sum(1e4, zeros2000, power=1, t_max=500.0)
        r2 = zeros.zero_sum(1e4, zeros2000, power=2, t_max=500.0)
        assert r1.tail_estimate is None
        edge = r2.t_max
        want = (math.log(edge / (2 * math.pi)) + 1.0) / (math.pi * edge)
        assert r2.tail_estimate == pytest.approx(want, rel=1e-12)

    def test_power2_truncation_error_within_tail_estimate_scale(self, zeros2000):
        full = zeros.zero_sum(1e4, zeros2000, power=2)
        cut = zeros.zero_sum(1e4, zeros2000, power=2, t_max=500.0)
        assert abs(full.value - cut.value) <= 2.0 * cut.tail_estimate

    def test_workers_bit_identical(self, zeros2000):
        a = zeros.zero_sum(12345.5, zeros2000, power=1, workers=1)
        b = zeros.zero_sum(12345.5, zeros2000, power=1, workers=8)
        assert a.value == b.value
        assert a.comp_bound == b.comp_bound

    def test_phase_guard_raises_on_coarse_precision(self, zeros2000):
        coarse = zeros.ZeroSet(
            ordinates=zeros2000.ordinates,
            precision=1e-3,
            source="test",
            assumes_rh=False,
            symmetric=True,
        )
        with pytest.raises(zeros.PhasePrecisionError):
            zeros.zero_sum(1e8, coarse, power=1)
        # The bundled precision is fine at the same scale.
        zeros.ensure_phase_precision(zeros2000, 1e8)

    def test_validation(self, zeros2000):
        with pytest.raises(ValueError):
            zeros.zero_sum(-1.0, zeros2000, power=1)
        with pytest.raises(ValueError):
            zeros.zero_sum(10.0, zeros2000, power=3)


class TestCountEstimate:
    def test_value_near_100(self):
        assert zeros.zero_count_estimate(100.0) == pytest.approx(29.0, abs=0.5)

    def test_monotone(self):
        ts = np.linspace(20.0, 500.0, 25)
        values = [zeros.zero_count_estimate(t) for t in ts]
        assert all(b > a for a, b in zip(values, values[1:]))
