"""Zero mode: Legendre normalization, amplitudes, residuals."""

import math

import numpy as np
import pytest

from conftest import legendre_rodrigues
from lmgspec import (
    NotIntegerSpin,
    SpinJ,
    build_factorized,
    build_susy_rotated,
    ground_state,
    legendre_p,
)


class TestLegendre:
    def test_seeds(self):
        assert legendre_p(0, 3.7) == 1.0
        assert legendre_p(1, 3.7) == 3.7

    def test_p2_closed_form(self):
        assert math.isclose(legendre_p(2, 1.5), 2.875, rel_tol=1e-15)

    @pytest.mark.parametrize("n", [2, 5, 9, 14])
    @pytest.mark.parametrize("x", [1.0, 1.3, math.cosh(2.0), 7.5])
    def test_against_rodrigues_sum(self, n, x):
        assert math.isclose(legendre_p(n, x), legendre_rodrigues(n, x), rel_tol=1e-12)

    def test_at_one(self):
        for n in range(12):
            assert math.isclose(legendre_p(n, 1.0), 1.0, rel_tol=1e-14)

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            legendre_p(-1, 0.5)


class TestGroundState:
    def test_gamma_zero_is_indicator(self):
        gs = ground_state(SpinJ(8), 0.0)
        expect = np.zeros(9)
        expect[4] = 1.0
        assert np.array_equal(gs.amplitudes, expect)
        assert gs.energy_residual == 0.0
        assert gs.norm_legendre == 1.0

    def test_j1_norm_identity(self):
        # <0|exp(2 g Jx)|0> = cosh(2g) = P_1(cosh 2g) analytically
        g = 0.9
        gs = ground_state(SpinJ(2), g)
        assert math.isclose(gs.norm_direct, math.sqrt(math.cosh(2 * g)), rel_tol=1e-12)
        assert math.isclose(gs.norm_direct, gs.norm_legendre, rel_tol=1e-12)

    @pytest.mark.parametrize("g", [-2.0, -0.5, 0.3, 1.0, 2.0])
    @pytest.mark.parametrize("jj", [1, 4, 10, 22, 30])
    def test_norm_identity_and_residual(self, jj, g):
        jv = SpinJ(2 * jj)
        gs = ground_state(jv, g)
        assert math.isclose(gs.norm_direct, gs.norm_legendre, rel_tol=1e-10)
        h = build_factorized(jv, g)
        h_norm = np.linalg.norm(h, 2)
        assert gs.energy_residual <= 1e-9 * max(1.0, h_norm)
        assert math.isclose(float(np.linalg.norm(gs.amplitudes)), 1.0, rel_tol=1e-9)

    @pytest.mark.parametrize("g", [0.4, 1.7, -1.1])
    def test_reflection_symmetry(self, g):
        gs = ground_state(SpinJ(20), g)
        assert np.allclose(gs.amplitudes, gs.amplitudes[::-1], atol=1e-12)

    def test_amplitudes_positive_for_positive_gamma(self):
        # exp(g Jx) has nonnegative entries for g > 0, so does the zero mode
        gs = ground_state(SpinJ(12), 0.8)
        assert np.all(gs.amplitudes > 0)

    def test_continuity_small_gamma(self):
        gs = ground_state(SpinJ(10), 1e-8)
        assert abs(gs.amplitudes[5] - 1.0) < 1e-7

    def test_rotated_frame(self):
        jv = SpinJ(12)
        g = 0.7
        gs = ground_state(jv, g, frame="rotated")
        h = build_susy_rotated(jv, g)
        assert gs.energy_residual <= 1e-9 * np.linalg.norm(h, 2)
        assert gs.norm_legendre is None
        # zero mode lives in the J+1 sector: odd-m amplitudes vanish (even J)
        assert np.max(np.abs(gs.amplitudes[1::2])) == 0.0

    def test_rotated_j0(self):
        gs = ground_state(SpinJ(0), 1.3, frame="rotated")
        assert np.array_equal(gs.amplitudes, [1.0])

    def test_large_gamma_j_spectral_path(self):
        # gamma*J beyond the matrix-exponential guard: amplitudes still finite,
        # normalized, reflection-symmetric relative to their magnitudes
        jv = SpinJ(400)
        gs = ground_state(jv, 4.0)
        assert np.all(np.isfinite(gs.amplitudes))
        assert math.isclose(float(np.linalg.norm(gs.amplitudes)), 1.0, rel_tol=1e-8)
        assert math.isnan(gs.norm_direct)
        h = build_factorized(jv, 4.0)
        assert gs.energy_residual <= 1e-9 * np.linalg.norm(h, 2)

    def test_frame_validation(self):
        with pytest.raises(ValueError):
            ground_state(SpinJ(4), 0.5, frame="bogus")

    def test_half_integer_rejected(self):
        with pytest.raises(NotIntegerSpin):
            ground_state(SpinJ(5), 0.5)
