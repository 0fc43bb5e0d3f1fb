"""Hamiltonian builders: the four model forms and their block structure."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from conftest import (
    complex_spin_ops,
    oracle_h_susy,
    ref_a_vec_j2,
    ref_h_minus_j2,
    ref_h_plus_j2,
    ref_hn_j2,
)
from lmgspec import (
    DegenerateAnisotropy,
    ModelParams,
    NotIntegerSpin,
    SpinJ,
    build_factorized,
    build_lmg_general,
    build_nonhermitian,
    build_susy_rotated,
    eig_dense_symmetric,
    extract_hn_blocks,
    gap_sector_tridiag,
    h_minus_elements,
    params_from_chi,
    parity_blocks_susy,
    parity_sort,
    susy_sector_blocks,
)

GAMMAS = [0.0, 0.3, -0.7, 1.5]


class TestParams:
    def test_from_chi_roundtrip(self):
        omega0, gamma = params_from_chi(2.0, 1.0)
        assert math.isclose(omega0 * math.cosh(gamma), 2.0, rel_tol=1e-14)
        assert math.isclose(omega0 * math.sinh(gamma), 1.0, rel_tol=1e-14)

    @pytest.mark.parametrize("chi1,chi2", [(0.0, 0.0), (1.0, 1.0), (1.0, 2.0), (-1.0, 0.5), (2.0, -0.1)])
    def test_degenerate_rejected(self, chi1, chi2):
        with pytest.raises(DegenerateAnisotropy):
            params_from_chi(chi1, chi2)

    def test_from_gamma_inverts_from_chi(self):
        p = ModelParams.from_gamma(0.8, omega0=1.3)
        q = ModelParams.from_chi(p.chi1, p.chi2)
        assert math.isclose(q.gamma, 0.8, rel_tol=1e-12)
        assert math.isclose(q.omega0, 1.3, rel_tol=1e-12)

    def test_susy_point(self):
        assert ModelParams.from_gamma(0.5).susy_point()
        assert not ModelParams.from_gamma(0.5, lam=0.7).susy_point()


class TestBuilders:
    @pytest.mark.parametrize("g", GAMMAS)
    @pytest.mark.parametrize("two_j", [2, 4, 7, 12])
    def test_rotated_matches_complex_oracle(self, two_j, g):
        h = build_susy_rotated(SpinJ(two_j), g)
        ref = oracle_h_susy(two_j, g)
        assert np.allclose(h, ref, atol=1e-13 * max(1.0, np.max(np.abs(ref))))
        assert np.array_equal(h, h.T)

    @pytest.mark.parametrize("g", GAMMAS)
    def test_general_matches_complex_oracle(self, g):
        two_j = 8
        p = ModelParams.from_gamma(g, omega0=1.2, lam=0.7, xi=0.9)
        jx, jy, jz = complex_spin_ops(two_j)
        ref = p.xi * (
            p.chi1**2 * (jz @ jz) + p.chi2**2 * (jy @ jy) + p.lam * p.chi1 * p.chi2 * jx
        )
        h = build_lmg_general(SpinJ(two_j), p)
        assert np.allclose(h, ref.real, atol=1e-13 * max(1.0, np.max(np.abs(h))))

    @pytest.mark.parametrize("g", GAMMAS)
    @pytest.mark.parametrize("two_j", [2, 6, 11])
    def test_all_susy_forms_isospectral(self, two_j, g):
        jv = SpinJ(two_j)
        e_rot = eig_dense_symmetric(build_susy_rotated(jv, g))
        scale = max(1.0, np.max(np.abs(e_rot)))
        e_fac = eig_dense_symmetric(build_factorized(jv, g))
        assert np.allclose(e_rot, e_fac, atol=1e-11 * scale)
        p = ModelParams.from_gamma(g)
        e_gen = eig_dense_symmetric(build_lmg_general(jv, p))
        assert np.allclose(e_rot, e_gen, atol=1e-11 * scale)
        e_non = np.sort(np.linalg.eigvals(build_nonhermitian(jv, g)).real)
        assert np.allclose(e_rot, e_non, atol=1e-9 * scale)

    @pytest.mark.parametrize("g", [0.0, 0.4, -1.1])
    def test_factorized_equals_exponential_chain(self, g):
        # product form F^T F must equal exp(-gJx) Jz exp(2gJx) Jz exp(-gJx)
        two_j = 8
        jx, _, jz = complex_spin_ops(two_j)
        jx, jz = jx.real, jz.real
        chain = expm(-g * jx) @ jz @ expm(2 * g * jx) @ jz @ expm(-g * jx)
        h = build_factorized(SpinJ(two_j), g)
        assert np.allclose(h, chain, atol=1e-11 * max(1.0, np.max(np.abs(chain))))

    def test_factorized_stable_at_large_gamma_j(self):
        # the exponential-chain intermediates overflow float64 digits here;
        # the product form must stay symmetric PSD with tiny smallest eigenvalue
        jv = SpinJ(60)
        h = build_factorized(jv, 2.0)
        assert np.array_equal(h, h.T)
        eigs = eig_dense_symmetric(h)
        assert eigs[0] > -1e-9 * np.max(np.abs(eigs))

    @pytest.mark.parametrize("g", GAMMAS)
    def test_omega0_scaling(self, g):
        jv = SpinJ(6)
        for build in (build_susy_rotated, build_factorized, build_nonhermitian):
            assert np.allclose(build(jv, g, 2.0), 4.0 * build(jv, g, 1.0), rtol=1e-14)


class TestNonHermitianBlocks:
    @pytest.mark.parametrize("g", [0.3, 0.7, 1.1])
    def test_j2_reference_matrices(self, g):
        jv = SpinJ(4)
        hn = build_nonhermitian(jv, g)
        assert np.array_equal(hn, ref_hn_j2(g))
        b = extract_hn_blocks(hn, jv)
        assert np.array_equal(b.h_minus.to_dense(), ref_h_minus_j2(g))
        assert np.array_equal(b.h_plus.to_dense(), ref_h_plus_j2(g))
        assert np.array_equal(b.a_vec, ref_a_vec_j2(g))
        assert np.array_equal(b.a_vec_pos, hn[2, 3:])

    @pytest.mark.parametrize("two_j", [2, 4, 6, 10, 16])
    def test_zero_column_at_m0(self, two_j):
        jj = two_j // 2
        hn = build_nonhermitian(SpinJ(two_j), 0.9)
        assert np.array_equal(hn[:, jj], np.zeros(two_j + 1))

    @pytest.mark.parametrize("g", [0.5, -0.8])
    @pytest.mark.parametrize("two_j", [2, 6, 12, 20])
    def test_h_minus_elements_match_slice(self, two_j, g):
        jv = SpinJ(two_j)
        sliced = extract_hn_blocks(build_nonhermitian(jv, g), jv).h_minus
        direct = h_minus_elements(jv, g)
        assert np.array_equal(direct.to_dense(), sliced.to_dense())

    @pytest.mark.parametrize("two_j", [2, 6, 12, 20])
    def test_h_plus_is_reversed_h_minus(self, two_j):
        jv = SpinJ(two_j)
        b = extract_hn_blocks(build_nonhermitian(jv, 0.7), jv)
        assert np.array_equal(
            b.h_plus.reversed_conjugate().to_dense(), b.h_minus.to_dense()
        )

    def test_half_integer_rejected(self):
        with pytest.raises(NotIntegerSpin):
            extract_hn_blocks(np.zeros((4, 4)), SpinJ(3))
        with pytest.raises(NotIntegerSpin):
            h_minus_elements(SpinJ(3), 0.5)


class TestSectorBlocks:
    @pytest.mark.parametrize("g", GAMMAS)
    @pytest.mark.parametrize("two_j", [2, 6, 8, 14])
    def test_parity_blocks_reembed_exactly(self, two_j, g):
        jv = SpinJ(two_j)
        even, odd = parity_blocks_susy(jv, g)
        sorted_h = parity_sort(jv).apply(build_susy_rotated(jv, g))
        k = even.n
        dense = np.zeros_like(sorted_h)
        dense[:k, :k] = even.to_dense()
        dense[k:, k:] = odd.to_dense()
        assert np.allclose(dense, sorted_h, atol=1e-13 * max(1.0, np.max(np.abs(sorted_h))))
        # the coupling blocks of the sorted Hamiltonian vanish identically
        assert np.max(np.abs(sorted_h[:k, k:])) == 0.0

    @pytest.mark.parametrize("g", GAMMAS)
    @pytest.mark.parametrize("two_j", [2, 6, 8, 14])
    def test_block_spectra_union_is_full_spectrum(self, two_j, g):
        jv = SpinJ(two_j)
        zero_sec, gap_sec = susy_sector_blocks(jv, g)
        union = np.sort(
            np.concatenate(
                [eig_dense_symmetric(zero_sec.to_dense()), eig_dense_symmetric(gap_sec.to_dense())]
            )
        )
        full = eig_dense_symmetric(build_susy_rotated(jv, g))
        assert np.allclose(union, full, atol=1e-10 * max(1.0, np.max(np.abs(full))))

    @pytest.mark.parametrize("two_j", [2, 6, 8, 14])
    def test_gap_sector_tridiag_matches_block(self, two_j):
        g = 0.6
        jv = SpinJ(two_j)
        _, gap_sec = susy_sector_blocks(jv, g)
        fast = gap_sector_tridiag(jv, g)
        assert np.array_equal(fast.diag, gap_sec.diag)
        assert np.array_equal(fast.off, gap_sec.off)
        assert fast.n == two_j // 2

    def test_zero_sector_holds_zero_mode(self):
        jv = SpinJ(10)
        zero_sec, gap_sec = susy_sector_blocks(jv, 0.8)
        e0 = eig_dense_symmetric(zero_sec.to_dense())
        e1 = eig_dense_symmetric(gap_sec.to_dense())
        scale = np.max(np.abs(e0))
        assert abs(e0[0]) <= 1e-12 * scale
        assert e1[0] > 1.0  # the gap sector is bounded away from zero

    def test_errors(self):
        with pytest.raises(NotIntegerSpin):
            parity_blocks_susy(SpinJ(3), 0.5)
        with pytest.raises(NotIntegerSpin):
            susy_sector_blocks(SpinJ(5), 0.5)
        with pytest.raises(NotIntegerSpin):
            gap_sector_tridiag(SpinJ(0), 0.5)
