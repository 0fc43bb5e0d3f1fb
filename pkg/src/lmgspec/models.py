"""Hamiltonian builders for the antiferromagnetic LMG collective-spin model.

Four equivalent forms (all with identical spectra at the SUSY point):

* general form          xi * (chi1^2 Jz^2 + chi2^2 Jy^2 + lambda chi1 chi2 Jx)
* rotated SUSY form     Jx^2 cosh^2(g) + Jy^2 sinh^2(g) + Jz cosh(g) sinh(g)
* factorized form       exp(-g Jx) Jz exp(2 g Jx) Jz exp(-g Jx)
* non-Hermitian form    Jz^2 cosh(2g) + Ky Jz sinh(2g)

plus the parity-sector tridiagonal blocks and the H+/H- block extraction of
the non-Hermitian form.  Real arithmetic throughout (Jy^2 = -Ky@Ky).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAnisotropy, NotIntegerSpin
from .spin import SpinJ, build_spin_operators, mat_exp_scaled, parity_sort, susy_sort
from .tridiag import GeneralTridiag, SymTridiag

__all__ = [
    "ModelParams",
    "HnBlocks",
    "params_from_chi",
    "build_lmg_general",
    "build_susy_rotated",
    "build_factorized",
    "build_nonhermitian",
    "extract_hn_blocks",
    "h_minus_elements",
    "parity_blocks_susy",
    "susy_sector_blocks",
    "gap_sector_tridiag",
]


def params_from_chi(chi1: float, chi2: float) -> tuple:
    """Map anisotropy couplings (chi1, chi2) to (omega0, gamma).

    omega0 = sqrt(chi1^2 - chi2^2) and tanh(gamma) = chi2/chi1, so that
    chi1 = omega0*cosh(gamma) and chi2 = omega0*sinh(gamma).
    Requires chi1 > 0 and 0 <= chi2 < chi1.
    """
    if chi1 <= 0 or chi2 < 0 or chi2 >= chi1:
        raise DegenerateAnisotropy(
            f"need chi1 > chi2 >= 0 with chi1 > 0, got chi1={chi1}, chi2={chi2}"
        )
    omega0 = math.sqrt((chi1 - chi2) * (chi1 + chi2))
    gamma = math.atanh(chi2 / chi1)
    return omega0, gamma


@dataclass(frozen=True)
class ModelParams:
    """LMG couplings (xi, chi1, chi2, lam) and derived scales (omega0, gamma)."""

    xi: float
    chi1: float
    chi2: float
    lam: float
    omega0: float
    gamma: float

    @classmethod
    def from_chi(cls, chi1: float, chi2: float, lam: float = 1.0, xi: float = 1.0) -> "ModelParams":
        omega0, gamma = params_from_chi(chi1, chi2)
        return cls(xi=xi, chi1=chi1, chi2=chi2, lam=lam, omega0=omega0, gamma=gamma)

    @classmethod
    def from_gamma(
        cls, gamma: float, omega0: float = 1.0, lam: float = 1.0, xi: float = 1.0
    ) -> "ModelParams":
        return cls(
            xi=xi,
            chi1=omega0 * math.cosh(gamma),
            chi2=omega0 * math.sinh(gamma),
            lam=lam,
            omega0=omega0,
            gamma=gamma,
        )

    def susy_point(self) -> bool:
        return self.lam == 1.0


def build_lmg_general(j: SpinJ, p: ModelParams) -> np.ndarray:
    """General LMG Hamiltonian xi*(chi1^2 Jz^2 + chi2^2 Jy^2 + lam chi1 chi2 Jx)."""
    s = build_spin_operators(j)
    jy2 = -(s.ky @ s.ky)
    return p.xi * (
        p.chi1**2 * (s.jz @ s.jz) + p.chi2**2 * jy2 + p.lam * p.chi1 * p.chi2 * s.jx
    )


def build_susy_rotated(j: SpinJ, gamma: float, omega0: float = 1.0) -> np.ndarray:
    """Rotated SUSY Hamiltonian Jx^2 cosh^2(g) + Jy^2 sinh^2(g) + Jz cosh(g)sinh(g)."""
    s = build_spin_operators(j)
    c, sh = math.cosh(gamma), math.sinh(gamma)
    h = c * c * (s.jx @ s.jx) - sh * sh * (s.ky @ s.ky) + c * sh * s.jz
    return omega0**2 * h


def build_factorized(j: SpinJ, gamma: float, omega0: float = 1.0) -> np.ndarray:
    """Factorized Hamiltonian exp(-g Jx) Jz exp(2 g Jx) Jz exp(-g Jx).

    Evaluated through the equivalent first-order product F^T F with
    F = Jz cosh(g) - Ky sinh(g): the hyperbolic rotation identity collapses
    the exponential chain to this form exactly, and the product form avoids
    the e^(4gJ) intermediate blow-up of the exponential chain (which loses
    all significant digits already around g*J ~ 15).  Symmetric positive
    semidefinite by construction; same spectrum as the other forms, and the
    frame in which the closed-form zero mode lives.
    """
    s = build_spin_operators(j)
    f = math.cosh(gamma) * s.jz - math.sinh(gamma) * s.ky
    return omega0**2 * (f.T @ f)


def build_nonhermitian(j: SpinJ, gamma: float, omega0: float = 1.0) -> np.ndarray:
    """Non-Hermitian similar Hamiltonian Jz^2 cosh(2g) + Ky Jz sinh(2g).

    For integer J the m=0 column vanishes identically, exposing |m_z=0> as a
    null state.
    """
    s = build_spin_operators(j)
    h = math.cosh(2.0 * gamma) * (s.jz @ s.jz) + math.sinh(2.0 * gamma) * (s.ky @ s.jz)
    return omega0**2 * h


def _general_from_dense(block: np.ndarray) -> GeneralTridiag:
    return GeneralTridiag(
        alpha=np.diag(block).copy(),
        beta=-np.diag(block, 1).copy(),
        gamma_sub=np.diag(block, -1).copy(),
    )


@dataclass(frozen=True)
class HnBlocks:
    """H-, H+ and the m=0 coupling row of the non-Hermitian Hamiltonian.

    ``a_vec`` is the m=0 row over the negative-m columns ordered outward from
    m=-1 (nearest-neighbour coupling first); by the reflection symmetry of
    the model the positive-m half of the row is the same vector.
    """

    h_minus: GeneralTridiag
    h_plus: GeneralTridiag
    a_vec: np.ndarray

    @property
    def a_vec_pos(self) -> np.ndarray:
        """m=0 row over positive-m columns, ordered outward from m=+1."""
        return self.a_vec.copy()


def extract_hn_blocks(hn: np.ndarray, j: SpinJ) -> HnBlocks:
    """Slice the non-Hermitian Hamiltonian into H- (m<0), H+ (m>0) and <a|."""
    if not j.is_integer_spin():
        raise NotIntegerSpin("block extraction needs the m=0 row, i.e. integer J")
    jj = j.two_j // 2
    h_minus = _general_from_dense(hn[:jj, :jj])
    h_plus = _general_from_dense(hn[jj + 1:, jj + 1:])
    a_vec = hn[jj, :jj][::-1].copy()
    return HnBlocks(h_minus=h_minus, h_plus=h_plus, a_vec=a_vec)


def h_minus_elements(j: SpinJ, gamma: float, omega0: float = 1.0) -> GeneralTridiag:
    """H- built directly from its closed-form matrix elements.

    Indices m, m' = -J .. -1 ascending; diagonal m^2 cosh(2g), off-diagonals
    proportional to sinh(2g) with opposite signs above and below.  Must agree
    entrywise with the slice produced by extract_hn_blocks.
    """
    if not j.is_integer_spin():
        raise NotIntegerSpin("H- is defined for integer J")
    jj = j.two_j // 2
    if jj < 1:
        raise NotIntegerSpin("H- needs J >= 1")
    c2, s2 = math.cosh(2.0 * gamma), math.sinh(2.0 * gamma)
    m = np.arange(-jj, 0, dtype=float)
    alpha = m * m * c2
    # superdiagonal (row m, col m+1): -(m'/2)sqrt((J+m')(J-m'+1)) sinh(2g), m' = m+1
    mp = m[1:]
    sup = -(mp / 2.0) * np.sqrt((jj + mp) * (jj - mp + 1.0)) * s2
    # subdiagonal (row m, col m-1): +(m'/2)sqrt((J-m')(J+m'+1)) sinh(2g), m' = m-1
    mq = m[:-1]
    sub = (mq / 2.0) * np.sqrt((jj - mq) * (jj + mq + 1.0)) * s2
    w = omega0**2
    return GeneralTridiag(alpha=w * alpha, beta=w * -sup, gamma_sub=w * sub)


def _sym_block(j: SpinJ, gamma: float, m_list: np.ndarray, omega0: float = 1.0) -> SymTridiag:
    """Symmetric tridiagonal block of the rotated Hamiltonian on an m-list
    of common parity (consecutive entries differ by 2)."""
    jj = j.two_j / 2.0
    c2, s2 = math.cosh(2.0 * gamma), math.sinh(2.0 * gamma)
    m = np.asarray(m_list, dtype=float)
    diag = 0.5 * (jj * (jj + 1.0) - m * m) * c2 + 0.5 * m * s2
    mm = m[:-1]
    off = 0.25 * np.sqrt((jj - mm) * (jj + mm + 1.0) * (jj - mm - 1.0) * (jj + mm + 2.0))
    w = omega0**2
    return SymTridiag(diag=w * diag, off=w * off)


def parity_blocks_susy(j: SpinJ, gamma: float, omega0: float = 1.0) -> tuple:
    """(even, odd) m-parity blocks of the rotated SUSY Hamiltonian.

    Both are real symmetric tridiagonal; re-embedding them reproduces the
    parity-permuted dense Hamiltonian exactly, and the union of their spectra
    is the full spectrum.
    """
    if not j.is_integer_spin():
        raise NotIntegerSpin("parity blocks need integer J")
    if j.two_j < 2:
        raise NotIntegerSpin("parity blocks need J >= 1")
    idx = parity_sort(j)
    even = _sym_block(j, gamma, np.array(idx.even_m), omega0)
    odd = _sym_block(j, gamma, np.array(idx.odd_m), omega0)
    return even, odd


def susy_sector_blocks(j: SpinJ, gamma: float, omega0: float = 1.0) -> tuple:
    """(zero_sector, gap_sector) blocks of the rotated SUSY Hamiltonian.

    The zero sector {m : m == J (mod 2)} has size J+1 and contains the zero
    mode plus one member of each excited doublet; the gap sector has size J
    and its smallest eigenvalue is the spectral gap.  For even J these are
    the (even, odd) m-parity blocks; for odd J the labels swap.
    """
    if not j.is_integer_spin():
        raise NotIntegerSpin("SUSY sector blocks need integer J")
    if j.two_j < 2:
        raise NotIntegerSpin("SUSY sector blocks need J >= 1")
    idx = susy_sort(j)
    zero_sector = _sym_block(j, gamma, np.array(idx.even_m), omega0)
    gap_sector = _sym_block(j, gamma, np.array(idx.odd_m), omega0)
    return zero_sector, gap_sector


def gap_sector_tridiag(j: SpinJ, gamma: float, omega0: float = 1.0) -> SymTridiag:
    """O(J)-memory construction of the gap sector block only.

    The gap sector is {m = -J+1, -J+3, ..., J-1}, size J, for every integer
    J >= 1; built vectorized without materializing any dense operator.
    """
    if not j.is_integer_spin():
        raise NotIntegerSpin("gap sector needs integer J")
    jj = j.two_j // 2
    if jj < 1:
        raise NotIntegerSpin("gap sector needs J >= 1")
    m = np.arange(-jj + 1, jj, 2, dtype=float)
    return _sym_block(j, gamma, m, omega0)
