"""Closed-form zero-energy ground state and its Legendre normalization.

For integer J the factorized Hamiltonian annihilates exp(gamma*Jx)|m_z=0>,
and the squared norm of that vector is P_J(cosh(2*gamma)) with P_J the
Legendre polynomial.  The module evaluates both sides independently:
amplitudes through the matrix exponential (or a shifted spectral method
beyond its overflow guard) and the normalization through the Bonnet
recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import NotIntegerSpin
from .models import build_factorized, build_susy_rotated, susy_sector_blocks
from .spin import MATEXP_ARG_LIMIT, SpinJ, build_spin_operators, mat_exp_scaled, susy_sort

__all__ = ["GroundState", "legendre_p", "ground_state"]


def legendre_p(n: int, x: float) -> float:
    """Legendre polynomial P_n(x) by the Bonnet three-term recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p_prev, p = 1.0, x
    if n == 0:
        return p_prev
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p


@dataclass(frozen=True)
class GroundState:
    """Zero-mode amplitudes over |m>, ascending m, plus verification numbers.

    norm_direct is the unnormalized column norm ||exp(gamma*Jx)|0>||,
    norm_legendre is sqrt(P_J(cosh(2*gamma))); their agreement is the
    Legendre normalization identity.  amplitudes are normalized to 1.
    energy_residual is ||H @ amplitudes|| in the requested frame.
    """

    j: SpinJ
    gamma: float
    amplitudes: np.ndarray
    norm_direct: float
    norm_legendre: Optional[float]
    energy_residual: float
    frame: str = "factorized"


def _expm_column_spectral(j: SpinJ, gamma: float) -> np.ndarray:
    """exp(gamma*Jx)|m=0> up to positive scale, via the eigendecomposition of
    the tridiagonal Jx with the largest exponent factored out (overflow-safe
    for any gamma*J)."""
    s = build_spin_operators(j)
    off = np.diag(s.jx, -1)
    w, v = eigh_tridiagonal(np.zeros(j.dim), off)
    zero_idx = j.two_j // 2
    weights = np.exp(abs(gamma) * (w * np.sign(gamma) - w[-1])) * v[zero_idx, :]
    col = v @ weights
    return col


def ground_state(j: SpinJ, gamma: float, frame: str = "factorized") -> GroundState:
    """The exact E=0 ground state for integer J.

    frame="factorized" (default) returns the closed-form state
    exp(gamma*Jx)|m_z=0> / sqrt(P_J(cosh 2 gamma)) with its residual against
    the factorized Hamiltonian.  frame="rotated" returns the zero mode of the
    rotated form instead (the kernel vector of the zero-sector block), for
    which the Legendre normalization does not apply.
    """
    if not j.is_integer_spin():
        raise NotIntegerSpin("the zero mode needs |m_z=0>, i.e. integer J")
    jj = j.two_j // 2
    dim = j.dim

    if frame == "rotated":
        if jj == 0:
            amps = np.array([1.0])
            resid = 0.0
        else:
            zero_block, _ = susy_sector_blocks(j, gamma)
            w, v = eigh_tridiagonal(zero_block.diag, zero_block.off)
            vec = v[:, int(np.argmin(w))]
            idx = susy_sort(j)
            amps = np.zeros(dim)
            amps[idx.perm[: len(idx.even_m)]] = vec
            h = build_susy_rotated(j, gamma)
            resid = float(np.linalg.norm(h @ amps))
        return GroundState(
            j=j, gamma=gamma, amplitudes=amps, norm_direct=1.0,
            norm_legendre=None, energy_residual=resid, frame=frame,
        )
    if frame != "factorized":
        raise ValueError(f"unknown frame {frame!r}")

    s = build_spin_operators(j)
    norm1 = float(np.max(np.sum(np.abs(s.jx), axis=0))) if dim > 1 else 0.0
    if abs(gamma) * norm1 <= MATEXP_ARG_LIMIT:
        col = mat_exp_scaled(s.jx, gamma)[:, jj]
        norm_direct = float(np.linalg.norm(col))
    else:
        col = _expm_column_spectral(j, gamma)  # known only up to scale
        norm_direct = math.nan
    norm_legendre = math.sqrt(legendre_p(jj, math.cosh(2.0 * gamma)))
    if math.isfinite(norm_direct):
        amps = col / norm_legendre
    else:
        amps = col / np.linalg.norm(col)

    h = build_factorized(j, gamma)
    resid = float(np.linalg.norm(h @ (amps / np.linalg.norm(amps))))
    return GroundState(
        j=j, gamma=gamma, amplitudes=amps, norm_direct=norm_direct,
        norm_legendre=norm_legendre, energy_residual=resid, frame=frame,
    )
