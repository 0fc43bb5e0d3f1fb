"""Supercharges, superalgebra verification, and spectrum classification.

Supercharges are built in the SUSY-sorted basis (zero-mode sector of size
J+1 first, gap sector of size J second, see spin.susy_sort), where they are
purely off-block-diagonal and Q1^2 reproduces the sorted Hamiltonian exactly.
Q2 is purely imaginary; its real content is r2 with Q2 = i*r2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, EmptySpectrum, NotIntegerSpin
from .models import build_susy_rotated
from .spin import SpinJ, build_spin_operators, susy_sort

__all__ = [
    "Supercharges",
    "SuperalgebraResiduals",
    "SpectrumReport",
    "build_supercharges",
    "susy_sorted_hamiltonian",
    "verify_superalgebra",
    "classify_spectrum",
]


@dataclass(frozen=True)
class Supercharges:
    """q1 (symmetric) and r2 (antisymmetric, Q2 = i*r2) in the sorted basis."""

    q1: np.ndarray
    r2: np.ndarray


def susy_sorted_hamiltonian(j: SpinJ, gamma: float, omega0: float = 1.0) -> np.ndarray:
    """Rotated SUSY Hamiltonian permuted into the supercharge basis."""
    return susy_sort(j).apply(build_susy_rotated(j, gamma, omega0))


def build_supercharges(j: SpinJ, gamma: float) -> Supercharges:
    """Supercharge pair for integer J.

    Let M = Jx cosh(g) + Ky sinh(g) (the real image of Jx cosh(g) +
    i Jy sinh(g)).  The coupling block is M restricted to (zero-sector rows,
    gap-sector columns) with the gap-sector columns taken in reversed m
    order; the reversal is what makes q1^2 equal the sorted Hamiltonian in
    both sectors simultaneously.
    """
    if not j.is_integer_spin():
        raise NotIntegerSpin("supercharges require integer J (even particle number)")
    s = build_spin_operators(j)
    m1t = math.cosh(gamma) * s.jx + math.sinh(gamma) * s.ky
    idx = susy_sort(j)
    k = len(idx.even_m)
    rows = idx.perm[:k]
    cols = idx.perm[k:][::-1]
    x = m1t[np.ix_(rows, cols)]
    dim = j.dim
    q1 = np.zeros((dim, dim))
    q1[:k, k:] = x
    q1[k:, :k] = x.T
    r2 = np.zeros((dim, dim))
    r2[:k, k:] = -x
    r2[k:, :k] = x.T
    return Supercharges(q1=q1, r2=r2)


@dataclass(frozen=True)
class SuperalgebraResiduals:
    """Max-norm residuals of the four superalgebra identities.

    r_q1_sq   : ||q1^2 - H||
    r_q2_sq   : ||r2^T r2 - H||          (Q2^2 = -r2^2 = r2^T r2)
    r_anti    : ||q1 r2 + r2 q1||        ({Q1, Q2} = 0 in real form)
    r_comm    : max(||[q1, H]||, ||[r2, H]||)
    """

    r_q1_sq: float
    r_q2_sq: float
    r_anti: float
    r_comm: float
    h_norm: float

    def passed(self, tol: float = 1e-10) -> bool:
        bound = tol * max(1.0, self.h_norm)
        return all(
            r <= bound for r in (self.r_q1_sq, self.r_q2_sq, self.r_anti, self.r_comm)
        )


def verify_superalgebra(s: Supercharges, h_sorted: np.ndarray) -> SuperalgebraResiduals:
    """Residuals of the superalgebra against the sector-sorted Hamiltonian."""
    h = np.asarray(h_sorted, dtype=float)
    if s.q1.shape != h.shape or s.r2.shape != h.shape:
        raise DimensionMismatch(
            f"supercharges {s.q1.shape} vs hamiltonian {h.shape}"
        )
    norm = lambda a: float(np.max(np.abs(a))) if a.size else 0.0
    r1 = norm(s.q1 @ s.q1 - h)
    r2 = norm(s.r2.T @ s.r2 - h)
    r3 = norm(s.q1 @ s.r2 + s.r2 @ s.q1)
    r4 = max(norm(s.q1 @ h - h @ s.q1), norm(s.r2 @ h - h @ s.r2))
    return SuperalgebraResiduals(
        r_q1_sq=r1, r_q2_sq=r2, r_anti=r3, r_comm=r4, h_norm=norm(h)
    )


@dataclass(frozen=True)
class SpectrumReport:
    """Sorted spectrum with its SUSY-pattern decomposition."""

    eigenvalues: np.ndarray
    zero_mode: Optional[tuple]          # (value, |value|) or None
    doublets: list = field(default_factory=list)   # (e_lo, e_hi, split)
    unpaired: list = field(default_factory=list)
    verdict: str = "SusyBroken"         # "SusyPattern" | "SusyBroken"
    pair_index: tuple = ()              # per level: doublet id, -1 zero, -2 unpaired


def classify_spectrum(eigs, j: SpinJ, tol: float = 1e-8) -> SpectrumReport:
    """Decompose a sorted spectrum into zero mode + doublets, or report why not.

    SusyPattern requires integer J, exactly one eigenvalue within the scaled
    zero tolerance, and every remaining eigenvalue paired with relative split
    <= tol.  Half-integer spectra pair completely (time-reversal doublets)
    but have no zero mode, hence SusyBroken.
    """
    eigs = np.asarray(eigs, dtype=float)
    if eigs.size == 0:
        raise EmptySpectrum("no eigenvalues to classify")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if np.any(np.diff(eigs) < 0):
        raise ValueError("eigenvalues must be sorted ascending")
    scale = max(1.0, float(np.max(np.abs(eigs))))
    zero_tol = tol * scale
    pair_index = np.full(eigs.size, -2, dtype=int)
    zeros = [i for i in range(eigs.size) if abs(eigs[i]) <= zero_tol]
    pair_index[zeros] = -1
    rest = [i for i in range(eigs.size) if abs(eigs[i]) > zero_tol]
    doublets = []
    unpaired = []
    i = 0
    while i < len(rest):
        if i + 1 < len(rest):
            lo, hi = eigs[rest[i]], eigs[rest[i + 1]]
            if abs(hi - lo) <= tol * max(1.0, abs(hi)):
                pair_index[rest[i]] = pair_index[rest[i + 1]] = len(doublets)
                doublets.append((lo, hi, abs(hi - lo)))
                i += 2
                continue
        unpaired.append(eigs[rest[i]])
        i += 1
    pattern = (
        j.is_integer_spin()
        and len(zeros) == 1
        and not unpaired
        and len(doublets) * 2 + 1 == eigs.size
    )
    zero_mode = (eigs[zeros[0]], abs(eigs[zeros[0]])) if len(zeros) == 1 else None
    return SpectrumReport(
        eigenvalues=eigs,
        zero_mode=zero_mode,
        doublets=doublets,
        unpaired=unpaired,
        verdict="SusyPattern" if pattern else "SusyBroken",
        pair_index=tuple(int(p) for p in pair_index),
    )
