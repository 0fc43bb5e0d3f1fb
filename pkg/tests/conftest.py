"""Shared oracles and reference fixtures for the test suite.

Everything here is built independently of the package internals: complex
ladder-operator matrices, a Rodrigues-sum Legendre evaluator, and the
explicit J=2 reference matrices (analytic closed forms over cosh/sinh of
2*gamma), so that library results are checked against constructions that
share no code with the implementation.
"""

import math

import numpy as np
import pytest


# ---------------------------------------------------------------- oracles

def complex_spin_ops(two_j: int):
    """Complex (Jx, Jy, Jz) from the raw ladder-operator definition."""
    jj = two_j / 2.0
    dim = two_j + 1
    m = np.arange(dim) - jj
    jp = np.zeros((dim, dim), dtype=complex)
    for i in range(dim - 1):
        jp[i + 1, i] = math.sqrt(jj * (jj + 1) - m[i] * (m[i] + 1))
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2j
    jz = np.diag(m.astype(complex))
    return jx, jy, jz


def oracle_h_susy(two_j: int, gamma: float, omega0: float = 1.0) -> np.ndarray:
    """Dense SUSY Hamiltonian assembled in complex arithmetic."""
    jx, jy, jz = complex_spin_ops(two_j)
    c, s = math.cosh(gamma), math.sinh(gamma)
    h = c * c * (jx @ jx) + s * s * (jy @ jy) + c * s * jz
    h = omega0**2 * h
    assert np.max(np.abs(h.imag)) < 1e-13 * max(1.0, np.max(np.abs(h.real)))
    return h.real


def legendre_rodrigues(n: int, x: float) -> float:
    """P_n(x) by the finite Rodrigues sum
    P_n(x) = 2^-n sum_k C(n,k)^2 (x-1)^(n-k) (x+1)^k  — independent of the
    Bonnet recurrence used by the library."""
    total = 0.0
    for k in range(n + 1):
        total += math.comb(n, k) ** 2 * (x - 1.0) ** (n - k) * (x + 1.0) ** k
    return total / 2.0**n


# ------------------------------------------------- J=2 reference matrices

def ref_sorted_h_j2(g: float) -> np.ndarray:
    """Sector-sorted J=2 Hamiltonian: even block over m = (-2, 0, 2), odd
    block over m = (+1, -1)."""
    c2, s2 = math.cosh(2 * g), math.sinh(2 * g)
    r32 = math.sqrt(1.5)
    h = np.zeros((5, 5))
    h[:3, :3] = [
        [math.exp(-2 * g), r32, 0.0],
        [r32, 3 * c2, r32],
        [0.0, r32, math.exp(2 * g)],
    ]
    h[3:, 3:] = [
        [0.5 * (5 * c2 + s2), 1.5],
        [1.5, 0.5 * (5 * c2 - s2)],
    ]
    return h


def ref_q1_j2(g: float) -> np.ndarray:
    """J=2 first supercharge in the same sorted basis as ref_sorted_h_j2."""
    r32 = math.sqrt(1.5)
    em, ep = math.exp(-g), math.exp(g)
    x = np.array([
        [em, 0.0],
        [r32 * ep, r32 * em],
        [0.0, ep],
    ])
    q = np.zeros((5, 5))
    q[:3, 3:] = x
    q[3:, :3] = x.T
    return q


def ref_r2_j2(g: float) -> np.ndarray:
    """J=2 second supercharge divided by i (a real antisymmetric matrix)."""
    q = ref_q1_j2(g)
    r = q.copy()
    r[:3, 3:] *= -1.0
    return r


def ref_hn_j2(g: float) -> np.ndarray:
    """J=2 non-Hermitian similar Hamiltonian (m ascending -2..2)."""
    c2, s2 = math.cosh(2 * g), math.sinh(2 * g)
    r6h = math.sqrt(6.0) / 2.0
    return np.array([
        [4 * c2, s2, 0.0, 0.0, 0.0],
        [-2 * s2, c2, 0.0, 0.0, 0.0],
        [0.0, -r6h * s2, 0.0, -r6h * s2, 0.0],
        [0.0, 0.0, 0.0, c2, -2 * s2],
        [0.0, 0.0, 0.0, s2, 4 * c2],
    ])


def ref_h_minus_j2(g: float) -> np.ndarray:
    c2, s2 = math.cosh(2 * g), math.sinh(2 * g)
    return np.array([[4 * c2, s2], [-2 * s2, c2]])


def ref_h_plus_j2(g: float) -> np.ndarray:
    c2, s2 = math.cosh(2 * g), math.sinh(2 * g)
    return np.array([[c2, -2 * s2], [s2, 4 * c2]])


def ref_a_vec_j2(g: float) -> np.ndarray:
    """m=0 coupling row over (m=-1, m=-2), outward order."""
    s2 = math.sinh(2 * g)
    return np.array([-math.sqrt(6.0) / 2.0 * s2, 0.0])


def gap_closed_form_j2(g: float) -> float:
    """Smallest eigenvalue of the 2x2 odd block: the exact J=2 gap."""
    c2, s2 = math.cosh(2 * g), math.sinh(2 * g)
    return 0.5 * (5 * c2 - math.sqrt(s2 * s2 + 9.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
