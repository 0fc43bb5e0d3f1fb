"""Eigenvalue machinery.

* Sturm-sequence bisection for symmetric tridiagonal matrices — the
  O(J)-memory large-J path behind the spectral-gap scans.
* A dense symmetric oracle (LAPACK eigvalsh) for desk-scale cross-checks.
* Characteristic polynomials: a three-term recurrence for tridiagonal
  matrices and a Faddeev-LeVerrier trace recursion for small dense matrices,
  used to verify the determinant factorization of the non-Hermitian form.
* The similarity symmetrizer for sign-split tridiagonals and the resulting
  diagonal lower bound, which yields the gap bound cosh(2*gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    DimensionTooLarge,
    MethodUnavailable,
    NotIntegerSpin,
    NotSymmetric,
    SignViolation,
)
from .models import gap_sector_tridiag
from .spin import SpinJ
from .tridiag import GeneralTridiag, SymTridiag

__all__ = [
    "EigRequest",
    "CharPoly",
    "GapResult",
    "sturm_count",
    "eig_symtridiag",
    "eig_dense_symmetric",
    "charpoly_tridiag",
    "charpoly_dense",
    "symmetrize_tridiag",
    "diagonal_lower_bound",
    "spectral_gap",
]

_EPS = np.finfo(float).eps


def _sturm_kernel_py(diag, off, x, guard):
    count = 0
    d = diag[0] - x
    if d == 0.0:
        d = -guard
    if d < 0.0:
        count += 1
    for i in range(1, len(diag)):
        d = (diag[i] - x) - off[i - 1] * off[i - 1] / d
        if d == 0.0:
            d = -guard
        if d < 0.0:
            count += 1
    return count


try:  # pragma: no cover - exercised implicitly
    import numba

    _sturm_kernel = numba.njit(cache=True, nogil=True, fastmath=False)(_sturm_kernel_py)
except ImportError:  # pragma: no cover
    _sturm_kernel = _sturm_kernel_py


def _guard_scale(t: SymTridiag) -> float:
    hi = max(
        float(np.max(np.abs(t.diag))) if t.n else 0.0,
        float(np.max(np.abs(t.off))) if t.n > 1 else 0.0,
    )
    return _EPS * max(1.0, hi)


def sturm_count(t: SymTridiag, x: float) -> int:
    """Number of eigenvalues of t strictly less than x.

    Shifted LDL^T recurrence d_1 = diag[0]-x, d_{i+1} = (diag[i]-x) -
    off[i]^2/d_i; zero pivots are replaced by a tiny negative multiple of
    the matrix scale.  Total function, monotone nondecreasing in x.
    """
    if t.n == 0:
        return 0
    return int(_sturm_kernel(t.diag, t.off, float(x), _guard_scale(t)))


@dataclass(frozen=True)
class EigRequest:
    """Which eigenvalues to extract, and the bisection width target."""

    which: str                  # "all" | "smallest" | "kth" | "interval"
    k: int = 0
    interval: tuple = ()
    abs_tol: float = 1e-12

    @classmethod
    def all(cls, abs_tol: float = 1e-12) -> "EigRequest":
        return cls(which="all", abs_tol=abs_tol)

    @classmethod
    def smallest(cls, abs_tol: float = 1e-12) -> "EigRequest":
        return cls(which="smallest", abs_tol=abs_tol)

    @classmethod
    def kth(cls, k: int, abs_tol: float = 1e-12) -> "EigRequest":
        return cls(which="kth", k=k, abs_tol=abs_tol)

    @classmethod
    def in_interval(cls, lo: float, hi: float, abs_tol: float = 1e-12) -> "EigRequest":
        return cls(which="interval", interval=(lo, hi), abs_tol=abs_tol)


def _gershgorin(t: SymTridiag) -> tuple:
    radius = np.zeros(t.n)
    if t.n > 1:
        a = np.abs(t.off)
        radius[:-1] += a
        radius[1:] += a
    lo = float(np.min(t.diag - radius))
    hi = float(np.max(t.diag + radius))
    return lo, hi


_POLISH_MAX_N = 20000
_EPS_LD = float(np.finfo(np.longdouble).eps)


def _polish_kth_ld(t: SymTridiag, k: int, lo: float, hi: float) -> float:
    """Extended-precision re-bisection around a converged float64 bracket.

    A float64 Sturm count locates eigenvalue transitions only to a few ulps
    of the matrix norm, which at norm ~ J^2 leaves an absolute bias well
    above 1e-12.  Re-running the count in long double around a padded
    bracket (the padding covers the float64 bias) brings the absolute error
    down to ~eps_longdouble * ||T||.
    """
    scale = max(1.0, _guard_scale(t) / _EPS)
    diag_ld = t.diag.astype(np.longdouble)
    off2_ld = np.square(t.off.astype(np.longdouble))
    guard = np.longdouble(_EPS_LD * scale)
    pad = np.longdouble(256.0 * _EPS * scale)
    a = np.longdouble(lo) - pad
    b = np.longdouble(hi) + pad
    target = np.longdouble(max(1e-14, 8.0 * _EPS_LD * scale))
    n = len(diag_ld)
    while b - a > target:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        count = 0
        d = diag_ld[0] - mid
        if d == 0.0:
            d = -guard
        if d < 0.0:
            count += 1
        for i in range(1, n):
            d = (diag_ld[i] - mid) - off2_ld[i - 1] / d
            if d == 0.0:
                d = -guard
            if d < 0.0:
                count += 1
        if count >= k + 1:
            b = mid
        else:
            a = mid
    return float(0.5 * (a + b))


def _bisect_kth(t: SymTridiag, k: int, lo: float, hi: float, abs_tol: float) -> float:
    """Bisect for the k-th smallest eigenvalue (0-based) within [lo, hi].

    After the float64 phase converges, matrices small enough for a pure
    Python pass get a long-double polish (see _polish_kth_ld); the large-J
    fast path stays entirely in jitted float64.
    """
    while True:
        width = hi - lo
        if width <= max(abs_tol, 4.0 * _EPS * max(abs(lo), abs(hi))):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # interval no longer splittable in floats
            break
        if sturm_count(t, mid) >= k + 1:
            hi = mid
        else:
            lo = mid
    if t.n <= _POLISH_MAX_N:
        return _polish_kth_ld(t, k, lo, hi)
    return 0.5 * (lo + hi)


def eig_symtridiag(t: SymTridiag, req: EigRequest = EigRequest.all()) -> np.ndarray:
    """Requested eigenvalues of a symmetric tridiagonal matrix, ascending.

    Bisection within Gershgorin bounds driven by sturm_count; each returned
    value is bracketed to width <= req.abs_tol (or a few ulps of the bracket).
    The smallest-eigenvalue path uses O(1) memory beyond the two input arrays.
    """
    if t.n == 0:
        return np.empty(0)
    lo, hi = _gershgorin(t)
    hi = hi + _guard_scale(t)  # ensure count(hi) == n
    if req.which == "smallest":
        ks = [0]
    elif req.which == "kth":
        if not 0 <= req.k < t.n:
            raise ValueError(f"k={req.k} out of range for dimension {t.n}")
        ks = [req.k]
    elif req.which == "interval":
        a, b = req.interval
        ks = list(range(sturm_count(t, a), sturm_count(t, b)))
    elif req.which == "all":
        ks = list(range(t.n))
    else:
        raise ValueError(f"unknown request {req.which!r}")
    return np.array([_bisect_kth(t, k, lo, hi, req.abs_tol) for k in ks])


def eig_dense_symmetric(m: np.ndarray) -> np.ndarray:
    """All eigenvalues of a dense symmetric matrix, sorted ascending.

    Desk-scale oracle (dimension up to a few hundred).  Rejects inputs whose
    asymmetry exceeds 1e-12 of their norm.
    """
    m = np.asarray(m, dtype=float)
    scale = max(1.0, float(np.max(np.abs(m))))
    if float(np.max(np.abs(m - m.T))) > 1e-12 * scale:
        raise NotSymmetric("matrix is not symmetric within 1e-12 relative")
    return np.sort(np.linalg.eigvalsh(0.5 * (m + m.T)))


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial, coefficients stored ascending-degree."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        return float(np.polynomial.polynomial.polyval(x, self.coeffs))

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        return CharPoly(np.polynomial.polynomial.polymul(self.coeffs, other.coeffs))

    def times_lambda(self) -> "CharPoly":
        """Multiply by the spectral variable (append a zero root)."""
        return CharPoly(np.concatenate([[0.0], self.coeffs]))


_CHARPOLY_TRIDIAG_MAX = 60
_CHARPOLY_DENSE_MAX = 25


def charpoly_tridiag(a: Union[GeneralTridiag, SymTridiag]) -> CharPoly:
    """Characteristic polynomial of a tridiagonal matrix via the three-term
    recurrence p_k = (lam - alpha_k) p_{k-1} - (super_{k-1} sub_{k-1}) p_{k-2}.

    Depends only on the off-diagonal products, so permutation-equivalent and
    similarity-symmetrized matrices give bit-identical coefficients.
    """
    if isinstance(a, SymTridiag):
        a = a.to_general()
    n = a.n
    if n > _CHARPOLY_TRIDIAG_MAX:
        raise DimensionTooLarge(f"dimension {n} exceeds {_CHARPOLY_TRIDIAG_MAX}")
    prod = a.offdiag_products
    p_prev = np.array([1.0])                      # p_0
    p = np.array([-a.alpha[0], 1.0]) if n else np.array([1.0])
    for k in range(1, n):
        # (lam - alpha_k) * p
        term = np.concatenate([[0.0], p]) - a.alpha[k] * np.concatenate([p, [0.0]])
        term[: len(p_prev)] -= prod[k - 1] * p_prev
        p_prev, p = p, term
    return CharPoly(p)


def charpoly_dense(m: np.ndarray) -> CharPoly:
    """Characteristic polynomial of a small dense matrix via the
    Faddeev-LeVerrier trace recursion (conditioning guard: dimension <= 25)."""
    m = np.asarray(m, dtype=np.longdouble)
    n = m.shape[0]
    if n > _CHARPOLY_DENSE_MAX:
        raise DimensionTooLarge(f"dimension {n} exceeds {_CHARPOLY_DENSE_MAX}")
    coeffs = np.zeros(n + 1, dtype=np.longdouble)
    coeffs[n] = 1.0
    work = np.eye(n, dtype=np.longdouble)
    for k in range(1, n + 1):
        work = m @ work
        c = -np.trace(work) / k
        coeffs[n - k] = c
        work = work + c * np.eye(n, dtype=np.longdouble)
    return CharPoly(coeffs.astype(float))


def symmetrize_tridiag(a: GeneralTridiag) -> tuple:
    """Similarity-balance a sign-split tridiagonal: off-diagonal pairs
    (-beta_k, +gamma_k) become (-sqrt(beta_k gamma_k), +sqrt(beta_k gamma_k)).

    Returns (aprime, t_diag) where t_diag is the diagonal of the similarity
    T (t_1 = 1, t_{i+1} = t_i * sqrt(beta_i/gamma_i)) with T A T^-1 = aprime.
    The symmetric part of aprime is exactly its diagonal, which is what makes
    the diagonal lower bound valid.  Requires beta_k, gamma_k > 0 strictly.
    """
    if a.n > 1 and (np.any(a.beta <= 0) or np.any(a.gamma_sub <= 0)):
        raise SignViolation("symmetrizer requires beta_k > 0 and gamma_k > 0")
    w = np.sqrt(a.beta * a.gamma_sub)
    aprime = GeneralTridiag(alpha=a.alpha.copy(), beta=w, gamma_sub=w.copy())
    t_diag = np.ones(a.n)
    if a.n > 1:
        ratios = np.sqrt(a.beta / a.gamma_sub)   # t_{i+1} = t_i * sqrt(beta_i/gamma_i)
        t_diag[1:] = np.cumprod(ratios)
    return aprime, t_diag


def diagonal_lower_bound(aprime: GeneralTridiag) -> float:
    """min over the diagonal of a balanced sign-split tridiagonal; a lower
    bound on its smallest (real) eigenvalue because the symmetric part is
    diagonal and the antisymmetric part has zero Rayleigh quotient."""
    return float(np.min(aprime.alpha))


@dataclass(frozen=True)
class GapResult:
    gap: float
    bound: float
    satisfied: bool


_DENSE_GAP_MAX_J = 200


def spectral_gap(
    j: SpinJ,
    gamma: float,
    method: str = "tridiag",
    omega0: float = 1.0,
    abs_tol: float = 1e-12,
) -> GapResult:
    """Spectral gap of the SUSY LMG Hamiltonian and its analytic lower bound.

    The gap is the smallest eigenvalue of the size-J sector block (the sector
    without the zero mode).  method="tridiag" runs Sturm bisection in O(J)
    memory; method="dense" diagonalizes the block densely (J <= 200 only).
    The bound is omega0^2 * cosh(2*gamma); satisfied allows a 1e-9 slack.
    """
    if not j.is_integer_spin():
        raise NotIntegerSpin("the spectral gap is defined for integer J")
    t = gap_sector_tridiag(j, gamma, omega0)
    if method == "tridiag":
        gap = float(eig_symtridiag(t, EigRequest.smallest(abs_tol))[0])
    elif method == "dense":
        if j.two_j // 2 > _DENSE_GAP_MAX_J:
            raise MethodUnavailable(f"dense gap path limited to J <= {_DENSE_GAP_MAX_J}")
        gap = float(eig_dense_symmetric(t.to_dense())[0])
    else:
        raise MethodUnavailable(f"unknown method {method!r}")
    bound = omega0**2 * math.cosh(2.0 * gamma)
    satisfied = gap >= bound - 1e-9 * max(1.0, bound)
    return GapResult(gap=gap, bound=bound, satisfied=satisfied)
