"""Collective spin operators in the Jz eigenbasis, plus basis machinery.

All matrices are real.  Complex structure is carried by ``Ky = i*Jy``, which
is real antisymmetric; identities involving Jy are restated accordingly
(e.g. ``Jy**2 = -Ky @ Ky``).  Basis convention: index ``i`` corresponds to
magnetic quantum number ``m = i - J``, ascending from -J to +J.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotIntegerSpin, OverflowRisk

__all__ = [
    "SpinJ",
    "SpinOperators",
    "ParityIndex",
    "build_spin_operators",
    "mat_exp_scaled",
    "parity_sort",
    "susy_sort",
]

#: largest allowed value of |t| * ||M||_1 in mat_exp_scaled; exp(700) is near
#: the double-precision overflow threshold.
MATEXP_ARG_LIMIT = 700.0


@dataclass(frozen=True)
class SpinJ:
    """Total spin J stored as the integer 2J (so half-integers are exact)."""

    two_j: int

    def __post_init__(self):
        if self.two_j < 0 or not isinstance(self.two_j, int):
            raise ValueError(f"two_j must be a non-negative integer, got {self.two_j!r}")

    @classmethod
    def from_j(cls, j) -> "SpinJ":
        """Build from a numeric or string J ("2", "1.5", "3/2" all work)."""
        frac = Fraction(j) if isinstance(j, str) else Fraction(j).limit_denominator(2)
        two_j = frac * 2
        if two_j.denominator != 1:
            raise ValueError(f"j must be integer or half-integer, got {j!r}")
        return cls(int(two_j))

    @property
    def j(self) -> float:
        return self.two_j / 2.0

    @property
    def dim(self) -> int:
        return self.two_j + 1

    @property
    def n_particles(self) -> int:
        """N = 2J spin-1/2 particles in the maximal symmetric sector."""
        return self.two_j

    def is_integer_spin(self) -> bool:
        return self.two_j % 2 == 0

    def m_values(self) -> np.ndarray:
        """Magnetic quantum numbers -J .. +J, ascending."""
        return np.arange(self.dim) - self.j

    def __str__(self) -> str:
        return str(self.two_j // 2) if self.is_integer_spin() else str(self.two_j / 2)


@dataclass(frozen=True)
class SpinOperators:
    """Real matrix images of Jx, Ky = i*Jy, Jz for total spin j."""

    j: SpinJ
    jx: np.ndarray   # real symmetric
    ky: np.ndarray   # real antisymmetric
    jz: np.ndarray   # diagonal, entries m


def _ladder_half(j: SpinJ) -> np.ndarray:
    """Entries (1/2)*sqrt(J(J+1) - m(m+1)) for m = -J .. J-1 (Condon-Shortley)."""
    jj = j.j
    m = j.m_values()[:-1]
    return 0.5 * np.sqrt(jj * (jj + 1.0) - m * (m + 1.0))


def build_spin_operators(j: SpinJ) -> SpinOperators:
    """Exact matrix representations of Jx, Ky, Jz for total spin j.

    <m+1|Jx|m> = <m|Jx|m+1> = (1/2)sqrt(J(J+1) - m(m+1)), all real nonnegative;
    <m+1|Ky|m> = +(1/2)sqrt(J(J+1) - m(m+1)) and Ky is antisymmetric.
    """
    v = _ladder_half(j)
    jx = np.diag(v, -1) + np.diag(v, 1)
    ky = np.diag(v, -1) - np.diag(v, 1)
    jz = np.diag(j.m_values())
    return SpinOperators(j=j, jx=jx, ky=ky, jz=jz)


def mat_exp_scaled(m: np.ndarray, t: float) -> np.ndarray:
    """exp(t*m) by scaling-and-squaring with a truncated Taylor series.

    Series terms are added until their max-norm drops below 1e-18 relative;
    squaring count is s = max(0, ceil(log2(||t*m||_1))).  Raises OverflowRisk
    when |t|*||m||_1 exceeds the exp(700) representability guard.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    norm1 = float(np.max(np.sum(np.abs(m), axis=0))) if n else 0.0
    if abs(t) * norm1 > MATEXP_ARG_LIMIT:
        raise OverflowRisk(
            f"|t|*||m||_1 = {abs(t) * norm1:.3g} exceeds the {MATEXP_ARG_LIMIT:g} guard"
        )
    scaled_norm = abs(t) * norm1
    s = max(0, math.ceil(math.log2(scaled_norm))) if scaled_norm > 1.0 else 0
    a = (t / (1 << s)) * m
    result = np.eye(n)
    term = np.eye(n)
    scale = max(1.0, float(np.max(np.abs(a))))
    for k in range(1, 60):
        term = term @ a / k
        result = result + term
        if np.max(np.abs(term)) < 1e-18 * scale:
            break
    for _ in range(s):
        result = result @ result
    return result


@dataclass(frozen=True)
class ParityIndex:
    """A two-sector split of the Jz basis with its sorting permutation.

    ``even_m`` is the first sector, ``odd_m`` the second, both ascending in m.
    ``perm[k]`` is the original basis index of the k-th sorted vector.
    """

    j: SpinJ
    even_m: tuple
    odd_m: tuple
    perm: np.ndarray

    @property
    def sizes(self) -> tuple:
        return (len(self.even_m), len(self.odd_m))

    def apply(self, matrix: np.ndarray) -> np.ndarray:
        """Conjugate a (2J+1)x(2J+1) matrix into the sector-sorted basis."""
        return matrix[np.ix_(self.perm, self.perm)]

    def blocks(self, matrix: np.ndarray):
        """Return the (first, second) diagonal blocks of the sorted matrix."""
        sorted_m = self.apply(matrix)
        k = len(self.even_m)
        return sorted_m[:k, :k], sorted_m[k:, k:]


def _make_index(j: SpinJ, first: list, second: list) -> ParityIndex:
    to_idx = lambda m: int(m + j.two_j // 2)
    perm = np.array([to_idx(m) for m in first] + [to_idx(m) for m in second])
    return ParityIndex(j=j, even_m=tuple(first), odd_m=tuple(second), perm=perm)


def parity_sort(j: SpinJ) -> ParityIndex:
    """Split the basis by parity of m: even-m sector first, both ascending.

    For integer J the even-m sector always contains m = 0; sizes are
    (J+1, J) for even J and (J, J+1) for odd J.
    """
    if not j.is_integer_spin():
        raise NotIntegerSpin("m-parity split needs integer m, i.e. integer J")
    ms = [int(m) for m in j.m_values()]
    even = [m for m in ms if m % 2 == 0]
    odd = [m for m in ms if m % 2 != 0]
    return _make_index(j, even, odd)


def susy_sort(j: SpinJ) -> ParityIndex:
    """Split the basis by boson-excitation parity F = (m + J) mod 2.

    The F=0 sector {m : m == J (mod 2)} comes first; it has size J+1 and is
    the sector holding the zero mode.  The F=1 sector has size J.  For even J
    this coincides with parity_sort; for odd J the two labelings swap.
    """
    if not j.is_integer_spin():
        raise NotIntegerSpin("SUSY sector split needs integer J")
    jj = j.two_j // 2
    ms = [int(m) for m in j.m_values()]
    f0 = [m for m in ms if (m - jj) % 2 == 0]
    f1 = [m for m in ms if (m - jj) % 2 != 0]
    return _make_index(j, f0, f1)
