"""Spectral analysis of the antiferromagnetic Lipkin-Meshkov-Glick model."""

from .errors import (
    DegenerateAnisotropy,
    DimensionMismatch,
    DimensionTooLarge,
    EmptySpectrum,
    LmgError,
    MethodUnavailable,
    NotIntegerSpin,
    NotSymmetric,
    OverflowRisk,
    SignViolation,
)
from .spin import (
    ParityIndex,
    SpinJ,
    SpinOperators,
    build_spin_operators,
    mat_exp_scaled,
    parity_sort,
    susy_sort,
)
from .tridiag import GeneralTridiag, SymTridiag
from .models import (
    HnBlocks,
    ModelParams,
    build_factorized,
    build_lmg_general,
    build_nonhermitian,
    build_susy_rotated,
    extract_hn_blocks,
    gap_sector_tridiag,
    h_minus_elements,
    params_from_chi,
    parity_blocks_susy,
    susy_sector_blocks,
)
from .susy import (
    SpectrumReport,
    Supercharges,
    SuperalgebraResiduals,
    build_supercharges,
    classify_spectrum,
    susy_sorted_hamiltonian,
    verify_superalgebra,
)
from .eigensolve import (
    CharPoly,
    EigRequest,
    GapResult,
    charpoly_dense,
    charpoly_tridiag,
    diagonal_lower_bound,
    eig_dense_symmetric,
    eig_symtridiag,
    spectral_gap,
    sturm_count,
    symmetrize_tridiag,
)
from .groundstate import GroundState, ground_state, legendre_p

__version__ = "0.1.0"
