"""Exception types shared across the library."""


class LmgError(Exception):
    """Base class for all library errors."""


class NotIntegerSpin(LmgError):
    """Operation requires integer total spin J (even particle number)."""


class DegenerateAnisotropy(LmgError):
    """chi2 >= chi1, so Omega0**2 <= 0 and the (Omega0, gamma) map is undefined."""


class OverflowRisk(LmgError):
    """Matrix exponential argument too large for double precision."""


class NotSymmetric(LmgError):
    """Dense eigensolver input is not symmetric within tolerance."""


class DimensionMismatch(LmgError):
    """Operands have incompatible dimensions."""


class DimensionTooLarge(LmgError):
    """Characteristic-polynomial routine called beyond its conditioning guard."""


class SignViolation(LmgError):
    """Tridiagonal symmetrizer requires strictly positive off-diagonal pairs."""


class EmptySpectrum(LmgError):
    """Spectrum classification called with no eigenvalues."""


class MethodUnavailable(LmgError):
    """Requested eigenvalue method is not applicable at this problem size."""
