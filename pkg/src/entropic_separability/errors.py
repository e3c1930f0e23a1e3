"""Exception types raised across the package."""


class SeparabilityError(Exception):
    """Base class for every error raised by this package."""


class NotHermitian(SeparabilityError, ValueError):
    pass


class NoConvergence(SeparabilityError, RuntimeError):
    pass


class InvalidFamilyParams(SeparabilityError, ValueError):
    pass


class InvalidDensity(SeparabilityError, ValueError):
    """Matrix is not a valid density matrix (Hermitian, unit trace, PSD)."""


class BadSubsystemSet(SeparabilityError, ValueError):
    pass


class BadSubsystemIndex(SeparabilityError, ValueError):
    pass


class DomainError(SeparabilityError, ValueError):
    pass


class DegenerateNormalization(SeparabilityError, ArithmeticError):
    pass


class InvalidDistribution(SeparabilityError, ValueError):
    pass


class InvalidEntropicFunction(SeparabilityError, ValueError):
    pass


class NoSignChange(SeparabilityError, ValueError):
    pass


class UnknownTag(SeparabilityError, ValueError):
    pass


class DensityFormatError(SeparabilityError, ValueError):
    """Malformed density-matrix text file; carries the offending line number."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ConfigError(SeparabilityError, ValueError):
    pass
