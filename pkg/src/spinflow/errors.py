"""Exception hierarchy shared by every spinflow module."""


class SpinflowError(Exception):
    """Base class for all library errors."""


class DimensionError(SpinflowError, ValueError):
    pass


class InvalidFrameError(SpinflowError, ValueError):
    """Structure constants that do not describe a Lie algebra."""


class ZeroSpinorError(SpinflowError, ValueError):
    pass


class InvalidComplexStructure(SpinflowError, ValueError):
    pass


class NotAnEigenspinor(SpinflowError):
    """D^2 Psi is not a multiple of Psi within tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NonRiemannianFlow(SpinflowError):
    pass


class NotEtaEinstein(SpinflowError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SpecError(SpinflowError):
    """Input file could not be turned into a ManifoldSpec (exit code 2)."""
