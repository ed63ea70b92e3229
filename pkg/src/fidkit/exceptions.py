"""Exception hierarchy for fidkit."""


class FidkitError(Exception):
    """Base class for all fidkit errors."""


class DimMismatch(FidkitError):
    """Inputs have incompatible dimensions."""


class DimTooSmall(FidkitError):
    """Dimension is below the minimum required by the operation."""


class NotHermitian(FidkitError):
    """Matrix fails the Hermiticity check."""


class NotPSD(FidkitError):
    """Matrix has an eigenvalue below the negative tolerance."""


class TraceNotOne(FidkitError):
    """Matrix trace differs from one beyond tolerance."""


class ConvergenceFailure(FidkitError):
    """An iterative solver failed to converge."""


class AllZeroSpectrum(FidkitError):
    """Both spectrum values of a saturating-pair pattern are zero."""


class TooFewStates(FidkitError):
    """A kernel test needs at least two states."""


class UnknownMeasure(FidkitError):
    """Measure identifier is not recognized."""


class InsufficientData(FidkitError):
    """Not enough benchmark records to fit a scaling exponent."""
