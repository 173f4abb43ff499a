"""Exception types shared across the toolkit."""


class BfError(Exception):
    """Base class for all toolkit errors."""


class NotPositiveDefinite(BfError):
    """Square-root decomposition hit a nonpositive pivot."""


class Singular(BfError):
    """Matrix inversion hit a vanishing pivot."""


class OutOfRange(BfError):
    """Value does not fit the fixed-point format's representable interval."""


class InvalidParameter(BfError):
    """Nonsensical model parameter (nonpositive noise variance or SNR target)."""


class DimensionMismatch(BfError):
    """Operand shapes are inconsistent."""


class ZeroChannelColumn(BfError):
    """A channel column is identically zero; the instance is degenerate."""


class SizeLimitExceeded(BfError):
    """Problem size exceeds the exhaustive-enumeration bound."""


class UnrepresentableConstant(BfError):
    """Instance constant does not lie on the encoding's fixed-point grid."""


class InconsistentAssignment(BfError):
    """Duplicated variable copies disagree in a satisfying assignment."""


class ParseError(BfError):
    """Malformed instance file."""
