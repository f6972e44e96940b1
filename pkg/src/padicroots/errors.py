"""Exception hierarchy shared across the package."""


class PadicError(Exception):
    """Base class for all errors raised by this package."""


class NotInvertible(PadicError):
    """Residue is divisible by p, so it has no inverse mod p^k."""


class DivisibilityViolation(PadicError):
    """A claimed power of p does not divide the value it should."""


class ZeroConstantTerm(PadicError):
    """Operation requires f(0) != 0."""


class ContentDivisible(PadicError):
    """p divides every coefficient of the polynomial."""


class PrimeTooLarge(PadicError):
    """p exceeds the configured desk-scale cap for exhaustive scans."""


class BudgetExceeded(PadicError):
    """An exhaustive computation exceeded its configured budget."""


class CriterionFailed(PadicError):
    """Hensel's criterion does not hold at the given residue."""


class DerivativeNotInvertible(PadicError):
    """Newton refinement hit a derivative of unexpected valuation."""


class PrecisionTooLow(PadicError):
    """Requested computation needs more working precision."""


class InvalidParams(PadicError):
    """Parameters outside the documented domain."""


class ExponentOverflow(PadicError):
    """Exponent does not fit in 63 bits."""


class ModeHypothesisViolated(PadicError):
    """Input does not satisfy the hypothesis of the requested fast mode."""


class ParseError(PadicError):
    """Polynomial text or JSON could not be parsed."""
