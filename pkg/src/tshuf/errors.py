"""Exception hierarchy.

Errors in the ``InternalContradiction`` branch signal that an identity the
library relies on failed to hold; they should be unreachable on correct
inputs and map to CLI exit code 3.
"""


class TshufError(Exception):
    pass


class ArityMismatch(TshufError):
    """Binary operation on Laurent polynomials of distinct positive arities."""


class ArityCapExceeded(TshufError):
    """Requested symmetrization beyond the configured arity cap."""

    def __init__(self, arity, cap):
        super().__init__(f"arity {arity} exceeds cap {cap} (TSHUF_ARITY_CAP)")
        self.arity = arity
        self.cap = cap


class NotDivisible(TshufError):
    """Exact division failed; carries the remainder at the point of failure."""

    def __init__(self, remainder, divisor, message="not divisible"):
        super().__init__(message)
        self.remainder = remainder
        self.divisor = divisor


class NotPolynomial(TshufError):
    """A rational expression failed to clear a denominator factor."""

    def __init__(self, factor, remainder=None):
        super().__init__("denominator factor does not divide the numerator")
        self.factor = factor
        self.remainder = remainder


class RegionViolation(TshufError):
    """Geometric expansion of a factor that is not small in the declared region."""


class ZeroDenominator(TshufError):
    """A substitution or construction produced a zero denominator factor."""


class NotInS(TshufError):
    """Operation requires a member of the integral shuffle algebra."""

    def __init__(self, report):
        super().__init__("element is not in the integral shuffle algebra")
        self.report = report


class NotInSpan(TshufError):
    """Element is not in the span of the PBW monomials over the given window."""

    def __init__(self, residual):
        super().__init__("element not in the PBW span over this window")
        self.residual = residual


class TruncationUnstable(TshufError):
    """Ordered constant term changed when the truncation bound was raised."""


class InternalContradiction(TshufError):
    """An identity that must hold failed; indicates a bug, not bad input."""


class NonTermination(InternalContradiction):
    """The decreasing measure of the correction loop failed to decrease."""


class CalibrationFailure(InternalContradiction):
    """No global residue sign reconciles the two pairing evaluations."""
