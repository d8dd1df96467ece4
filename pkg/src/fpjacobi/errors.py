"""Exception hierarchy for fpjacobi."""


class FpjacobiError(Exception):
    """Base class for all fpjacobi errors."""


class PoleError(FpjacobiError):
    """Argument sits (numerically) on a pole of Gamma or Beta."""


class InvalidParameters(FpjacobiError):
    """Weight parameters violate the validity constraints."""


class DegreeCapExceeded(FpjacobiError):
    """Requested polynomial degree exceeds the configured cap."""


class RecurrenceBreakdown(FpjacobiError):
    """A three-term recurrence denominator vanished numerically."""


class NonConvergent(FpjacobiError):
    """Series evaluation requested outside its radius of convergence."""


class QuadratureFailure(FpjacobiError):
    """Adaptive quadrature did not reach the requested tolerance."""


class EvaluationFailure(FpjacobiError):
    """A user-supplied function could not be evaluated (pole, overflow...)."""


class InsufficientData(FpjacobiError):
    """Not enough usable coefficients for the requested estimate."""


class ResonantEigenvalue(FpjacobiError):
    """The spectral parameter coincides with an operator eigenvalue.

    Attributes:
        indices: list of resonant mode numbers n with c == n(n+a+b-1).
    """

    def __init__(self, indices, message=None):
        self.indices = list(indices)
        if message is None:
            message = f"resonant eigenvalue(s) at n = {self.indices}"
        super().__init__(message)


class ParseError(FpjacobiError):
    """Expression syntax error.

    Attributes:
        offset: byte offset of the failure in the source text.
        expected: set of token descriptions that would have been accepted.
    """

    def __init__(self, offset, expected, message=None):
        self.offset = offset
        self.expected = set(expected)
        if message is None:
            exp = ", ".join(sorted(self.expected))
            message = f"parse error at offset {offset}: expected {exp}"
        super().__init__(message)
