"""Exception hierarchy for ffgold.

Every failure mode of the library maps to one of these classes so that the
CLI can translate them into stable exit codes (2 for validation problems,
3 for numerical failures).
"""


class FFGoldError(Exception):
    """Base class for all ffgold errors."""


class ValidationError(FFGoldError):
    """Bad input data or parameters (CLI exit code 2)."""


class NumericalError(FFGoldError):
    """A computation could not reach its accuracy target (CLI exit code 3)."""


# -- model construction ------------------------------------------------------

class SingularCurve(ValidationError):
    """Weierstrass discriminant vanishes."""


class WeilViolation(ValidationError):
    """An inverse root of the L-polynomial is off the circle |pi| = sqrt(q)."""


class FunctionalEquationViolation(ValidationError):
    """L-coefficients break the functional-equation symmetry."""


class InvalidSpec(ValidationError):
    """Derived counting data is inconsistent (e.g. negative place count)."""


class BudgetExceeded(ValidationError):
    """An exhaustive-enumeration oracle was asked for more than its budget."""


class DepthExceeded(ValidationError):
    """Point counts were not precomputed deep enough for the request."""


class DomainError(ValidationError):
    """Evaluation requested outside the operation's domain of validity."""


class DegenerateRatio(ValidationError):
    """log q1 / log q2 is rational (p1 = p2); the probe does not apply."""


# -- numerics ----------------------------------------------------------------

class ToleranceUnreachable(NumericalError):
    """Requested tail bound cannot be met within the truncation budget."""


class PoleAtNonPositiveInteger(NumericalError):
    """Gamma/digamma evaluated at a non-positive integer."""


class NearPole(NumericalError):
    """Evaluation point is within the guard radius of a singularity."""


class NearZeroOfLogDeriv(NumericalError):
    """s is within the guard radius of a zero of zeta'/zeta of K1."""


class QuadratureNotConverged(NumericalError):
    """Contour quadrature tail estimate exceeds the tolerance."""


class RootFindingFailed(NumericalError):
    """Polynomial root residual stayed above tolerance after polishing."""
