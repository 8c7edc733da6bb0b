"""Semantic exception hierarchy shared across the toolkit.

Two error families matter to callers (and to the CLI exit-code mapping):
invalid inputs (`DomainError` and subclasses, exit code 2) and numerical
failures (`NumericalError` and subclasses, exit code 3).
"""


class MotkitError(Exception):
    """Base class for all toolkit errors."""


class DomainError(MotkitError, ValueError):
    """An argument lies outside the mathematical domain of a formula."""


class SeibergViolationError(DomainError):
    """Insertion sizes violate the Seiberg admissibility bounds."""


class HypothesisViolationError(DomainError):
    """Weights violate the hypotheses of the boundary-length power law."""


class NumericalError(MotkitError, RuntimeError):
    """A computation failed to reach its accuracy or stability target."""


class PoleProximityError(NumericalError):
    """An argument is too close to a pole of a special function.

    `factor` names the offending factor for diagnosis.
    """

    def __init__(self, message: str, factor: str = "", distance: float = float("nan")):
        super().__init__(message)
        self.factor = factor
        self.distance = distance


class QuadratureConvergenceError(NumericalError):
    """Adaptive quadrature failed to meet its tolerance."""


class NonPositiveDefiniteError(NumericalError):
    """A covariance matrix is not positive definite after regularization.

    Carries the smallest eigenvalue so callers can decide how to coarsen.
    """

    def __init__(self, message: str, min_eigenvalue: float):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class LocalTimeTargetError(NumericalError):
    """Simulated horizon ended before the local-time target was reached."""
