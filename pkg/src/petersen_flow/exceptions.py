"""
Exception hierarchy for the flow polynomial engine.
"""


class FlowPolyError(Exception):
    """Base class for every error raised by petersen_flow."""


class GraphDomainError(FlowPolyError, ValueError):
    """Graph parameters outside the supported family."""


class OracleBudgetError(FlowPolyError, ValueError):
    """The subset oracle refuses graphs above its edge budget."""

    def __init__(self, edges: int, budget: int):
        super().__init__(f"{edges} edges exceed the brute-force budget of {budget}")
        self.edges = edges
        self.budget = budget


class PartitionStateError(FlowPolyError, ValueError):
    """A basis state violates a canonical-form invariant."""


class DeflationError(FlowPolyError, ArithmeticError):
    """The trivial-eigenvalue sub-block does not have the expected structure."""


class BadPrimeError(FlowPolyError, ArithmeticError):
    """An evaluation point cannot be used with this prime."""

    def __init__(self, q: int, p: int, reason: str):
        super().__init__(f"(q={q}, p={p}) rejected: {reason}")
        self.q = q
        self.p = p


class CRTConsistencyError(FlowPolyError, ArithmeticError):
    """The surplus prime disagrees with the reconstructed integer."""


class InterpolationChecksumError(FlowPolyError, ArithmeticError):
    """A surplus evaluation point does not lie on the interpolated polynomial."""

    def __init__(self, q: int, expected: object, got: object):
        super().__init__(f"checksum failed at Q={q}: expected {expected}, got {got}")
        self.q = q


class NonIntegerCoefficientError(FlowPolyError, ArithmeticError):
    """An assembled flow polynomial has a non-integer coefficient."""


class RawCompleteMismatchError(FlowPolyError, ArithmeticError):
    """Raw-trace and complete-decomposition assemblies disagree."""


class PrecisionNotReached(FlowPolyError):
    """Root inclusion radii are above target at the current working precision."""


class NoSignChangeError(FlowPolyError, ValueError):
    """A bisection bracket has no sign change."""


class ConvergenceError(FlowPolyError, ArithmeticError):
    """An iterative eigen solver did not converge."""


class UnderdeterminedFitError(FlowPolyError, ValueError):
    """Too few data points for the requested least-squares fit."""


class DegeneratePolynomialError(FlowPolyError, ValueError):
    """Root finding was asked for a constant polynomial."""
