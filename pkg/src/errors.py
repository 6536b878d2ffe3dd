"""
Errors Module
-------------
This module provides the exception hierarchy of the optimistic limit toolkit.
Each error carries the process exit code the command line uses for it.
"""


class OptlimError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 5


class DomainError(OptlimError):
    """Argument outside the domain of a special function."""


class ParseError(OptlimError):
    """Malformed PD text."""

    exit_code = 2


class ValidationError(OptlimError):
    """PD code that does not describe a knot diagram."""

    exit_code = 2


class InvalidRegion(OptlimError):
    """Unit region request that cannot be honoured."""

    exit_code = 2


class AssumptionViolation(OptlimError):
    """Diagram or split side outside the admissible class."""

    exit_code = 3


class EndpointClash(AssumptionViolation):
    """The endpoints of I and J fall on the same crossing."""


class CollapseError(AssumptionViolation):
    """A vertex collapses in a pattern the octahedral model cannot handle."""


class VariantUnavailable(OptlimError):
    """No crossing function keeps the zero region out of logs and denominators."""


class BranchPointError(OptlimError):
    """A potential was evaluated on a branch point."""


class NonEssentialPoint(OptlimError):
    """A shape parameter evaluates to 0, 1 or infinity."""


class TriangulationError(OptlimError):
    """The triangulation lacks the structure an operation needs."""


class DegenerateShape(OptlimError):
    """A shape transport produced 0, 1 or infinity."""


class DegenerateSample(OptlimError):
    """An identity sample touches 0, 1 or infinity."""


class NoConvergence(OptlimError):
    """Newton iteration converged from no seed."""

    exit_code = 4

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class NotASolution(OptlimError):
    """A flattening was requested at a point that does not solve the system."""


class NonEssentialImage(OptlimError):
    """A converted solution has a shape in {0, 1, infinity}."""


class ConsistencyError(OptlimError):
    """An internal cross-check exceeded its tolerance."""
