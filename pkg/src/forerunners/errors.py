"""Exception types shared across the package.

Domain violations raise plain ``ValueError`` and true floating overflow
raises ``OverflowError``; the classes below cover failure modes that need
to be distinguished programmatically (CLI exit codes, scan bookkeeping).
"""


class ConvergenceError(RuntimeError):
    """A truncated series hit its term cap before meeting its tolerance."""

    def __init__(self, message: str, last_term: float = float("nan")):
        super().__init__(message)
        self.last_term = last_term


class ConfigurationError(ValueError):
    """Invalid solver/grid/CLI configuration (e.g. CFL violation)."""


class HorizonError(RuntimeError):
    """A time horizon was too short for the requested computation."""


class TailContaminationError(RuntimeError):
    """Field at the far-boundary monitor point exceeded its threshold."""


class NodeError(RuntimeError):
    """Instantaneous frequency requested at a density node (|psi| ~ 0)."""
