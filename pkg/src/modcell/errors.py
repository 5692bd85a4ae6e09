"""Exception types shared across the package."""


class ModcellError(Exception):
    """Base class for all package errors."""


class GraphError(ModcellError):
    """Malformed graph data or an illegal graph operation."""


class ValidationError(ModcellError):
    """A structured validation failure.

    Carries a list of (code, message) pairs, one per violated condition.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(f"[{code}] {msg}" for code, msg in self.violations)
        super().__init__(lines)

    def codes(self):
        return [code for code, _ in self.violations]


class ParameterError(ModcellError):
    """Inconsistent enumeration parameters (violates 2h = 2(2g - 2 + n + m))."""
