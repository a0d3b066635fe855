"""Exception hierarchy; the CLI maps each class to an exit code."""


class LocalDetectError(Exception):
    pass


class ConfigError(LocalDetectError):
    """Malformed or invalid run configuration (exit code 2)."""

    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        self.line = line
        self.key = key
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ScenarioError(LocalDetectError, ValueError):
    """A scenario cannot be built from the given parameters (exit code 3)."""


class DimensionLimitError(ScenarioError):
    """Composite Hilbert space exceeds the configured ceiling (exit code 3)."""


class ContractViolation(LocalDetectError, ArithmeticError):
    """A numerical invariant was breached, e.g. an invalid density matrix (exit code 4)."""
