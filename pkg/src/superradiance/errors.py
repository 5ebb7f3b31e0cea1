"""Exception hierarchy.

Each top-level class carries the process exit code the command line
interface reports for it.
"""


class SuperradianceError(Exception):
    exit_code = 1


class InvalidDimensionsError(SuperradianceError, ValueError):
    """Particle/orbital counts outside the allowed range."""

    exit_code = 2


class DimensionMismatchError(SuperradianceError, ValueError):
    exit_code = 2


class ConfigError(SuperradianceError, ValueError):
    """Malformed or unknown configuration entry.

    ``line`` and ``key`` point at the offending entry when known.
    """

    exit_code = 2

    def __init__(self, message, *, line=None, key=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.key = key


class NumericalError(SuperradianceError, ArithmeticError):
    exit_code = 3


class NoConvergenceError(NumericalError):
    pass


class AmbiguousTrackingError(NumericalError):
    """State tracking could not find an assignment with overlap >= 0.5."""

    def __init__(self, message, gamma_interval=None):
        super().__init__(message)
        self.gamma_interval = gamma_interval


class DefectiveStateError(NumericalError):
    pass


class CriticalPointError(NumericalError):
    """Derivative requested exactly at an exceptional point."""


class VerificationError(NumericalError):
    pass
