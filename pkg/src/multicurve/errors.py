"""Exception hierarchy shared by every module."""


class MulticurveError(Exception):
    """Base class for all domain errors raised by the package."""


class DomainError(MulticurveError, ValueError):
    """An argument lies outside the domain of an operation."""


class CurveValidationError(MulticurveError, ValueError):
    """Pillars violate the curve invariants."""


class ScheduleError(MulticurveError, ValueError):
    """Schedules are inconsistent or misaligned."""


class ConfigurationError(MulticurveError, ValueError):
    """Inputs are individually valid but do not fit together (missing curve, tenor mismatch)."""


class BootstrapError(MulticurveError):
    """Calibration of a pillar failed; ``quote`` names the offending instrument."""

    def __init__(self, message, quote=None):
        super().__init__(message)
        self.quote = quote


class ParseError(MulticurveError, ValueError):
    """Malformed input file, with 1-based line number and column context."""

    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if column:
            where.append(f"column '{column}'")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
