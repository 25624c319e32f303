"""Exception and warning types shared across the toolkit."""


class LeoSrpError(Exception):
    """Base class for all toolkit errors."""


class DomainError(LeoSrpError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidDateError(DomainError):
    """A calendar date or time component is out of range."""


class DegenerateOrbitError(DomainError):
    """A state or element set has no usable orbital geometry."""


class ConvergenceError(LeoSrpError):
    """An iterative solver failed to reach its tolerance."""


class FormatError(LeoSrpError, ValueError):
    """Text input does not match the expected layout.

    Carries an optional source path and 1-based line number so callers can
    report exactly where a file went wrong.
    """

    def __init__(self, message: str, path: str | None = None,
                 line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None and line is not None:
            where = f"{path}:{line}: "
        elif path is not None:
            where = f"{path}: "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


class ChecksumError(FormatError):
    """A TLE line checksum does not match its stated value."""


class EphemerisRangeError(LeoSrpError):
    """An epoch falls outside the span of an ephemeris table."""


class FetchError(LeoSrpError):
    """A remote ephemeris query failed."""


class DivergenceError(LeoSrpError):
    """Gradient descent produced a non-finite loss."""


class MetricError(LeoSrpError):
    """A requested metric is undefined for the given data."""


class TleFormatWarning(UserWarning):
    """Strict fixed-column TLE layout failed; token parsing was used."""


class ChecksumWarning(UserWarning):
    """A TLE checksum could not be confirmed after whitespace normalization."""
