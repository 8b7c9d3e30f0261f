"""Exception hierarchy."""


class DegrankError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(DegrankError, ValueError):
    """Invalid configuration or degenerate input that makes a run meaningless."""


class DomainError(DegrankError, ValueError):
    """An argument lies outside the domain of a model formula."""


class EdgeListParseError(DegrankError, ValueError):
    """Malformed edge-list input."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
