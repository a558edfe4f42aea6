"""Exception hierarchy shared across the package."""


class WsdsimError(Exception):
    """Base class for all errors raised by this package."""


class DatasetFormatError(WsdsimError):
    """A dataset file is missing, truncated, or malformed.

    Carries the offending path and, when meaningful, a 1-based line number.
    """

    def __init__(self, message, path=None, line=None):
        self.path = str(path) if path is not None else None
        self.line = line
        prefix = ""
        if self.path is not None:
            prefix = self.path
            if line is not None:
                prefix += f":{line}"
            prefix += ": "
        super().__init__(prefix + message)


class VectorTableError(WsdsimError):
    """A static word-vector file cannot be parsed or is inconsistent."""

    def __init__(self, message, path=None, line=None):
        self.path = str(path) if path is not None else None
        self.line = line
        prefix = ""
        if self.path is not None:
            prefix = self.path
            if line is not None:
                prefix += f":{line}"
            prefix += ": "
        super().__init__(prefix + message)


class CacheFormatError(WsdsimError):
    """A contextual-cache file violates the JSON Lines cache schema."""

    def __init__(self, message, path=None, line=None):
        self.path = str(path) if path is not None else None
        self.line = line
        prefix = ""
        if self.path is not None:
            prefix = self.path
            if line is not None:
                prefix += f":{line}"
            prefix += ": "
        super().__init__(prefix + message)


class OovError(WsdsimError):
    """Every token of a text is missing from the static vector table."""


class CoverageError(WsdsimError):
    """A provider does not cover a requested instance or sense."""


class SolverError(WsdsimError):
    """The exact transport solver failed to converge."""


class ConfigError(WsdsimError):
    """A run configuration is internally inconsistent or incomplete."""
