"""Exception types shared across the package."""


class VQAAError(Exception):
    """Base class for all package errors."""


class ConfigError(VQAAError, ValueError):
    """Inconsistent or out-of-range configuration (widths, qubit counts, options)."""


class InputError(VQAAError, ValueError):
    """Malformed data handed to a primitive (wrong bit width, bad CSV, ...)."""
