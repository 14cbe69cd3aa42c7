"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigError -> 1, DataError -> 2,
anything else -> 3.
"""

from __future__ import annotations


class RashpdpError(Exception):
    """Base class for all package errors."""


class ConfigError(RashpdpError):
    """Invalid configuration or CLI usage."""


class DataError(RashpdpError):
    """Invalid or unreadable dataset input."""
