"""Exception types shared across the package."""

from __future__ import annotations


class SeednetError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(SeednetError):
    """A parameter or requested combination of inputs is invalid."""


class DataError(SeednetError):
    """An input file is malformed or inconsistent with its own metadata."""
