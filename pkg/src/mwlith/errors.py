"""Exception hierarchy shared across the toolkit.

The command line maps these onto distinct exit codes, so raising the right
class is part of the contract: configuration problems must never surface as
numerical ones and vice versa.
"""


class MwlithError(Exception):
    """Base class for all toolkit errors."""


class ConfigurationError(MwlithError):
    """Invalid or inconsistent user-supplied parameters."""


class NumericalError(MwlithError):
    """A numerical routine failed to reach its stated tolerance."""


class DataFormatError(MwlithError):
    """A file does not conform to one of the documented formats."""


class BadMagicError(DataFormatError):
    """File does not start with the expected magic bytes."""


class BadVersionError(DataFormatError):
    """File declares an unsupported format version."""


class FingerprintMismatchError(DataFormatError):
    """Stored fingerprint disagrees with the expected physical content."""


class TruncatedFileError(DataFormatError):
    """File is shorter (or longer) than its header declares."""


class PartialWriteError(DataFormatError):
    """A streaming write failed midway; carries how many records landed."""

    def __init__(self, message: str, records_written: int):
        super().__init__(message)
        self.records_written = records_written


# Exit codes used by the command-line front end.
EXIT_OK = 0
EXIT_CONFIGURATION = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4
