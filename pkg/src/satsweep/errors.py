"""Exception types shared across the package."""


class SatsweepError(Exception):
    """Base class for all errors raised by this package."""


class InvalidWindowError(SatsweepError, ValueError):
    """Window geometry is invalid for the target grid (w < 1, w > dims, stride < 1, ...)."""


class GridValidationError(SatsweepError, ValueError):
    """Grid contents violate an ingestion invariant (shape, dtype range, NaN/Inf)."""


class ImageFormatError(SatsweepError, ValueError):
    """A file could not be parsed as the claimed format.

    ``byte_offset`` points at the first offending byte where that is known.
    """

    def __init__(self, message: str, byte_offset: int | None = None):
        if byte_offset is not None:
            message = f"{message} (byte offset {byte_offset})"
        super().__init__(message)
        self.byte_offset = byte_offset


class UnsupportedFormatError(SatsweepError, ValueError):
    """The requested format cannot represent the given data (e.g. F32 to PGM)."""


class ResourceLimitError(SatsweepError, MemoryError):
    """An allocation would exceed available resources; message names the byte count."""

    def __init__(self, required_bytes: int, what: str):
        super().__init__(f"cannot allocate {required_bytes} bytes for {what}")
        self.required_bytes = required_bytes
