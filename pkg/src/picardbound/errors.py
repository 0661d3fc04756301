"""Exceptions and process exit codes shared across the package."""

from __future__ import annotations

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SINGULAR = 3
EXIT_PRECISION = 4
EXIT_CAP = 5


class PicardBoundError(Exception):
    """Base class for errors raised by this package."""

    exit_code = 1


class InputError(PicardBoundError):
    """Problem file or configuration is invalid."""

    exit_code = EXIT_INPUT


class SingularInputError(PicardBoundError):
    """The hypersurface is not smooth over the base field."""

    exit_code = EXIT_SINGULAR

    def __init__(self, message: str, witness_degree: int | None = None):
        super().__init__(message)
        self.witness_degree = witness_degree


class PrecisionExhaustedError(PicardBoundError):
    """A certified computation ran out of p-adic digits."""

    exit_code = EXIT_PRECISION


class CapExceededError(PicardBoundError):
    """An enumeration or resource cap was exceeded."""

    exit_code = EXIT_CAP


class ReductionError(PicardBoundError):
    """Internal inconsistency during pole reduction (should not happen on
    smooth input; indicates a bug or an input that slipped past validation)."""

    exit_code = 1
