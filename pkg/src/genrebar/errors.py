"""Domain errors with stable machine-readable codes.

Every error carries a ``code`` string that is kept stable across releases;
the HTTP layer and the CLI surface these codes verbatim, so renaming one is
a breaking change. See docs/http-api.md for the full enumeration.
"""

from __future__ import annotations


class GenreBarError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "GenreBarError"

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class DimensionMismatchError(GenreBarError):
    code = "DimensionMismatch"


class NegativeWeightError(GenreBarError):
    code = "NegativeWeight"


class ZeroMassError(GenreBarError):
    code = "ZeroMass"


class EmptyDatasetError(GenreBarError):
    code = "EmptyDataset"


class InvalidKError(GenreBarError):
    code = "InvalidK"


class NonMonotonicHandlesError(GenreBarError):
    code = "NonMonotonicHandles"


class OutOfRangeHandleError(GenreBarError):
    code = "OutOfRangeHandle"


class MalformedDocumentError(GenreBarError):
    code = "MalformedDocument"


class UnknownVersionError(GenreBarError):
    code = "UnknownVersion"


class ValidationFailedError(GenreBarError):
    """A dataset document failed validation.

    ``record_id`` names the first offending song (None for dataset-level
    problems such as a bad genre list); ``violations`` holds the structured
    report from ``validate_vector`` or equivalent dataset-level checks.
    """

    code = "ValidationFailed"

    def __init__(self, detail: str, record_id: str | None = None, violations: list | None = None):
        super().__init__(detail)
        self.record_id = record_id
        self.violations = violations or []
