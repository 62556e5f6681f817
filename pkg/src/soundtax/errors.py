"""Exception types raised by the taxonomy engine."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "AmbiguousLabel",
    "DuplicateEntry",
    "DuplicateLabel",
    "EmptyLabel",
    "InvalidId",
    "InvalidTimeSpan",
    "ParseError",
    "TaxonomyError",
    "UnknownDataset",
    "UnknownLabel",
    "UnknownOriginalLabel",
    "ValidationError",
    "VersionMismatchWarning",
    "Violation",
]


class TaxonomyError(Exception):
    """Base class for every error raised by this package."""


class EmptyLabel(TaxonomyError, ValueError):
    pass


class InvalidId(TaxonomyError, ValueError):
    pass


class ParseError(TaxonomyError):
    """A document could not be parsed.

    ``line``/``column`` point into the source text when known; ``row`` is set
    for CSV inputs (1-based, header is row 1).
    """

    def __init__(self, message, *, line=None, column=None, row=None):
        self.line = line
        self.column = column
        self.row = row
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if row is not None:
            where.append(f"row {row}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


class ValidationError(TaxonomyError):
    """Carries every violation found, not just the first."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "\n".join(f"  {v}" for v in self.violations)
        super().__init__(f"{len(self.violations)} violation(s):\n{lines}")


class UnknownLabel(TaxonomyError, LookupError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"unknown standard label: {label!r}")


class DuplicateLabel(TaxonomyError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"standard label already exists: {label!r}")


class UnknownDataset(TaxonomyError, LookupError):
    def __init__(self, dataset):
        self.dataset = dataset
        super().__init__(f"unknown dataset: {dataset!r}")


class UnknownOriginalLabel(TaxonomyError, LookupError):
    def __init__(self, dataset, original):
        self.dataset = dataset
        self.original = original
        super().__init__(f"dataset {dataset!r} has no label {original!r}")


class AmbiguousLabel(TaxonomyError, LookupError):
    def __init__(self, dataset, original, candidates):
        self.dataset = dataset
        self.original = original
        self.candidates = sorted(candidates)
        super().__init__(
            f"{original!r} in {dataset!r} matches several labels case-insensitively: "
            f"{', '.join(self.candidates)}"
        )


class DuplicateEntry(TaxonomyError):
    def __init__(self, dataset, original):
        self.dataset = dataset
        self.original = original
        super().__init__(f"mapping for ({dataset!r}, {original!r}) already exists")


class InvalidTimeSpan(TaxonomyError, ValueError):
    def __init__(self, row, message):
        self.row = row
        super().__init__(f"row {row}: {message}")


class VersionMismatchWarning(UserWarning):
    """Catalog was authored against a different taxonomy version."""
