"""Exception taxonomy shared across the toolkit."""

from __future__ import annotations


class DataError(ValueError):
    """Malformed input data (files, corpora, distributions)."""


class ContractViolation(ValueError):
    """A caller broke an API precondition (e.g. length mismatch)."""
