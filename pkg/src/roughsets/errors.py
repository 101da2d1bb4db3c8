"""Exception hierarchy for the toolkit.

Three families matter to callers (and to the CLI's exit codes): input that
cannot be parsed (`TableParseError`, `RuleFormatError`), requests that are
well-formed but semantically invalid against the data, and explicit capacity
refusals from the exhaustive reduct search.
"""
from __future__ import annotations


class RoughSetError(Exception):
    """Base class for every error raised by this package."""


class TableParseError(RoughSetError):
    """CSV or sidecar config input that cannot be parsed into a table."""


class MissingValueError(TableParseError):
    """An empty cell was found; tables must be total."""


class SchemaError(RoughSetError):
    """Header-level problem: duplicate names, unknown decision/id column."""


class UnknownAttributeError(RoughSetError):
    """An attribute name that does not exist in the table."""


class UnknownObjectError(RoughSetError):
    """An object index outside the table's universe."""


class UndefinedAccuracyError(RoughSetError):
    """Accuracy requested for a set with an empty upper approximation."""


class CapacityError(RoughSetError):
    """Attribute count exceeds the exhaustive reduct-search cap."""


class InvalidConditionError(RoughSetError):
    """Malformed rule structure: duplicate condition attribute, empty
    conditions or decisions, or a condition on the decision attribute."""


class RuleFormatError(RoughSetError):
    """A rule file line that does not follow the serialization format."""


class IncompleteObjectError(RoughSetError):
    """An object given for classification lacks an attribute referenced by
    the rule set."""
