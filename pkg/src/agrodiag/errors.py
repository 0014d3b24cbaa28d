"""Exception hierarchy shared by all agrodiag modules.

Everything raised on a bad input or an unsatisfiable computation derives
from :class:`AgrodiagError`, so callers (and the CLI) can catch one type.
"""


class AgrodiagError(Exception):
    """Base class for all toolkit errors."""


class SchemaError(AgrodiagError):
    """Input does not conform to a documented schema (missing column,
    non-numeric cell, malformed tree config, unknown comparator)."""


class DuplicateKeyError(SchemaError):
    """Two rows map to the same logical key, e.g. the same (crop, year)."""


class DomainError(AgrodiagError):
    """A value is outside the mathematical domain of an operation
    (negative area, zero divisor, non-positive mean)."""


class LogDomainError(DomainError):
    """A log-ratio was requested for a non-positive quantity."""


class CoverageError(AgrodiagError):
    """The data does not cover the years or window an operation needs."""


class NormalizationError(AgrodiagError):
    """Shares do not sum to 1 within the accepted tolerance band."""


class CompositionChangeError(AgrodiagError):
    """An item with economic weight appears on only one side of a
    two-year comparison, so its growth is undefined."""


class DataInconsistencyError(AgrodiagError):
    """Fields contradict each other, e.g. zero area with positive output."""


class TreeConfigError(SchemaError):
    """A diagnostic tree config is structurally invalid."""


class CycleError(TreeConfigError):
    """The node graph reachable from a root contains a cycle."""


class DanglingReferenceError(TreeConfigError):
    """A branch points at a node id that does not exist."""


class ManifestError(TreeConfigError):
    """A predicate references an indicator missing from the manifest."""


class EvaluationError(AgrodiagError):
    """A diagnostic tree could not be evaluated against an indicator set."""


class IndicatorTypeError(EvaluationError):
    """A predicate needed a scalar but the indicator holds a series."""


class UndefinedIndexError(DomainError):
    """An index is undefined, e.g. a comparative-advantage ratio with a
    zero reference share."""


class GroupNotFoundError(AgrodiagError):
    """A crop group is absent from an area-share table."""
