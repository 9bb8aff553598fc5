"""Exception hierarchy.

Three broad families map onto the CLI exit codes: configuration problems
(exit 1), data/contract problems (exit 2), and adapter/protocol problems
(exit 3).
"""


class FlintError(Exception):
    """Base class for all library errors."""


class ConfigError(FlintError):
    """Invalid or incomplete configuration."""


class DataError(FlintError):
    """Invalid data or violated data contract."""


class SchemaError(DataError):
    """A record does not match the task schema."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        detail = message
        if line is not None:
            detail += f" (line {line}"
            detail += f", field {field!r})" if field else ")"
        super().__init__(detail)


class DuplicateIdError(DataError):
    """Two samples in one dataset share an id."""


class OverlapError(DataError):
    """Edits in a trace overlap in original coordinates."""


class BoundsError(DataError):
    """Edit indices fall outside the field."""


class LabelSplitError(DataError):
    """A label-preserving trace would cut through a labeled span."""


class LexiconFormatError(DataError):
    """A lexicon file does not parse under its kind's schema."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"{message} (line {line})" if line is not None else message)


class InvariantError(DataError):
    """A lexicon entry violates its kind's invariant."""


class TaskError(DataError):
    """An operation was applied to a task it does not support."""


class NotApplicable(FlintError):
    """A transformation found no eligible site in the sample."""


class EmptyReportError(DataError):
    """Report requested over no results at all."""


class AdapterError(FlintError):
    """Base class for external-model adapter failures."""


class AdapterUnavailable(AdapterError):
    """An adapter-backed feature was used without a configured adapter."""


class AdapterTimeout(AdapterError):
    """The adapter did not answer within the configured timeout."""


class ProtocolError(AdapterError):
    """The adapter violated the wire protocol."""


class NoScoreSupport(AdapterError):
    """The model returns labels only but per-class scores were required."""
