"""Exception hierarchy shared across the package.

Data-shaped problems (bad files, bad labels, bad ratios) and runtime
problems (network, upstream services) are kept in separate branches so the
CLI can map them to distinct exit codes.
"""


class HifactError(Exception):
    """Base class for all package-specific errors."""


class DataError(HifactError):
    """Invalid input data, configuration, or file contents."""


class RuntimeFailure(HifactError):
    """Environmental or upstream failure (network, remote service)."""


# --- labels / text ---------------------------------------------------------

class UnknownLabelError(DataError):
    def __init__(self, raw: str):
        self.raw = raw
        super().__init__(f"unknown veracity label: {raw!r}")


class EmptyTextError(DataError):
    pass


# --- corpus ----------------------------------------------------------------

class ParseError(DataError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class ValidationError(DataError):
    def __init__(self, record_id: str, message: str):
        self.record_id = record_id
        super().__init__(f"record {record_id!r}: {message}")


class EmptyCorpusError(DataError):
    pass


class BadRatiosError(DataError):
    pass


class BadWeightsError(DataError):
    pass


class UnknownSplitError(DataError):
    pass


# --- embeddings / remote providers ----------------------------------------

class DegenerateEmbeddingError(DataError):
    pass


class NonFiniteInputError(DataError):
    pass


class TransportError(RuntimeFailure):
    """Network-level failure: connection refused, timeout, broken pipe."""


class ProtocolError(RuntimeFailure):
    """The remote service answered, but not in the agreed shape."""


class RemoteError(RuntimeFailure):
    """The remote service answered with a non-2xx status."""

    def __init__(self, status: int, body: str):
        self.status = status
        self.body = body
        super().__init__(f"remote service returned {status}: {body[:200]}")


# --- vector index ----------------------------------------------------------

class DimensionMismatchError(DataError):
    def __init__(self, got: int, expected: int):
        self.got = got
        self.expected = expected
        super().__init__(f"dimension {got} != {expected}")


class DuplicateIdError(DataError):
    def __init__(self, entry_id: str):
        self.entry_id = entry_id
        super().__init__(f"duplicate id: {entry_id!r}")


class EmptyIndexError(DataError):
    pass


class FormatError(DataError):
    """Corrupt or incompatible on-disk artifact (index, checkpoint)."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


# --- classifier / metrics ---------------------------------------------------

class EmptyBatchError(DataError):
    pass


class EmptySetError(DataError):
    pass


class DivergenceError(HifactError):
    pass


class LengthMismatchError(DataError):
    pass


class EmptyInputError(DataError):
    pass


class ModeMismatchError(DataError):
    pass


class StageError(HifactError):
    """Wraps a lower-level error with the pipeline stage it occurred in."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[stage {stage}] {cause}")
