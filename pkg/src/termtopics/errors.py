"""Error types shared across the package."""


class TermTopicsError(Exception):
    """Base class for all package errors."""


class IngestError(TermTopicsError):
    """A corpus file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        super().__init__(message)
        self.line_no = line_no


class CorpusValidationError(TermTopicsError):
    """Corpus-level contract violation (duplicate ids, empty corpus, ...)."""


class UnknownTermError(TermTopicsError, KeyError):
    """Lookup of a term that is not in the table/ranking."""


class UnknownIdError(TermTopicsError, KeyError):
    """Lookup of an unknown document, topic, corpus or model id."""


class DegenerateDocumentError(TermTopicsError):
    """Document whose ranking chain has no probability mass anywhere."""


class ConvergenceError(TermTopicsError):
    """Iterative solver did not reach tolerance; carries the final residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class EmptyNetworkError(TermTopicsError):
    """Operation undefined on a network with zero total edge weight."""
