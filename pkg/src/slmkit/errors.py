"""Exception hierarchy shared across the toolkit."""

from __future__ import annotations


class SlmkitError(Exception):
    """Base class for all toolkit errors."""


# --- dialogue synthesis ---


class NoMarkersFound(SlmkitError):
    """Neither turn sentinel occurs in a transcript."""


class MalformedAlternation(SlmkitError):
    """Two assistant turns appeared with no intervening user turn."""


class EmptyContext(SlmkitError):
    """A synthesis call received an empty context excerpt."""


class EmptyQuestion(SlmkitError):
    """A question string is empty or contains no usable word."""


class EmptyCompletion(SlmkitError):
    """A provider returned whitespace only."""


class EmptyDataset(SlmkitError):
    """Export was asked to serialize a dataset with no records."""


# --- lora planning ---


class MissingAlpha(SlmkitError):
    """A sweep rank has no corresponding alpha value."""


# --- retrieval ---


class InvalidOverlap(SlmkitError):
    """Chunk overlap must satisfy 0 <= overlap < target."""


class ZeroVector(SlmkitError):
    """Cosine similarity is undefined for an all-zero vector."""


class DimMismatch(SlmkitError):
    """Vectors of different dimensionality were combined."""


class EmptyIndex(SlmkitError):
    """Retrieval was attempted against an index with no entries."""


class BudgetTooSmall(SlmkitError):
    """No retrieved chunk fits within the context token budget."""


# --- judging ---


class MissingField(SlmkitError):
    """A required judge prompt field is empty."""


class NoVerdictToken(SlmkitError):
    """A judge completion contains none of [[A]], [[B]], [[C]]."""


class MissingOutput(SlmkitError):
    """A system under comparison has no output for some prompt."""


class IncompleteLedger(SlmkitError):
    """A verdict ledger does not cover every (prompt, criterion) cell."""


# --- providers ---


class ProviderError(SlmkitError):
    """Base class for provider gateway failures."""


class AuthError(ProviderError):
    """Credentials are missing or rejected."""


class RateLimited(ProviderError):
    """The provider kept returning 429 after all retry attempts."""


class TransportError(ProviderError):
    """Network failure or non-retryable HTTP error."""


class MalformedResponse(ProviderError):
    """The provider response body could not be interpreted."""


class UnknownJob(ProviderError):
    """A job id is not known to the fine-tune service."""


class ValidationError(SlmkitError):
    """One or more validation violations, aggregated.

    ``violations`` lists every problem found, not just the first.
    """

    def __init__(self, violations: list[str] | str):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


# --- reporting ---


class NonPositiveDuration(SlmkitError):
    """A rate was requested over a non-positive training duration."""


# --- orchestration ---


class ParseError(SlmkitError):
    """A run config file could not be parsed at all."""


class MissingInput(SlmkitError):
    """A pipeline stage's required input artifact does not exist."""


class StageFailure(SlmkitError):
    """A pipeline stage failed; earlier artifacts are preserved."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")
