"""Exception hierarchy shared by every pipeline stage.

Each error carries a stable ``code`` string (the class name) so the HTTP
service and the CLI can report machine-readable errors without maintaining
a separate registry.
"""

from __future__ import annotations

from typing import Any


class OppgenError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, message: str = "", **details: Any) -> None:
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.details = details

    @property
    def code(self) -> str:
        return self.__class__.__name__

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": self.message, "details": self.details}


# --- asset ingestion ---------------------------------------------------


class UnsupportedMedia(OppgenError):
    pass


class EmptyAsset(OppgenError):
    pass


class CorruptFile(OppgenError):
    pass


class TranslatorUnavailable(OppgenError):
    pass


# --- embeddings ---------------------------------------------------------


class EmptyText(OppgenError):
    pass


class ProviderUnavailable(OppgenError):
    pass


class DimensionMismatch(OppgenError):
    pass


class EmptyInput(OppgenError):
    pass


class ZeroVector(OppgenError):
    pass


# --- space discovery ----------------------------------------------------


class TooFewPoints(OppgenError):
    pass


class GranularityUnreachable(OppgenError):
    pass


class EmptyCluster(OppgenError):
    pass


# --- opportunity generation ----------------------------------------------


class MissingDescription(OppgenError):
    pass


class MalformedDescription(OppgenError):
    pass


class EmptyResponse(OppgenError):
    pass


class ParseError(OppgenError):
    pass


class IncompleteGeneration(OppgenError):
    """Fewer than the required items parsed; partial results in ``details``."""

    def __init__(self, message: str = "", partial: list | None = None, **details: Any) -> None:
        super().__init__(message, **details)
        self.partial = partial or []


class ServiceUnavailable(OppgenError):
    pass


class UnknownOpportunity(OppgenError):
    pass


# --- evaluation ----------------------------------------------------------


class EmptyList(OppgenError):
    pass


class RatingOutOfRange(OppgenError):
    pass


class CountMismatch(OppgenError):
    pass


class NonInteger(OppgenError):
    pass


class EmptySample(OppgenError):
    pass


class EmptyGroup(OppgenError):
    pass


class DegenerateInput(OppgenError):
    pass


class InvalidDf(OppgenError):
    pass


class EmptySet(OppgenError):
    pass


# --- project service ------------------------------------------------------


class UnknownProject(OppgenError):
    pass


class DuplicateName(OppgenError):
    pass


class InvalidConfig(OppgenError):
    pass


class InvalidParams(OppgenError):
    pass


class TooLarge(OppgenError):
    pass


class StageNotReady(OppgenError):
    pass


# User errors exit the CLI with status 1; everything else exits with 2.
USER_ERROR_CODES = {
    "UnsupportedMedia",
    "EmptyAsset",
    "EmptyText",
    "EmptyInput",
    "EmptyList",
    "EmptySample",
    "EmptyGroup",
    "EmptySet",
    "DegenerateInput",
    "InvalidDf",
    "UnknownProject",
    "UnknownOpportunity",
    "DuplicateName",
    "InvalidConfig",
    "InvalidParams",
    "TooLarge",
    "StageNotReady",
    "DimensionMismatch",
    "TooFewPoints",
}
