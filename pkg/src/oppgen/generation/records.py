"""Domain records for opportunity generation."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from ..errors import InvalidParams
from .qualities import validate_qualities

OPPORTUNITY_KINDS = ("policy", "business", "technical_design")
KIND_WORDS = {"policy": "policy", "business": "business", "technical_design": "technical design"}
BATCH_SIZE = 10
MAX_CUSTOM_TEXT = 1000

TITLE_WORD_LIMIT = 10  # soft
DESCRIPTION_WORD_MINIMUM = 100  # soft


@dataclass(frozen=True)
class GenerationRequest:
    kind: str
    space_ids: tuple[str, ...]
    novelty_level: str
    qualities: tuple[str, ...] = ()
    custom_text: str = ""
    count: int = BATCH_SIZE

    def __post_init__(self) -> None:
        if self.kind not in OPPORTUNITY_KINDS:
            raise InvalidParams(f"unknown opportunity kind {self.kind!r}")
        if self.count != BATCH_SIZE:
            raise InvalidParams(f"count is fixed at {BATCH_SIZE}")
        if len(self.custom_text) > MAX_CUSTOM_TEXT:
            raise InvalidParams(
                f"custom text limited to {MAX_CUSTOM_TEXT} characters, got {len(self.custom_text)}"
            )
        validate_qualities(self.qualities)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "space_ids": list(self.space_ids),
            "novelty_level": self.novelty_level,
            "qualities": list(self.qualities),
            "custom_text": self.custom_text,
            "count": self.count,
        }

    @staticmethod
    def from_dict(d: dict) -> "GenerationRequest":
        return GenerationRequest(
            kind=d["kind"],
            space_ids=tuple(d["space_ids"]),
            novelty_level=d["novelty_level"],
            qualities=tuple(d.get("qualities", ())),
            custom_text=d.get("custom_text", ""),
            count=d.get("count", BATCH_SIZE),
        )


@dataclass(frozen=True)
class Opportunity:
    opportunity_id: str
    kind: str
    title: str
    description: str
    provenance: str  # "direct" | "pivot"
    pivot_depth: int
    source_space_ids: tuple[str, ...]
    novelty_level: str
    qualities: tuple[str, ...] = ()
    parent_opportunity_id: Optional[str] = None
    centroid_distance: Optional[float] = None
    flags: tuple[str, ...] = ()
    batch_id: str = ""

    def __post_init__(self) -> None:
        if self.provenance == "pivot" and self.parent_opportunity_id is None:
            raise InvalidParams("pivot opportunities must reference a parent")
        if self.provenance == "direct" and self.pivot_depth != 0:
            raise InvalidParams("direct opportunities have pivot depth 0")

    @property
    def text(self) -> str:
        return f"{self.title}: {self.description}"

    def with_distance(self, distance: float) -> "Opportunity":
        return replace(self, centroid_distance=distance)

    def to_dict(self) -> dict:
        return {
            "opportunity_id": self.opportunity_id,
            "kind": self.kind,
            "title": self.title,
            "description": self.description,
            "provenance": self.provenance,
            "pivot_depth": self.pivot_depth,
            "source_space_ids": list(self.source_space_ids),
            "novelty_level": self.novelty_level,
            "qualities": list(self.qualities),
            "parent_opportunity_id": self.parent_opportunity_id,
            "centroid_distance": self.centroid_distance,
            "flags": list(self.flags),
            "batch_id": self.batch_id,
        }

    @staticmethod
    def from_dict(d: dict) -> "Opportunity":
        return Opportunity(
            opportunity_id=d["opportunity_id"],
            kind=d["kind"],
            title=d["title"],
            description=d["description"],
            provenance=d["provenance"],
            pivot_depth=d["pivot_depth"],
            source_space_ids=tuple(d["source_space_ids"]),
            novelty_level=d["novelty_level"],
            qualities=tuple(d.get("qualities", ())),
            parent_opportunity_id=d.get("parent_opportunity_id"),
            centroid_distance=d.get("centroid_distance"),
            flags=tuple(d.get("flags", ())),
            batch_id=d.get("batch_id", ""),
        )
