"""The fixed catalog of 22 creative qualities selectable for generation."""

from __future__ import annotations

from ..errors import InvalidParams

CREATIVE_QUALITIES = (
    "increased service",
    "added information choice",
    "greater participation",
    "more connected",
    "greater trust",
    "more convenient",
    "greener",
    "more entertaining",
    "more durable",
    "cheaper to run",
    "more adaptable",
    "more informative",
    "more fashionable",
    "inspirational",
    "higher productivity",
    "greater independence",
    "more playful",
    "more beautiful",
    "more direct",
    "healthier",
    "more influential",
    "younger",
)

MAX_QUALITIES = 3


def validate_qualities(qualities: list[str] | tuple[str, ...]) -> tuple[str, ...]:
    """Check a quality selection against the catalog and the cap of 3."""
    if len(qualities) > MAX_QUALITIES:
        raise InvalidParams(
            f"at most {MAX_QUALITIES} creative qualities, got {len(qualities)}"
        )
    unknown = [q for q in qualities if q not in CREATIVE_QUALITIES]
    if unknown:
        raise InvalidParams(f"unknown creative qualities: {unknown}")
    return tuple(qualities)
