"""Parsers for text-generation responses."""

from __future__ import annotations

import hashlib
import re
from typing import Optional

from ..errors import EmptyResponse, IncompleteGeneration, MalformedDescription, ParseError
from .records import (
    DESCRIPTION_WORD_MINIMUM,
    TITLE_WORD_LIMIT,
    GenerationRequest,
    Opportunity,
)

__all__ = ["parse_space_description", "parse_opportunities"]

_ITEM_PREFIX = re.compile(r"^\s*(?:\d+\s*[\.\)]\s*|[-*•]\s+)")
_LABEL_MARKUP = re.compile(r"^[#*\s]+|[#*\s:]+$")

DESCRIPTION_OPENER = "This area is"

# small heuristic list; labels are only flagged, never rejected
_COMMON_VERBS = {
    "is", "are", "be", "was", "were", "has", "have", "had", "do", "does",
    "make", "makes", "making", "create", "creates", "creating", "improve",
    "improves", "improving", "build", "builds", "building", "provide",
    "provides", "providing", "support", "supports", "supporting", "develop",
    "develops", "developing", "generate", "generates", "offer", "offers",
    "use", "uses", "using", "help", "helps", "grow", "grows", "growing",
    "deliver", "delivers", "enable", "enables", "drive", "drives",
}


def parse_space_description(response: str) -> dict:
    """Split a description response into {label, description, flags}.

    The description must begin with the required opener sentence start.
    """
    if not response or not response.strip():
        raise EmptyResponse("empty description response")
    text = response.strip()
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) >= 2:
        label = lines[0]
        description = " ".join(lines[1:])
    else:
        # single-line form: "Label: This area is ..."
        line = lines[0]
        idx = line.find(DESCRIPTION_OPENER)
        if idx > 0:
            label = line[:idx]
            description = line[idx:]
        else:
            label = ""
            description = line
    label = _LABEL_MARKUP.sub("", label)
    description = description.strip()
    if not description.startswith(DESCRIPTION_OPENER):
        raise MalformedDescription(
            f'description must start with "{DESCRIPTION_OPENER}"',
            got=description[:60],
        )
    flags = []
    if any(w.lower().strip(".,") in _COMMON_VERBS for w in label.split()):
        flags.append("label_has_verb")
    return {"label": label, "description": description, "flags": flags}


def _opportunity_id(batch_key: str, index: int, title: str) -> str:
    digest = hashlib.blake2b(
        f"{batch_key}:{index}:{title}".encode("utf-8"), digest_size=6
    ).hexdigest()
    return f"opp-{digest}"


def parse_opportunities(
    response: str,
    request: GenerationRequest,
    parent: Optional[Opportunity] = None,
    batch_key: str = "",
) -> list[Opportunity]:
    """Parse a generation response into exactly ``request.count`` records.

    Items are non-empty lines (numbering stripped), split at the first
    colon into title and description. Soft limits set flags; a missing
    colon is a ParseError carrying the item index; fewer items than
    requested is an IncompleteGeneration carrying the parsed partials.
    """
    if not response or not response.strip():
        raise IncompleteGeneration("empty generation response", partial=[])
    lines = [ln.strip() for ln in response.splitlines() if ln.strip()]
    records: list[Opportunity] = []
    provenance = "pivot" if parent is not None else "direct"
    depth = parent.pivot_depth + 1 if parent is not None else 0
    for index, line in enumerate(lines):
        item = _ITEM_PREFIX.sub("", line)
        if ":" not in item:
            raise ParseError(
                f"item {index} has no colon separating title from description",
                item_index=index,
                item=item[:80],
            )
        title, description = item.split(":", 1)
        title = title.strip()
        description = description.strip()
        flags = []
        if len(title.split()) > TITLE_WORD_LIMIT:
            flags.append("title_too_long")
        if len(description.split()) < DESCRIPTION_WORD_MINIMUM:
            flags.append("description_short")
        records.append(
            Opportunity(
                opportunity_id=_opportunity_id(batch_key, index, title),
                kind=request.kind,
                title=title,
                description=description,
                provenance=provenance,
                pivot_depth=depth,
                source_space_ids=request.space_ids,
                novelty_level=request.novelty_level,
                qualities=request.qualities,
                parent_opportunity_id=parent.opportunity_id if parent else None,
                flags=tuple(flags),
                batch_id=batch_key,
            )
        )
    if len(records) < request.count:
        raise IncompleteGeneration(
            f"expected {request.count} items, parsed {len(records)}",
            partial=records,
        )
    if len(records) > request.count:
        raise ParseError(
            f"expected {request.count} items, got {len(records)}",
            item_index=request.count,
        )
    return records
