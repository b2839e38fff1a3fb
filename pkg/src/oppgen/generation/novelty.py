"""Novelty settings: which topic-term ranks feed a prompt, at what temperature.

Five levels span "very close to what the space already contains" through
"built from its least prototypical terms". The two extremes use the five
highest-weighted and the three lowest-weighted of the ten ranked terms;
the middle rows interpolate. Each level also fixes the sampling
temperature for the text-generation call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import InvalidParams
from ..discovery import TopicTerm

__all__ = ["NOVELTY_LEVELS", "NOVELTY_TABLE", "NoveltySetting", "novelty_selection"]

NOVELTY_LEVELS = (
    "very_prototypical",
    "prototypical",
    "balanced",
    "unusual",
    "highly_unusual",
)

# level -> (term ranks used, temperature)
NOVELTY_TABLE: dict[str, tuple[tuple[int, ...], float]] = {
    "very_prototypical": ((1, 2, 3, 4, 5), 0.5),
    "prototypical": ((2, 3, 4, 5, 6), 0.6),
    "balanced": ((4, 5, 6, 7, 8), 0.7),
    "unusual": ((7, 8, 9, 10), 0.8),
    "highly_unusual": ((8, 9, 10), 0.9),
}

_PHRASES = {
    "very_prototypical": "very prototypical",
    "prototypical": "prototypical",
    "balanced": "balanced",
    "unusual": "unusual",
    "highly_unusual": "highly unusual",
}


@dataclass(frozen=True)
class NoveltySetting:
    level: str
    term_ranks: tuple[int, ...]
    temperature: float

    @property
    def phrase(self) -> str:
        return _PHRASES[self.level]


def novelty_setting(level: str) -> NoveltySetting:
    if level not in NOVELTY_TABLE:
        raise InvalidParams(f"unknown novelty level {level!r}; expected one of {NOVELTY_LEVELS}")
    ranks, temperature = NOVELTY_TABLE[level]
    return NoveltySetting(level=level, term_ranks=ranks, temperature=temperature)


def novelty_selection(
    level: str, topic_terms: Sequence[TopicTerm]
) -> tuple[list[TopicTerm], float]:
    """Terms whose ranks the level selects, plus the sampling temperature.

    Spaces with fewer than ten terms clip the rank set to what exists;
    a rank row that clips to nothing falls back to the lowest available
    ranks (same count as the row asks for).
    """
    setting = novelty_setting(level)
    by_rank = {t.rank: t for t in topic_terms}
    selected = [by_rank[r] for r in setting.term_ranks if r in by_rank]
    if not selected and topic_terms:
        want = len(setting.term_ranks)
        selected = sorted(topic_terms, key=lambda t: -t.rank)[:want]
        selected.reverse()
    return selected, setting.temperature
