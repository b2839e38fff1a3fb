"""Split cleaned text into embedding-sized chunks.

Paragraphs are merged greedily: a chunk closes as soon as it reaches 100
words, and never exceeds 300. A single paragraph longer than 300 words is
split at sentence boundaries first (and at word boundaries if one
sentence alone is too long). No text is lost or duplicated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

MIN_WORDS = 100
MAX_WORDS = 300

_PARAGRAPH_SPLIT = re.compile(r"\n{2,}")
_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+")


@dataclass(frozen=True)
class TextChunk:
    chunk_id: str
    asset_id: str
    ordinal: int
    text: str
    original_language: str = "en"
    flags: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "chunk_id": self.chunk_id,
            "asset_id": self.asset_id,
            "ordinal": self.ordinal,
            "text": self.text,
            "original_language": self.original_language,
            "flags": list(self.flags),
        }

    @staticmethod
    def from_dict(d: dict) -> "TextChunk":
        return TextChunk(
            chunk_id=d["chunk_id"],
            asset_id=d["asset_id"],
            ordinal=d["ordinal"],
            text=d["text"],
            original_language=d.get("original_language", "en"),
            flags=tuple(d.get("flags", ())),
        )


def word_count(text: str) -> int:
    return len(text.split())


def _split_oversize_paragraph(paragraph: str) -> list[str]:
    """Break a >300-word paragraph into pieces of at most 300 words."""
    sentences = [s for s in _SENTENCE_SPLIT.split(paragraph) if s.strip()]
    pieces: list[str] = []
    current: list[str] = []
    current_wc = 0
    for sentence in sentences:
        wc = word_count(sentence)
        if wc > MAX_WORDS:
            if current:
                pieces.append(" ".join(current))
                current, current_wc = [], 0
            words = sentence.split()
            for i in range(0, len(words), MAX_WORDS):
                pieces.append(" ".join(words[i : i + MAX_WORDS]))
            continue
        if current and current_wc + wc > MAX_WORDS:
            pieces.append(" ".join(current))
            current, current_wc = [], 0
        current.append(sentence)
        current_wc += wc
    if current:
        pieces.append(" ".join(current))
    return pieces


def chunk_text(cleaned: str, asset_id: str, original_language: str = "en") -> list[TextChunk]:
    """Merge paragraphs of cleaned text into 100-300-word chunks."""
    if not cleaned or not cleaned.strip():
        return []
    paragraphs = [p for p in _PARAGRAPH_SPLIT.split(cleaned) if p.strip()]
    units: list[str] = []
    for p in paragraphs:
        if word_count(p) > MAX_WORDS:
            units.extend(_split_oversize_paragraph(p))
        else:
            units.append(p)

    chunks: list[TextChunk] = []

    def emit(parts: list[str]) -> None:
        ordinal = len(chunks)
        chunks.append(
            TextChunk(
                chunk_id=f"{asset_id}:{ordinal:04d}",
                asset_id=asset_id,
                ordinal=ordinal,
                text="\n\n".join(parts),
                original_language=original_language,
            )
        )

    current: list[str] = []
    current_wc = 0
    for unit in units:
        wc = word_count(unit)
        if current and current_wc + wc > MAX_WORDS:
            emit(current)
            current, current_wc = [], 0
        current.append(unit)
        current_wc += wc
        if current_wc >= MIN_WORDS:
            emit(current)
            current, current_wc = [], 0
    if current:
        emit(current)
    return chunks
