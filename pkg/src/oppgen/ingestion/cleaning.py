"""Text cleaning: whitespace, character standardization, page anomalies.

``clean_text`` is idempotent: cleaning already-clean text returns it
unchanged. Page boundaries in the raw text are marked with form feeds
(``\\f``, as emitted by the extractors); lines repeating verbatim on three
or more pages are treated as running headers/footers and kept once.
"""

from __future__ import annotations

import re
import unicodedata

__all__ = ["clean_text"]

# Typographic characters standardized to plain equivalents.
_CHAR_MAP = {
    "‘": "'",
    "’": "'",
    "“": '"',
    "”": '"',
    "–": "-",
    "—": "-",
    " ": " ",
    "…": "...",
    "\t": " ",
    "\x0b": " ",
}

_HEADER_MIN_PAGES = 3
_WS_RUN = re.compile(r"\s+")


def _normalize_newlines(text: str) -> str:
    return (
        text.replace("\r\n", "\n")
        .replace("\r", "\n")
        .replace(" ", "\n")
        .replace(" ", "\n")
    )


def _dedupe_page_lines(text: str) -> str:
    """Keep one occurrence of lines that repeat verbatim on >= 3 pages."""
    pages = text.split("\f")
    if len(pages) < _HEADER_MIN_PAGES:
        return text.replace("\f", "\n\n")
    page_hits: dict[str, set[int]] = {}
    for idx, page in enumerate(pages):
        for line in page.split("\n"):
            key = line.strip()
            if key:
                page_hits.setdefault(key, set()).add(idx)
    repeated = {k for k, hits in page_hits.items() if len(hits) >= _HEADER_MIN_PAGES}
    if not repeated:
        return text.replace("\f", "\n\n")
    seen: set[str] = set()
    out_pages = []
    for page in pages:
        kept = []
        for line in page.split("\n"):
            key = line.strip()
            if key in repeated:
                if key in seen:
                    continue
                seen.add(key)
            kept.append(line)
        out_pages.append("\n".join(kept))
    return "\n\n".join(out_pages)


def _standardize_chars(text: str) -> str:
    out = []
    for ch in text:
        mapped = _CHAR_MAP.get(ch)
        if mapped is not None:
            out.append(mapped)
            continue
        if ch == "\n":
            out.append(ch)
            continue
        cat = unicodedata.category(ch)
        if cat == "Zs":
            out.append(" ")
        elif cat in ("Zl", "Zp"):
            out.append("\n")
        elif cat in ("Cc", "Cf", "Cs"):
            continue  # control, format and surrogate chars are anomalies
        else:
            out.append(ch)
    return "".join(out)


def _collapse_whitespace(match: re.Match[str]) -> str:
    run = match.group(0)
    newlines = run.count("\n")
    if newlines >= 2:
        return "\n\n"
    if newlines == 1:
        return "\n"
    return " "


def clean_text(raw: str) -> str:
    """Clean extracted text; empty input returns the empty string.

    Steps: normalize newlines, drop repeated page headers/footers, map
    typographic characters to plain equivalents, remove control
    characters, NFC-normalize, then collapse whitespace runs (a run with
    one newline becomes a line break, two or more become a paragraph
    break).
    """
    if not raw:
        return ""
    text = _normalize_newlines(raw)
    text = _dedupe_page_lines(text)
    text = _standardize_chars(text)
    text = unicodedata.normalize("NFC", text)
    text = _WS_RUN.sub(_collapse_whitespace, text)
    return text.strip()
