"""Machine-translation hook.

Translation is a pluggable HTTP service; without one configured, any
non-English text is an error rather than silently passed through.
English input is returned unchanged.
"""

from __future__ import annotations

from typing import Protocol

from ..errors import TranslatorUnavailable

__all__ = ["Translator", "HttpTranslator", "translate"]


class Translator(Protocol):
    def translate(self, text: str, source_lang: str) -> str: ...


class HttpTranslator:
    """POST {"text": ..., "source_lang": ...} -> {"text": ...}."""

    def __init__(self, endpoint: str, timeout: float = 60.0) -> None:
        self.endpoint = endpoint
        self.timeout = timeout

    def translate(self, text: str, source_lang: str) -> str:
        import requests

        try:
            resp = requests.post(
                self.endpoint,
                json={"text": text, "source_lang": source_lang},
                timeout=self.timeout,
            )
            resp.raise_for_status()
            return resp.json()["text"]
        except Exception as exc:
            raise TranslatorUnavailable(f"translation service failed: {exc}") from exc


def translate(text: str, language: str, translator: Translator | None = None) -> str:
    """Translate ``text`` into English; identity when already English."""
    if language == "en" or not text:
        return text
    if translator is None:
        raise TranslatorUnavailable(
            f"text in language {language!r} but no translation service configured"
        )
    return translator.translate(text, language)
