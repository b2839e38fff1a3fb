from .assets import MEDIA_KINDS, InformationAsset, make_asset, sniff_media_kind
from .chunking import MAX_WORDS, MIN_WORDS, TextChunk, chunk_text, word_count
from .cleaning import clean_text
from .extract import count_pages, extract_text, extract_text_from_bytes
from .language import KNOWN_LANGUAGES, detect_language
from .translate import HttpTranslator, Translator, translate

__all__ = [
    "MEDIA_KINDS",
    "InformationAsset",
    "make_asset",
    "sniff_media_kind",
    "MAX_WORDS",
    "MIN_WORDS",
    "TextChunk",
    "chunk_text",
    "word_count",
    "clean_text",
    "count_pages",
    "extract_text",
    "extract_text_from_bytes",
    "KNOWN_LANGUAGES",
    "detect_language",
    "HttpTranslator",
    "Translator",
    "translate",
]
