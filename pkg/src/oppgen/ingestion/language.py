"""Small trigram-frequency language detector.

Profiles are built once from embedded seed text per language and compared
with the classic out-of-place rank distance. A declared language always
overrides detection; this detector only has to recognize obviously
non-English text so the translation hook can be invoked.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache

__all__ = ["detect_language", "KNOWN_LANGUAGES"]

_PROFILE_SIZE = 300
_MIN_CHARS = 20

_SEED_TEXT = {
    "en": (
        "The report describes how local businesses can attract new investment "
        "and support the regeneration of town centres. It was written for the "
        "people who work with these organisations every day and includes the "
        "most important findings from the survey of employers and workers in "
        "the sector, with a summary of what should be done next year."
    ),
    "fr": (
        "Le rapport décrit comment les entreprises locales peuvent attirer de "
        "nouveaux investissements et soutenir la régénération des centres des "
        "villes. Il a été rédigé pour les personnes qui travaillent avec ces "
        "organisations chaque jour et présente les résultats les plus "
        "importants de l'enquête auprès des employeurs du secteur."
    ),
    "de": (
        "Der Bericht beschreibt, wie lokale Unternehmen neue Investitionen "
        "anziehen und die Erneuerung der Innenstädte unterstützen können. Er "
        "wurde für die Menschen geschrieben, die täglich mit diesen "
        "Organisationen arbeiten, und enthält die wichtigsten Ergebnisse der "
        "Befragung von Arbeitgebern und Beschäftigten in der Branche."
    ),
    "es": (
        "El informe describe cómo las empresas locales pueden atraer nuevas "
        "inversiones y apoyar la regeneración de los centros urbanos. Fue "
        "escrito para las personas que trabajan con estas organizaciones cada "
        "día e incluye los resultados más importantes de la encuesta a los "
        "empleadores y trabajadores del sector."
    ),
    "it": (
        "Il rapporto descrive come le imprese locali possano attrarre nuovi "
        "investimenti e sostenere la rigenerazione dei centri urbani. È stato "
        "scritto per le persone che lavorano ogni giorno con queste "
        "organizzazioni e contiene i risultati più importanti dell'indagine "
        "sui datori di lavoro e sui lavoratori del settore."
    ),
}

KNOWN_LANGUAGES = tuple(_SEED_TEXT)

_WORD_RE = re.compile(r"[^\W\d_]+", re.UNICODE)


def _trigrams(text: str) -> Counter:
    grams: Counter = Counter()
    for word in _WORD_RE.findall(text.lower()):
        padded = f" {word} "
        for i in range(len(padded) - 2):
            grams[padded[i : i + 3]] += 1
    return grams


def _profile(text: str) -> list[str]:
    grams = _trigrams(text)
    return [g for g, _ in sorted(grams.items(), key=lambda kv: (-kv[1], kv[0]))][:_PROFILE_SIZE]


@lru_cache(maxsize=1)
def _language_profiles() -> dict[str, dict[str, int]]:
    return {
        lang: {g: rank for rank, g in enumerate(_profile(seed))}
        for lang, seed in _SEED_TEXT.items()
    }


# A non-English verdict must clear both gates; everything downstream is
# English, so ambiguous and out-of-vocabulary text resolves to "en".
_MIN_COVERAGE = 0.3
_COVERAGE_MARGIN = 1.25


def detect_language(text: str, declared: str | None = None) -> str:
    """Return a BCP-47 language tag for ``text``.

    ``declared`` wins when given. Classification uses the fraction of the
    text's frequent trigrams found in each language profile; texts too
    short to profile, or that no profile covers convincingly better than
    English, default to English.
    """
    if declared:
        return declared
    if not text or len(text.strip()) < _MIN_CHARS:
        return "en"
    sample_profile = _profile(text[:4000])
    if not sample_profile:
        return "en"
    coverage: dict[str, float] = {}
    for lang, ranks in _language_profiles().items():
        hits = sum(1 for gram in sample_profile if gram in ranks)
        coverage[lang] = hits / len(sample_profile)
    best_lang = max(coverage, key=lambda lang: (coverage[lang], lang == "en", lang))
    if best_lang == "en":
        return "en"
    if coverage[best_lang] < _MIN_COVERAGE:
        return "en"
    if coverage[best_lang] < coverage["en"] * _COVERAGE_MARGIN:
        return "en"
    return best_lang
