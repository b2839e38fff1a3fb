"""Tokenization and class-based TF-IDF term weighting.

The "document" for weighting purposes is the concatenation of one
cluster's texts: weight(t, c) = tf(t, c) * ln(1 + A / f(t)), where A is
the average token count per cluster and f(t) the corpus-wide count of t.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from typing import Sequence

from ..errors import EmptyCluster
from .stopwords import STOPWORDS

__all__ = ["tokenize", "term_counts", "class_tfidf", "MIN_TERM_LENGTH"]

MIN_TERM_LENGTH = 3
_TOKEN_RE = re.compile(r"\w+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens, stop words removed, short tokens dropped."""
    return [
        t
        for t in (m.group(0).lower() for m in _TOKEN_RE.finditer(text))
        if len(t) >= MIN_TERM_LENGTH and t not in STOPWORDS
    ]


def term_counts(text: str) -> tuple[Counter, int]:
    """Unigram+bigram counts and the unigram token total for one text."""
    tokens = tokenize(text)
    counts: Counter = Counter(tokens)
    counts.update(f"{a} {b}" for a, b in zip(tokens, tokens[1:]))
    return counts, len(tokens)


def class_tfidf(
    cluster_counts: Sequence[Counter],
    cluster_token_totals: Sequence[int],
) -> list[dict[str, float]]:
    """Per-cluster term weights; tf(t,c) * ln(1 + A / f(t))."""
    if len(cluster_counts) == 0:
        raise EmptyCluster("no clusters given")
    for i, total in enumerate(cluster_token_totals):
        if total == 0:
            raise EmptyCluster(f"cluster {i} has no tokens")
    avg_tokens = sum(cluster_token_totals) / len(cluster_counts)
    corpus: Counter = Counter()
    for counts in cluster_counts:
        corpus.update(counts)
    weighted: list[dict[str, float]] = []
    for counts in cluster_counts:
        weighted.append(
            {
                term: tf * math.log(1.0 + avg_tokens / corpus[term])
                for term, tf in counts.items()
            }
        )
    return weighted


def top_terms(weights: dict[str, float], limit: int) -> list[tuple[str, float]]:
    """Highest-weighted terms, ties broken lexicographically."""
    return sorted(weights.items(), key=lambda kv: (-kv[1], kv[0]))[:limit]
