"""Greedy maximal-marginal-relevance selection of topic terms.

score(t) = lambda * sim(t, centroid) - (1 - lambda) * max sim(t, selected)

Similarity is the dot product of unit vectors. Ties break by score, then
candidate weight, then term text, giving a total, reproducible order.
"""

from __future__ import annotations

import numpy as np

__all__ = ["mmr_select"]


def mmr_select(
    candidates: list[tuple[str, float]],
    term_vectors: dict[str, np.ndarray],
    centroid_vector: np.ndarray,
    k: int = 10,
    lam: float = 0.7,
) -> list[str]:
    """Pick up to k terms in greedy MMR order.

    ``candidates`` carries (term, class-tfidf weight) pairs; weights only
    matter for tie-breaking. Returns terms in selection order.
    """
    if not candidates:
        return []
    weights = dict(candidates)
    terms = [t for t, _ in candidates]
    centroid_vector = np.asarray(centroid_vector, dtype=np.float64)
    relevance = {
        t: float(np.dot(np.asarray(term_vectors[t], dtype=np.float64), centroid_vector))
        for t in terms
    }
    selected: list[str] = []
    remaining = set(terms)
    while remaining and len(selected) < k:
        best_term = None
        best_key: tuple | None = None
        for t in terms:
            if t not in remaining:
                continue
            redundancy = 0.0
            if selected:
                tv = np.asarray(term_vectors[t], dtype=np.float64)
                redundancy = max(
                    float(np.dot(tv, np.asarray(term_vectors[s], dtype=np.float64)))
                    for s in selected
                )
            score = lam * relevance[t] - (1.0 - lam) * redundancy
            key = (-score, -weights[t], t)
            if best_key is None or key < best_key:
                best_key = key
                best_term = t
        assert best_term is not None
        selected.append(best_term)
        remaining.discard(best_term)
    return selected
