"""Opportunity spaces: clustering chunks and extracting their topic terms.

Discovery runs at three granularities (broad 4-8, typical 8-15, narrow
15-30 spaces). Each space gets up to ten topic terms (class TF-IDF scored,
MMR diversified), a centroid of its member embeddings, and a slot for the
label/description filled later by the generation stage.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from ..embedding import Embedder, centroid, cosine_distance
from ..errors import GranularityUnreachable, TooFewPoints
from ..ingestion import TextChunk
from .clustering import cluster_points
from .ctfidf import class_tfidf, term_counts, top_terms
from .mmr import mmr_select
from .reduction import project_2d, reduce_dimensions

__all__ = [
    "BANDS",
    "TopicTerm",
    "OpportunitySpace",
    "GranularitySet",
    "DiscoveryParams",
    "discover_spaces",
    "order_spaces",
    "semantic_distance_to_space",
]

BANDS: dict[str, tuple[int, int]] = {
    "broad": (4, 8),
    "typical": (8, 15),
    "narrow": (15, 30),
}

TOPIC_TERM_LIMIT = 10


@dataclass(frozen=True)
class TopicTerm:
    term: str
    weight: float
    rank: int  # 1 = highest weight

    def to_dict(self) -> dict:
        return {"term": self.term, "weight": self.weight, "rank": self.rank}

    @staticmethod
    def from_dict(d: dict) -> "TopicTerm":
        return TopicTerm(term=d["term"], weight=d["weight"], rank=d["rank"])


@dataclass(frozen=True)
class OpportunitySpace:
    space_id: str
    granularity: str
    member_chunk_ids: tuple[str, ...]
    topic_terms: tuple[TopicTerm, ...]
    centroid: tuple[float, ...]
    distinct_term_count: int
    label: str = ""
    description: str = ""
    selection_order: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()
    map_xy: tuple[float, float] | None = None

    @property
    def member_count(self) -> int:
        return len(self.member_chunk_ids)

    def centroid_array(self) -> np.ndarray:
        return np.asarray(self.centroid, dtype=np.float32)

    def with_description(self, label: str, description: str, flags: tuple[str, ...] = ()) -> "OpportunitySpace":
        return replace(self, label=label, description=description, flags=self.flags + flags)

    def to_dict(self) -> dict:
        return {
            "space_id": self.space_id,
            "granularity": self.granularity,
            "member_chunk_ids": list(self.member_chunk_ids),
            "topic_terms": [t.to_dict() for t in self.topic_terms],
            "centroid": [float(x) for x in self.centroid],
            "distinct_term_count": self.distinct_term_count,
            "label": self.label,
            "description": self.description,
            "selection_order": list(self.selection_order),
            "flags": list(self.flags),
            "map_xy": list(self.map_xy) if self.map_xy else None,
        }

    @staticmethod
    def from_dict(d: dict) -> "OpportunitySpace":
        return OpportunitySpace(
            space_id=d["space_id"],
            granularity=d["granularity"],
            member_chunk_ids=tuple(d["member_chunk_ids"]),
            topic_terms=tuple(TopicTerm.from_dict(t) for t in d["topic_terms"]),
            centroid=tuple(d["centroid"]),
            distinct_term_count=d["distinct_term_count"],
            label=d.get("label", ""),
            description=d.get("description", ""),
            selection_order=tuple(d.get("selection_order", ())),
            flags=tuple(d.get("flags", ())),
            map_xy=tuple(d["map_xy"]) if d.get("map_xy") else None,
        )


@dataclass
class GranularitySet:
    granularity: str
    spaces: list[OpportunitySpace]
    target_min: int
    target_max: int
    unreachable: bool = False
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "granularity": self.granularity,
            "spaces": [s.to_dict() for s in self.spaces],
            "target_min": self.target_min,
            "target_max": self.target_max,
            "unreachable": self.unreachable,
            "reason": self.reason,
        }

    @staticmethod
    def from_dict(d: dict) -> "GranularitySet":
        return GranularitySet(
            granularity=d["granularity"],
            spaces=[OpportunitySpace.from_dict(s) for s in d["spaces"]],
            target_min=d["target_min"],
            target_max=d["target_max"],
            unreachable=d.get("unreachable", False),
            reason=d.get("reason", ""),
        )

    def report(self) -> dict:
        """Compact space report for export."""
        return {
            "granularity": self.granularity,
            "spaces": [
                {
                    "id": s.space_id,
                    "terms": [t.to_dict() for t in s.topic_terms],
                    "member_count": s.member_count,
                    "distinct_term_count": s.distinct_term_count,
                }
                for s in self.spaces
            ],
        }


@dataclass(frozen=True)
class DiscoveryParams:
    """Manually set discovery parameters, collected in one record."""

    reduce_k: int = 5
    candidate_pool: int = 30
    mmr_lambda: float = 0.7
    seed: int = 0


def order_spaces(spaces: Sequence[OpportunitySpace]) -> list[OpportunitySpace]:
    """Order by distinct term count desc, then member count desc, then id."""
    return sorted(
        spaces,
        key=lambda s: (-s.distinct_term_count, -s.member_count, s.space_id),
    )


def semantic_distance_to_space(
    text: str, space: OpportunitySpace, embedder: Embedder
) -> float:
    """Cosine distance between the text's embedding and the space centroid."""
    vec = embedder.embed([text])[0]
    return cosine_distance(vec, space.centroid_array())


def _build_space(
    granularity: str,
    index: int,
    members: list[int],
    chunks: Sequence[TextChunk],
    embeddings: np.ndarray,
    weights: dict[str, float],
    embedder: Embedder,
    params: DiscoveryParams,
) -> OpportunitySpace:
    member_ids = tuple(chunks[i].chunk_id for i in members)
    space_centroid = centroid(embeddings[members])
    candidates = top_terms(weights, params.candidate_pool)
    flags: list[str] = []
    if len(candidates) < TOPIC_TERM_LIMIT:
        flags.append("short_topic_list")
    term_list = [t for t, _ in candidates]
    term_matrix = embedder.embed(term_list) if term_list else np.zeros((0, 1))
    term_vectors = {t: term_matrix[i] for i, t in enumerate(term_list)}
    picked = mmr_select(
        candidates,
        term_vectors,
        space_centroid,
        k=TOPIC_TERM_LIMIT,
        lam=params.mmr_lambda,
    )
    ranked = sorted(picked, key=lambda t: (-weights[t], t))
    topic_terms = tuple(
        TopicTerm(term=t, weight=weights[t], rank=r + 1) for r, t in enumerate(ranked)
    )
    return OpportunitySpace(
        space_id=f"{granularity}-{index + 1:02d}",
        granularity=granularity,
        member_chunk_ids=member_ids,
        topic_terms=topic_terms,
        centroid=tuple(float(x) for x in space_centroid),
        distinct_term_count=len(weights),
        selection_order=tuple(picked),
        flags=tuple(flags),
    )


def discover_spaces(
    chunks: Sequence[TextChunk],
    embeddings: np.ndarray,
    embedder: Embedder,
    params: DiscoveryParams | None = None,
) -> dict[str, GranularitySet]:
    """Discover opportunity spaces at all three granularities.

    Bands that cannot be reached with the available chunks come back
    flagged instead of raising, so small projects still get the coarser
    granularities. Deterministic for a fixed seed.
    """
    params = params or DiscoveryParams()
    n = len(chunks)
    result: dict[str, GranularitySet] = {}
    reduced: np.ndarray | None = None
    if n >= 2:
        k = min(params.reduce_k, embeddings.shape[1])
        reduced = reduce_dimensions(embeddings, k=k, seed=params.seed)
    counts_and_totals = [term_counts(c.text) for c in chunks]

    for granularity, (target_min, target_max) in BANDS.items():
        if reduced is None:
            result[granularity] = GranularitySet(
                granularity, [], target_min, target_max,
                unreachable=True, reason="fewer than 2 chunks",
            )
            continue
        try:
            clusters = cluster_points(reduced, target_min, target_max)
        except GranularityUnreachable as exc:
            result[granularity] = GranularitySet(
                granularity, [], target_min, target_max,
                unreachable=True, reason=exc.message,
            )
            continue
        cluster_counts = []
        cluster_totals = []
        for members in clusters:
            merged = counts_and_totals[members[0]][0].copy()
            total = counts_and_totals[members[0]][1]
            for i in members[1:]:
                merged.update(counts_and_totals[i][0])
                total += counts_and_totals[i][1]
            cluster_counts.append(merged)
            cluster_totals.append(total)
        weights_per_cluster = class_tfidf(cluster_counts, cluster_totals)
        spaces = [
            _build_space(
                granularity, idx, members, chunks, embeddings,
                weights_per_cluster[idx], embedder, params,
            )
            for idx, members in enumerate(clusters)
        ]
        ordered = order_spaces(spaces)
        if len(ordered) >= 2:
            layout = project_2d(
                np.asarray([s.centroid for s in ordered]), seed=params.seed
            )
            ordered = [
                replace(s, map_xy=(float(layout[i][0]), float(layout[i][1])))
                for i, s in enumerate(ordered)
            ]
        result[granularity] = GranularitySet(
            granularity, ordered, target_min, target_max
        )
    return result
