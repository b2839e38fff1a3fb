from .clustering import cluster_points
from .ctfidf import class_tfidf, term_counts, tokenize, top_terms
from .mmr import mmr_select
from .reduction import project_2d, reduce_dimensions
from .spaces import (
    BANDS,
    DiscoveryParams,
    GranularitySet,
    OpportunitySpace,
    TopicTerm,
    discover_spaces,
    order_spaces,
    semantic_distance_to_space,
)
from .stopwords import STOPWORDS

__all__ = [
    "cluster_points",
    "class_tfidf",
    "term_counts",
    "tokenize",
    "top_terms",
    "mmr_select",
    "project_2d",
    "reduce_dimensions",
    "BANDS",
    "DiscoveryParams",
    "GranularitySet",
    "OpportunitySpace",
    "TopicTerm",
    "discover_spaces",
    "order_spaces",
    "semantic_distance_to_space",
    "STOPWORDS",
]
