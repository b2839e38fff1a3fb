from ..generation.prompts import render_rating_prompt
from .rating import (
    RATING_BATCH_LIMIT,
    RatingPair,
    parse_ratings,
    read_ratings_csv,
    write_ratings_csv,
)
from .stats import (
    ComparisonReport,
    KruskalWallisResult,
    MannWhitneyResult,
    chi_square_sf,
    compare_rating_sets,
    compare_three_groups,
    kruskal_wallis,
    mann_whitney,
    mann_whitney_exact,
    normal_cdf,
)

__all__ = [
    "render_rating_prompt",
    "RATING_BATCH_LIMIT",
    "RatingPair",
    "parse_ratings",
    "read_ratings_csv",
    "write_ratings_csv",
    "ComparisonReport",
    "KruskalWallisResult",
    "MannWhitneyResult",
    "chi_square_sf",
    "compare_rating_sets",
    "compare_three_groups",
    "kruskal_wallis",
    "mann_whitney",
    "mann_whitney_exact",
    "normal_cdf",
]
