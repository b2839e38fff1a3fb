"""Count-steered agglomerative clustering.

Average-linkage dendrograms come from scipy. The requested cluster-count
band maps to a window of merge indexes over the sorted cut heights;
within that window the cut with the widest height gap is chosen, i.e.
the most stable cluster count the data supports in the band.
Deterministic for identical input.
"""

from __future__ import annotations

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage

from ..errors import GranularityUnreachable

__all__ = ["cluster_points"]


def _labels_to_groups(labels: np.ndarray) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for idx, label in enumerate(labels):
        groups.setdefault(int(label), []).append(idx)
    # stable order: by smallest member index
    return sorted(groups.values(), key=lambda members: members[0])


def cluster_points(
    points: np.ndarray, target_min: int, target_max: int
) -> list[list[int]]:
    """Partition points into between target_min and target_max clusters.

    Returns member-index lists ordered by smallest member. Raises
    GranularityUnreachable when no dendrogram cut yields a count inside
    the band (too few points, or duplicate points collapsing below the
    minimum).

    A count c is achievable when the dendrogram has a strict height gap
    between merge n-c and merge n-c+1; cutting anywhere in that gap yields
    exactly c clusters. Among achievable counts in the band the one with
    the widest gap wins (ties prefer more clusters), which recovers the
    natural structure of separated data instead of an arbitrary in-band
    count.
    """
    points = np.asarray(points, dtype=np.float64)
    n = len(points)
    if target_min < 1 or target_max < target_min:
        raise ValueError("invalid target range")
    if n < target_min:
        raise GranularityUnreachable(f"{n} points cannot form {target_min} clusters")
    if n == 1:
        return [[0]]
    link = linkage(points, method="average")
    heights = np.sort(link[:, 2])  # ascending, one entry per merge

    # Cutting at height t applies every merge with height <= t, leaving
    # n - m clusters after m merges. The band [target_min, target_max]
    # therefore spans at most target_max - target_min + 1 candidate cut
    # windows; each is examined once (at most 27 for the widest band).
    lo_merges = max(0, n - target_max)  # fewest merges we may apply
    hi_merges = n - target_min  # most merges we may apply

    def window(m: int) -> tuple[float, float]:
        lower = float(heights[m - 1]) if m > 0 else 0.0
        if m < n - 1:
            upper = float(heights[m])
        else:
            upper = float(heights[-1]) * 2.0 + 1.0  # single cluster: open-ended
        return lower, upper

    best: tuple[float, int] | None = None  # (gap, count)
    best_cut: float | None = None
    for m in range(lo_merges, hi_merges + 1):
        lower, upper = window(m)
        gap = upper - lower
        if gap <= 0:
            continue  # count n - m is not realizable by any cut
        count = n - m
        key = (gap, count)
        if best is None or key > best:
            best = key
            # a zero lower bound means "cut below the first positive merge"
            best_cut = (lower + upper) / 2.0 if lower > 0 else upper / 2.0
    if best is None or best_cut is None:
        raise GranularityUnreachable(
            f"no cut height yields between {target_min} and {target_max} clusters "
            f"for {n} points"
        )
    labels = fcluster(link, t=best_cut, criterion="distance")
    groups = _labels_to_groups(labels)
    if not target_min <= len(groups) <= target_max:
        raise GranularityUnreachable(
            f"cut produced {len(groups)} clusters outside [{target_min}, {target_max}]"
        )
    return groups
