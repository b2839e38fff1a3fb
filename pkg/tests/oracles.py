"""Independent brute-force oracles used by the test suite.

Everything in here recomputes expected values by a different route than
the package code: pair counting instead of rank sums, full permutation
enumeration instead of normal approximation, plain dict loops instead of
vectorized weighting. Keep these dumb and obviously correct.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from typing import Sequence


def u_by_pair_counting(a: Sequence[float], b: Sequence[float]) -> float:
    """U statistic as the number of (a_i, b_j) wins, ties counting half."""
    u = 0.0
    for x in a:
        for y in b:
            if x > y:
                u += 1.0
            elif x == y:
                u += 0.5
    return u


def exact_mw_p_two_sided(
    a: Sequence[float], b: Sequence[float], mid: bool = False
) -> float:
    """Two-sided permutation p for Mann-Whitney by full enumeration.

    ``mid=True`` gives the mid-p convention (half weight on outcomes exactly
    as extreme as observed), which is what a continuity-uncorrected normal
    approximation estimates.
    """
    n_a = len(a)
    pooled = list(a) + list(b)
    n = len(pooled)
    mu = n_a * (n - n_a) / 2.0
    u_obs = u_by_pair_counting(a, b)
    dev = abs(u_obs - mu)
    beyond = 0
    boundary = 0
    total = 0
    for combo in itertools.combinations(range(n), n_a):
        rest = [pooled[i] for i in range(n) if i not in combo]
        u = u_by_pair_counting([pooled[i] for i in combo], rest)
        total += 1
        d = abs(u - mu)
        if d > dev + 1e-12:
            beyond += 1
        elif abs(d - dev) <= 1e-12:
            boundary += 1
    if mid:
        return (beyond + 0.5 * boundary) / total
    return (beyond + boundary) / total


def kw_h_by_rank_sums(groups: Sequence[Sequence[float]]) -> float:
    """Tie-corrected Kruskal-Wallis H recomputed with explicit rank maps."""
    pooled = sorted(v for g in groups for v in g)
    n = len(pooled)
    # mean rank of each distinct value
    rank_of: dict[float, float] = {}
    for value, count in Counter(pooled).items():
        first = pooled.index(value) + 1
        rank_of[value] = (first + (first + count - 1)) / 2.0
    h = 0.0
    for g in groups:
        r = sum(rank_of[v] for v in g)
        h += r * r / len(g)
    h = 12.0 / (n * (n + 1)) * h - 3.0 * (n + 1)
    ties = sum(c**3 - c for c in Counter(pooled).values())
    correction = 1.0 - ties / (n**3 - n)
    if correction <= 0:
        return 0.0
    return h / correction


def normal_cdf_by_quadrature(x: float, steps: int = 200_001) -> float:
    """Phi(x) by Simpson integration of the density from -10 to x."""
    lo = -10.0
    if x <= lo:
        return 0.0
    width = x - lo
    if steps % 2 == 0:
        steps += 1
    h = width / (steps - 1)
    total = 0.0
    for i in range(steps):
        t = lo + i * h
        f = math.exp(-t * t / 2.0) / math.sqrt(2 * math.pi)
        if i == 0 or i == steps - 1:
            total += f
        elif i % 2 == 1:
            total += 4 * f
        else:
            total += 2 * f
    return total * h / 3.0


def chi2_sf_by_quadrature(x: float, df: int, steps: int = 200_001) -> float:
    """Chi-square survival function by Simpson integration of the density."""
    if x <= 0:
        return 1.0
    hi = max(x * 10.0, x + 40.0 * df)
    if steps % 2 == 0:
        steps += 1
    h = (hi - x) / (steps - 1)
    a = df / 2.0
    log_norm = -a * math.log(2.0) - math.lgamma(a)

    def density(t: float) -> float:
        if t <= 0:
            return 0.0
        return math.exp(log_norm + (a - 1.0) * math.log(t) - t / 2.0)

    total = 0.0
    for i in range(steps):
        t = x + i * h
        f = density(t)
        if i == 0 or i == steps - 1:
            total += f
        elif i % 2 == 1:
            total += 4 * f
        else:
            total += 2 * f
    return total * h / 3.0


def ctfidf_by_loops(
    cluster_counts: Sequence[dict[str, int]],
    cluster_token_totals: Sequence[int],
) -> list[dict[str, float]]:
    """Class-based TF-IDF, weight = tf * ln(1 + A / f), by plain dict loops."""
    num_clusters = len(cluster_counts)
    avg_tokens = sum(cluster_token_totals) / num_clusters
    corpus: dict[str, int] = {}
    for counts in cluster_counts:
        for term, c in counts.items():
            corpus[term] = corpus.get(term, 0) + c
    out = []
    for counts in cluster_counts:
        weights = {}
        for term, tf in counts.items():
            weights[term] = tf * math.log(1.0 + avg_tokens / corpus[term])
        out.append(weights)
    return out


def mmr_next_pick(
    candidates: Sequence[str],
    selected: Sequence[str],
    relevance: dict[str, float],
    pair_sim: dict[tuple[str, str], float],
    lam: float,
) -> str:
    """Replay one greedy step of maximal-marginal-relevance selection.

    Ties break by score, then relevance, then term text, matching the
    documented total order.
    """
    best = None
    best_key = None
    for t in candidates:
        if t in selected:
            continue
        redundancy = max((pair_sim[(t, s)] for s in selected), default=0.0)
        score = lam * relevance[t] - (1.0 - lam) * redundancy
        key = (-score, -relevance[t], t)
        if best_key is None or key < best_key:
            best_key = key
            best = t
    assert best is not None
    return best
