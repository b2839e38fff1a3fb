"""Rank-based comparison statistics for rating data.

Implements the Mann-Whitney U test (two unpaired samples, normal
approximation with tie correction, no continuity correction) and the
Kruskal-Wallis H test (k independent groups, tie-corrected, chi-square
p-value), plus the standard-normal CDF and chi-square survival function
they need. Everything here is a pure function over sequences of numbers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import (
    DegenerateInput,
    EmptyGroup,
    EmptySample,
    EmptySet,
    InvalidDf,
)

__all__ = [
    "MannWhitneyResult",
    "KruskalWallisResult",
    "ComparisonReport",
    "midranks",
    "tie_term",
    "mann_whitney",
    "mann_whitney_exact",
    "kruskal_wallis",
    "normal_cdf",
    "chi_square_sf",
    "compare_rating_sets",
    "compare_three_groups",
]


def midranks(values: Sequence[float]) -> list[float]:
    """Assign 1-based ranks, ties receiving the mean of their rank span."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        # ranks i+1 .. j+1 share the mean rank
        mean_rank = (i + j + 2) / 2.0
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


def tie_term(values: Sequence[float]) -> float:
    """Sum of t^3 - t over tie groups of size t in the pooled sample."""
    counts: dict[float, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return float(sum(t**3 - t for t in counts.values() if t > 1))


@dataclass(frozen=True)
class MannWhitneyResult:
    U: float
    z: float
    p_one_sided: float
    p_two_sided: float
    tie_correction_applied: bool
    n_a: int
    n_b: int


@dataclass(frozen=True)
class KruskalWallisResult:
    H: float
    df: int
    p: float
    tie_correction_applied: bool
    group_sizes: tuple[int, ...]


@dataclass(frozen=True)
class ComparisonReport:
    """Serializable record of one two-set or k-set rating comparison."""

    test: str  # "mann_whitney" | "kruskal_wallis"
    metric: str  # "novelty" | "usefulness"
    group_sizes: tuple[int, ...]
    statistic: float  # U or H
    p_value: float
    tie_correction_applied: bool
    z: float | None = None  # Mann-Whitney only
    df: int | None = None  # Kruskal-Wallis only
    p_one_sided: float | None = None  # Mann-Whitney only
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "test": self.test,
            "metric": self.metric,
            "group_sizes": list(self.group_sizes),
            "statistic": self.statistic,
            "p_value": self.p_value,
            "tie_correction_applied": self.tie_correction_applied,
        }
        if self.z is not None:
            out["z"] = self.z
        if self.df is not None:
            out["df"] = self.df
        if self.p_one_sided is not None:
            out["p_one_sided"] = self.p_one_sided
        out.update(self.extras)
        return out


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _upper_gamma_q(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x), double precision.

    Series expansion for x < a + 1, Lentz continued fraction otherwise.
    """
    if x < 0 or a <= 0:
        raise ValueError("require x >= 0 and a > 0")
    if x == 0.0:
        return 1.0
    lg = math.lgamma(a)
    if x < a + 1.0:
        # P(a,x) by series, then Q = 1 - P
        term = 1.0 / a
        total = term
        n = a
        for _ in range(1000):
            n += 1.0
            term *= x / n
            total += term
            if abs(term) < abs(total) * 1e-16:
                break
        p = total * math.exp(-x + a * math.log(x) - lg)
        return 1.0 - p
    # modified Lentz for the continued fraction of Q(a, x)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 1000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x + a * math.log(x) - lg)


def chi_square_sf(x: float, df: int) -> float:
    """Chi-square survival function P(X > x) = Q(df/2, x/2)."""
    if not isinstance(df, int) or df < 1:
        raise InvalidDf(f"df must be a positive integer, got {df!r}")
    if x < 0:
        raise ValueError("x must be >= 0")
    return min(1.0, max(0.0, _upper_gamma_q(df / 2.0, x / 2.0)))


def mann_whitney(a: Sequence[float], b: Sequence[float]) -> MannWhitneyResult:
    """Mann-Whitney U for two unpaired, possibly unequal samples.

    Mid-ranks are assigned over the pooled sample; U is taken relative to
    the first sample, U = R_a - n_a(n_a+1)/2. The z statistic uses the
    tie-corrected variance

        var = (n_a n_b / 12) * ((N+1) - sum(t^3 - t) / (N (N-1)))

    with no continuity correction. A pooled sample with every value tied
    has zero variance and is reported as z = 0, two-sided p = 1. The
    one-sided p is the upper tail of |z|.
    """
    if len(a) == 0 or len(b) == 0:
        raise EmptySample("both samples must be non-empty")
    n_a, n_b = len(a), len(b)
    pooled = list(a) + list(b)
    n = n_a + n_b
    ranks = midranks(pooled)
    r_a = sum(ranks[:n_a])
    u = r_a - n_a * (n_a + 1) / 2.0
    mu = n_a * n_b / 2.0
    ties = tie_term(pooled)
    var = (n_a * n_b / 12.0) * ((n + 1) - ties / (n * (n - 1)))
    if var <= 0:
        return MannWhitneyResult(
            U=u, z=0.0, p_one_sided=0.5, p_two_sided=1.0,
            tie_correction_applied=ties > 0, n_a=n_a, n_b=n_b,
        )
    z = (u - mu) / math.sqrt(var)
    p_one = 1.0 - normal_cdf(abs(z))
    return MannWhitneyResult(
        U=u,
        z=z,
        p_one_sided=p_one,
        p_two_sided=min(1.0, 2.0 * p_one),
        tie_correction_applied=ties > 0,
        n_a=n_a,
        n_b=n_b,
    )


def mann_whitney_exact(a: Sequence[float], b: Sequence[float]) -> dict[str, float]:
    """Exact permutation p-values for small samples (N <= 12).

    Enumerates every assignment of the pooled values to the two group
    labels and computes the two-sided p as P(|U - mu| >= |U_obs - mu|).
    Intended as a verification mode next to the normal approximation.
    """
    if len(a) == 0 or len(b) == 0:
        raise EmptySample("both samples must be non-empty")
    n_a, n_b = len(a), len(b)
    n = n_a + n_b
    if n > 12:
        raise DegenerateInput(f"exact mode is limited to N <= 12, got {n}")
    pooled = list(a) + list(b)
    ranks = midranks(pooled)
    mu = n_a * n_b / 2.0
    u_obs = sum(ranks[:n_a]) - n_a * (n_a + 1) / 2.0
    dev_obs = abs(u_obs - mu)
    total = 0
    as_extreme_two = 0
    le = 0
    ge = 0
    for combo in itertools.combinations(range(n), n_a):
        u = sum(ranks[i] for i in combo) - n_a * (n_a + 1) / 2.0
        total += 1
        if abs(u - mu) >= dev_obs - 1e-12:
            as_extreme_two += 1
        if u <= u_obs + 1e-12:
            le += 1
        if u >= u_obs - 1e-12:
            ge += 1
    p_one = min(le, ge) / total
    return {
        "U": u_obs,
        "p_two_sided": as_extreme_two / total,
        "p_one_sided": p_one,
    }


def kruskal_wallis(groups: Sequence[Sequence[float]]) -> KruskalWallisResult:
    """Kruskal-Wallis H over k >= 2 independent groups, tie-corrected.

    H = 12 / (N(N+1)) * sum(R_i^2 / n_i) - 3(N+1) over pooled mid-ranks,
    divided by C = 1 - sum(t^3 - t) / (N^3 - N). All values identical is
    reported as H = 0, p = 1. p comes from the chi-square survival
    function with df = k - 1.
    """
    if len(groups) < 2:
        raise DegenerateInput("need at least two groups")
    sizes = tuple(len(g) for g in groups)
    if any(s == 0 for s in sizes):
        raise EmptyGroup("every group must be non-empty")
    n = sum(sizes)
    if n < 3:
        raise DegenerateInput(f"need N >= 3 pooled values, got {n}")
    pooled: list[float] = [v for g in groups for v in g]
    ranks = midranks(pooled)
    h = 0.0
    offset = 0
    for size in sizes:
        r = sum(ranks[offset:offset + size])
        h += r * r / size
        offset += size
    h = 12.0 / (n * (n + 1)) * h - 3.0 * (n + 1)
    ties = tie_term(pooled)
    correction = 1.0 - ties / (n**3 - n)
    df = len(groups) - 1
    if correction <= 0:
        # every pooled value identical
        return KruskalWallisResult(H=0.0, df=df, p=1.0,
                                   tie_correction_applied=True, group_sizes=sizes)
    h /= correction
    h = max(h, 0.0)
    return KruskalWallisResult(
        H=h,
        df=df,
        p=chi_square_sf(h, df),
        tie_correction_applied=ties > 0,
        group_sizes=sizes,
    )


def compare_rating_sets(
    a_novelty: Sequence[float],
    a_usefulness: Sequence[float],
    b_novelty: Sequence[float],
    b_usefulness: Sequence[float],
) -> list[ComparisonReport]:
    """Mann-Whitney reports for two rated opportunity sets, one per metric."""
    if len(a_novelty) == 0 or len(b_novelty) == 0:
        raise EmptySet("both rating sets must be non-empty")
    reports = []
    for metric, a, b in (
        ("novelty", a_novelty, b_novelty),
        ("usefulness", a_usefulness, b_usefulness),
    ):
        r = mann_whitney(a, b)
        reports.append(
            ComparisonReport(
                test="mann_whitney",
                metric=metric,
                group_sizes=(r.n_a, r.n_b),
                statistic=r.U,
                p_value=r.p_two_sided,
                tie_correction_applied=r.tie_correction_applied,
                z=r.z,
                p_one_sided=r.p_one_sided,
            )
        )
    return reports


def compare_three_groups(
    groups: Sequence[Sequence[float]], metric: str
) -> ComparisonReport:
    """Kruskal-Wallis report for three (or more) unmatched rating groups."""
    r = kruskal_wallis(groups)
    return ComparisonReport(
        test="kruskal_wallis",
        metric=metric,
        group_sizes=r.group_sizes,
        statistic=r.H,
        p_value=r.p,
        tie_correction_applied=r.tie_correction_applied,
        df=r.df,
    )
