"""Point estimates with standard errors and 95% confidence intervals."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgumentError

Z_95 = 1.959963984540054


@dataclass(frozen=True)
class MetricEstimate:
    value: float
    stderr: float
    n_trials: int
    ci95_low: float
    ci95_high: float


def confidence_interval(successes: int, n: int) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion at 95%.

    Chosen over the normal interval because it stays inside [0, 1] and
    behaves at proportions near 0 and 1.
    """
    if n < 1:
        raise InvalidArgumentError("n must be >= 1")
    if not 0 <= successes <= n:
        raise InvalidArgumentError("successes must be in [0, n]")
    p = successes / n
    z2 = Z_95 * Z_95
    denom = 1.0 + z2 / n
    center = (p + z2 / (2.0 * n)) / denom
    half = (Z_95 / denom) * math.sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n))
    return (max(0.0, center - half), min(1.0, center + half))


def proportion_estimate(successes: int, n: int) -> MetricEstimate:
    if n < 1:
        raise InvalidArgumentError("n must be >= 1")
    p = successes / n
    stderr = math.sqrt(p * (1.0 - p) / n)
    low, high = confidence_interval(successes, n)
    return MetricEstimate(value=p, stderr=stderr, n_trials=n,
                          ci95_low=low, ci95_high=high)


def mean_estimate(total: float, total_sq: float, n: int) -> MetricEstimate:
    """Normal-approximation estimate of a mean from running sums."""
    if n < 1:
        raise InvalidArgumentError("n must be >= 1")
    mean = total / n
    var = max(0.0, total_sq / n - mean * mean)
    stderr = math.sqrt(var / n)
    return MetricEstimate(value=mean, stderr=stderr, n_trials=n,
                          ci95_low=mean - Z_95 * stderr,
                          ci95_high=mean + Z_95 * stderr)
