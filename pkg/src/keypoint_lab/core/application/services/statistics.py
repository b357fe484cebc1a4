"""Binomial success-rate statistics for evaluation reports."""

from __future__ import annotations

import math

from scipy.stats import norm


def wilson_interval(successes: int, episodes: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion; (0, 1) when there are no episodes."""
    if episodes == 0:
        return 0.0, 1.0
    z = float(norm.ppf(0.5 + confidence / 2.0))
    p = successes / episodes
    denom = 1.0 + z * z / episodes
    center = (p + z * z / (2.0 * episodes)) / denom
    half = z * math.sqrt(p * (1.0 - p) / episodes + z * z / (4.0 * episodes * episodes)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def two_proportion_p_value(s1: int, n1: int, s2: int, n2: int) -> float:
    """One-sided p-value for H1: rate 1 > rate 2 under the pooled z-test."""
    if n1 == 0 or n2 == 0:
        return 1.0
    pooled = (s1 + s2) / (n1 + n2)
    variance = pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2)
    diff = s1 / n1 - s2 / n2
    if variance == 0.0:
        return 0.0 if diff > 0.0 else 1.0
    return float(norm.sf(diff / math.sqrt(variance)))


def significantly_better(s1: int, n1: int, s2: int, n2: int, alpha: float = 0.05) -> bool:
    """Rate 1 beats rate 2: disjoint Wilson intervals or one-sided p < alpha."""
    low1, _ = wilson_interval(s1, n1)
    _, high2 = wilson_interval(s2, n2)
    if n1 and n2 and low1 > high2:
        return True
    return two_proportion_p_value(s1, n1, s2, n2) < alpha
