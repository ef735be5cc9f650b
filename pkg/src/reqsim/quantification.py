"""Z-score quantification of VM capacities into allocation percentages.

Given one capacity figure per VM (load or storage), standardize them,
push each z-value through the standard normal CDF to get a percentage,
and apportion a request count across VMs proportionally to those
percentages.

Two CDF input modes exist. ``paper_compat`` truncates each z-value
toward zero at two decimals before applying the CDF, matching the
published worked example of the method digit for digit. ``exact`` feeds
the full-precision z-value through and is the default for new runs.
The two modes never differ by more than half a percentage point.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from enum import Enum

from .errors import ReqsimError

_SQRT2 = math.sqrt(2.0)


class QuantifyMode(str, Enum):
    EXACT = "exact"
    PAPER_COMPAT = "paper_compat"


@dataclass(frozen=True)
class QuantificationResult:
    """Everything the quantification panel displays for one capacity list."""

    capacities: tuple[float, ...]
    mean: float
    stddev: float
    z_values: tuple[float, ...]
    percentages: tuple[float, ...]
    total_percentage: float
    mode: QuantifyMode


def zscores(capacities: list[float] | tuple[float, ...]) -> tuple[float, float, list[float]]:
    """Standardize capacities: returns (mean, sample stddev, z-values).

    The standard deviation uses the n-1 denominator. When it is zero
    (a single capacity, or all equal) every z-value is 0, which makes
    the downstream percentages uniform.
    """
    if not capacities:
        raise ReqsimError("NO_CAPACITIES", "at least one capacity is required")
    mu = statistics.fmean(capacities)
    if len(capacities) < 2:
        sigma = 0.0
    else:
        sigma = statistics.stdev(capacities)
    if sigma == 0.0:
        z = [0.0] * len(capacities)
    else:
        z = [(x - mu) / sigma for x in capacities]
    return mu, sigma, z


def normal_cdf(z: float) -> float:
    """Standard normal CDF via the error function; accurate to machine precision."""
    return 0.5 * (1.0 + math.erf(z / _SQRT2))


def _truncate_2dp(z: float) -> float:
    """Truncate toward zero at two decimal places (1.16189.. -> 1.16)."""
    return math.trunc(z * 100.0) / 100.0


def quantify(
    capacities: list[float] | tuple[float, ...],
    mode: QuantifyMode | str = QuantifyMode.EXACT,
) -> QuantificationResult:
    """Convert capacities into per-VM percentages and their total."""
    mode = QuantifyMode(mode)
    mu, sigma, z = zscores(capacities)
    if mode is QuantifyMode.PAPER_COMPAT:
        cdf_inputs = [_truncate_2dp(zi) for zi in z]
    else:
        cdf_inputs = z
    percentages = [normal_cdf(zi) * 100.0 for zi in cdf_inputs]
    return QuantificationResult(
        capacities=tuple(float(x) for x in capacities),
        mean=mu,
        stddev=sigma,
        z_values=tuple(z),
        percentages=tuple(percentages),
        total_percentage=sum(percentages),
        mode=mode,
    )


def apportion(percentages: list[float] | tuple[float, ...], n_requests: int) -> list[int]:
    """Split ``n_requests`` across positions proportionally to ``percentages``.

    Largest-remainder allocation: floor every quota, then hand the
    leftover units to the largest fractional parts (ties to the lower
    index). The counts always sum to ``n_requests`` and each count is
    within one unit of its real quota.
    """
    if n_requests < 0:
        raise ReqsimError("ZERO_WEIGHT", "request count must be non-negative")
    total = sum(percentages)
    if not percentages or total <= 0:
        raise ReqsimError("ZERO_WEIGHT", "percentages must sum to a positive value")
    quotas = [p / total * n_requests for p in percentages]
    counts = [math.floor(q) for q in quotas]
    remainder = n_requests - sum(counts)
    by_fraction = sorted(range(len(quotas)), key=lambda i: (counts[i] - quotas[i], i))
    for i in by_fraction[:remainder]:
        counts[i] += 1
    return counts
