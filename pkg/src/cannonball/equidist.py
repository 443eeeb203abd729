"""Fractional parts of sqrt(P_n), discrepancy, and exponential-sum bounds.

Discrepancies are stored normalized (a fraction of the point count). The
Erdős–Turán comparison is made in the unnormalized count form, where the
bound reads N/(K+1) + 3 sum_{m <= K} |S_m|/m; both forms are reported.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels, parallel
from .exact import frac_u64_values

SATISFY_SLACK = 1e-9


@dataclass(frozen=True)
class UnitSample:
    """Points in [0, 1), each also held as a 64-bit fixed-point integer."""

    fixed: np.ndarray = field(repr=False)  # uint64, point * 2^64
    start: int | None = None
    q: int | None = None
    b: int | None = None

    def __post_init__(self):
        if len(self.fixed) < 1:
            raise ValueError("a sample needs at least one point")

    @property
    def count(self) -> int:
        return len(self.fixed)

    @property
    def points(self) -> np.ndarray:
        # keep 53 bits so no point rounds up to 1.0
        return (self.fixed >> np.uint64(11)).astype(np.float64) * 2.0**-53

    @classmethod
    def from_points(cls, points) -> "UnitSample":
        pts = [float(p) for p in points]
        if any(not 0.0 <= p < 1.0 for p in pts):
            raise ValueError("points must lie in [0, 1)")
        fixed = [min(round(p * 2.0**64), 2**64 - 1) for p in pts]
        return cls(np.array(fixed, dtype=np.uint64))


def family_indices(start: int, q: int, b: int, count: int) -> np.ndarray:
    """The first ``count`` integers n >= start with n = b (mod q)."""
    if q < 1 or count < 1 or start < 1:
        raise ValueError("need q >= 1, count >= 1, start >= 1")
    first = start + (b - start) % q
    return first + q * np.arange(count, dtype=np.int64)


def frac_family(start: int, q: int, b: int, count: int) -> UnitSample:
    idx = family_indices(start, q, b, count)
    return UnitSample(frac_u64_values(idx.tolist()), start, q, b % q)


def star_discrepancy(sample: UnitSample) -> float:
    x = np.sort(sample.points)
    N = len(x)
    i = np.arange(1, N + 1, dtype=np.float64)
    return float(max(np.max(i / N - x), np.max(x - (i - 1) / N)))


def extreme_discrepancy(sample: UnitSample) -> float:
    """sup over [alpha, beta) in [0, 1) of |count/N - (beta - alpha)|.

    For sorted points this is 1/N + max(i/N - x_i) - min(i/N - x_i).
    """
    x = np.sort(sample.points)
    N = len(x)
    d = np.arange(1, N + 1, dtype=np.float64) / N - x
    return float(1.0 / N + d.max() - d.min())


def exp_sums(sample: UnitSample, ms) -> np.ndarray:
    ms = np.ascontiguousarray(np.asarray(ms, dtype=np.int64))
    if (ms < 1).any():
        raise ValueError("frequencies m must be >= 1")
    fixed = np.ascontiguousarray(sample.fixed)
    parts = parallel.pmap(
        lambda c: kernels.exp_sums(fixed, ms[c[0]:c[1]]), parallel.chunks(0, len(ms), 64)
    )
    return np.concatenate(parts)


def exp_sum(sample: UnitSample, m: int) -> complex:
    """sum_i e(m x_i); e(m sqrt(P_n)) = e(m {sqrt(P_n)}) for integer m."""
    return complex(exp_sums(sample, [m])[0])


@dataclass(frozen=True)
class BoundComparison:
    measured: float
    bound: float
    params: dict
    satisfied: bool
    measured_normalized: float | None = None
    bound_normalized: float | None = None


def _compare(measured, bound, params, **norm) -> BoundComparison:
    return BoundComparison(measured, bound, params, measured <= bound + SATISFY_SLACK, **norm)


def erdos_turan_bound(sample: UnitSample, K: int) -> BoundComparison:
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    N = sample.count
    sums = exp_sums(sample, np.arange(1, K + 1))
    weighted = parallel.pairwise_sum((np.abs(sums) / np.arange(1, K + 1)).tolist())
    bound = N / (K + 1) + 3.0 * weighted
    D = extreme_discrepancy(sample)
    return _compare(
        N * D, bound, {"K": K, "N": N},
        measured_normalized=D, bound_normalized=bound / N,
    )


def pyramid_sqrt_derivatives(t: float) -> tuple[float, float, float]:
    """h(t) = sqrt(P(t)) with P(t) = (2t^3 + 3t^2 + t)/6, and h', h''."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    P = (2 * t**3 + 3 * t**2 + t) / 6
    dP = t * t + t + 1.0 / 6.0
    d2P = 2 * t + 1
    h = math.sqrt(P)
    return h, dP / (2 * h), (2 * d2P * P - dP * dP) / (4 * P * h)


def kn_bound(block_start: int, block_end: int, q: int, m: int) -> BoundComparison:
    """Second-derivative bound for |sum e(m sqrt(P_n))| over n = start, start+q, ... <= end."""
    if not block_end > block_start >= 1:
        raise ValueError("need block_end > block_start >= 1")
    if q < 1 or m < 1:
        raise ValueError("need q >= 1 and m >= 1")
    count = (block_end - block_start) // q + 1
    sample = frac_family(block_start, q, block_start, count)
    measured = abs(exp_sum(sample, m))
    _, h1_start, _ = pyramid_sqrt_derivatives(block_start)
    _, h1_end, h2_end = pyramid_sqrt_derivatives(block_end)
    if h2_end <= 0:
        raise ArithmeticError("h'' must be positive for t >= 1")
    bound = (m * abs(h1_end - h1_start) + 2) * (4 * (m * h2_end) ** -0.5 + 3)
    return _compare(measured, bound, {"start": block_start, "end": block_end, "q": q, "m": m})
