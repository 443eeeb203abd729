"""Exact arithmetic for P_n, a_n, b_n, c_n and fixed-point fractional parts.

P_n = n(n+1)(2n+1)/6 is the n-th square pyramidal number and a_n is its
distance to the nearest perfect square. Everything here is exact integer
arithmetic except the explicitly real-valued residual c_n.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import config, kernels, parallel

SQRT3 = math.sqrt(3.0)  # correctly rounded; shared by every main-term constant


@dataclass(frozen=True)
class SequenceRecord:
    n: int
    P: int
    root: int
    a: int


@dataclass(frozen=True)
class FixedPointFraction:
    """value / 2**scale_bits, a lower approximation of a number in [0, 1)."""

    value: int
    scale_bits: int
    error_bound: float

    def __float__(self):
        return self.value / (1 << self.scale_bits)

    def to_u64(self) -> int:
        """The fraction truncated to 64 bits, as an integer in [0, 2^64)."""
        if self.scale_bits >= 64:
            return self.value >> (self.scale_bits - 64)
        return self.value << (64 - self.scale_bits)


def pyramidal(n: int) -> int:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    t = n * (n + 1) // 2
    if t % 3 == 0:
        return (t // 3) * (2 * n + 1)
    return t * ((2 * n + 1) // 3)


def isqrt(N: int) -> int:
    if N < 0:
        raise ValueError(f"isqrt of negative number {N}")
    return math.isqrt(N)


def nearest_square_distance(N: int) -> tuple[int, int]:
    """Return (|N - y^2|, y) for the square y^2 closest to N."""
    r = isqrt(N)
    below = N - r * r
    above = (r + 1) * (r + 1) - N
    # r^2 + r + 1/2 is never an integer, so the two distances never tie
    assert below != above
    if below < above:
        return below, r
    return above, r + 1


def a(n: int) -> int:
    return nearest_square_distance(pyramidal(n))[0]


def _record(n: int, P: int) -> SequenceRecord:
    dist, _ = nearest_square_distance(P)
    return SequenceRecord(n, P, isqrt(P), dist)


def sequence_range(lo: int, hi: int, incremental: bool = True):
    """Records for lo <= n <= hi in increasing n.

    With ``incremental`` the pyramidal numbers are advanced by
    P_{n+1} = P_n + (n+1)^2; otherwise each one is computed from the closed form.
    """
    if lo < 0:
        raise ValueError(f"lo must be nonnegative, got {lo}")
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")

    def gen():
        if incremental:
            P = pyramidal(lo)
            for n in range(lo, hi + 1):
                if n > lo:
                    P += n * n
                yield _record(n, P)
        else:
            for n in range(lo, hi + 1):
                yield _record(n, pyramidal(n))

    return gen()


def _python_block(lo: int, hi: int) -> np.ndarray:
    return np.array([a(n) for n in range(lo, hi)], dtype=object)


def sequence_arrays(lo: int, hi: int):
    """(P, root, a) as arrays for lo <= n <= hi.

    int64 arrays inside the native range, object arrays of Python ints beyond it.
    """
    if lo < 0 or lo > hi:
        raise ValueError(f"invalid range [{lo}, {hi}]")
    config.check_budget(24 * (hi - lo + 1), f"sequence arrays for [{lo}, {hi}]")
    if hi <= kernels.NATIVE_MAX_N:
        parts = parallel.pmap(lambda c: kernels.sequence_block(*c), parallel.chunks(lo, hi + 1))
        return tuple(np.concatenate([p[k] for p in parts]) for k in range(3))
    recs = list(sequence_range(lo, hi, incremental=True))
    return (
        np.array([r.P for r in recs], dtype=object),
        np.array([r.root for r in recs], dtype=object),
        np.array([r.a for r in recs], dtype=object),
    )


class _Store:
    """Grow-only cache of a_0..a_x and b_0..b_x shared across queries."""

    def __init__(self):
        self.lock = threading.Lock()
        self.a = np.zeros(0, dtype=np.int64)
        self.b = np.zeros(0, dtype=np.int64)

    def clear(self):
        with self.lock:
            self.a = np.zeros(0, dtype=np.int64)
            self.b = np.zeros(0, dtype=np.int64)


_store = _Store()


def clear_cache():
    _store.clear()


def a_array(x: int) -> np.ndarray:
    """Read-only array of a_0, ..., a_x."""
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    config.check_budget(8 * (x + 1), f"a_n table up to {x}")
    with _store.lock:
        have = len(_store.a)
        if have <= x:
            if x <= kernels.NATIVE_MAX_N:
                parts = parallel.pmap(
                    lambda c: kernels.sequence_block(*c)[2], parallel.chunks(have, x + 1)
                )
                fresh = np.concatenate(parts)
                grown = np.concatenate([_store.a, fresh])
            else:
                fresh = _python_block(have, x + 1)
                grown = np.concatenate([_store.a.astype(object), fresh])
            grown.flags.writeable = False
            _store.a = grown
        return _store.a[: x + 1]


def exact_sum(values) -> int:
    """Exact sum of an int64 or object array, chunked so int64 never overflows."""
    if values.dtype == object:
        return sum(int(v) for v in values)
    if len(values) == 0:
        return 0
    biggest = max(int(values.max()), -int(values.min()), 1)
    step = max(1, min(1 << 16, (1 << 62) // biggest))
    total = 0
    for start in range(0, len(values), step):
        total += int(values[start:start + step].sum())
    return total


def residual_c(n: int) -> float:
    """c_n = a_n - n^{3/2}/(2 sqrt 3), correctly rounded to a float."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    # n^{3/2}/(2 sqrt 3) = sqrt(n^3/12); the extra bits cover cancellation
    # against a_n, since |a_n^2 - n^3/12| >= 1/12 unless it is zero
    bits = 128 + 2 * n.bit_length()
    scaled = math.isqrt((n**3 << (2 * bits)) // 12)
    return float(Fraction((a(n) << bits) - scaled, 1 << bits))


def residual_c_values(lo: int, hi: int) -> np.ndarray:
    """c_n for lo <= n <= hi in float64.

    Absolute error per entry is at most a few ulps of n^{3/2}; ``residual_c``
    is the correctly rounded scalar.
    """
    if lo < 1 or lo > hi:
        raise ValueError(f"invalid range [{lo}, {hi}]")
    av = a_array(hi)[lo:].astype(np.float64)
    n = np.arange(lo, hi + 1, dtype=np.float64)
    return av - n * np.sqrt(n / 12.0)


def b_sieve(x: int) -> np.ndarray:
    """b_n = sum_{d | n} a_d for 0 <= n <= x (entry 0 is 0 and unused)."""
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    config.check_budget(16 * (x + 1), f"divisor sieve up to {x}")
    with _store.lock:
        if len(_store.b) > x:
            return _store.b[: x + 1]
    av = a_array(x)
    if av.dtype != object and exact_sum(av) < 2**62:
        b = kernels.divisor_sieve(np.ascontiguousarray(av))
    else:
        b = np.zeros(x + 1, dtype=object)
        for d in range(1, x + 1):
            ad = int(av[d])
            if ad:
                b[d::d] += ad
    b.flags.writeable = False
    with _store.lock:
        if len(_store.b) <= x:
            _store.b = b
    return b


def frac_sqrt_pyramidal(n: int, scale_bits: int = 96) -> FixedPointFraction:
    """Fractional part of sqrt(P_n) as a scale_bits fixed-point number."""
    if not 16 <= scale_bits <= 256:
        raise ValueError(f"scale_bits must lie in [16, 256], got {scale_bits}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    P = pyramidal(n)
    scaled = math.isqrt(P << (2 * scale_bits))
    value = scaled - (math.isqrt(P) << scale_bits)
    return FixedPointFraction(value, scale_bits, 2.0**-scale_bits)


def frac_u64_values(indices, scale_bits: int | None = None) -> np.ndarray:
    """64-bit truncations of {sqrt(P_n)} for each n, as a uint64 array."""
    if scale_bits is None:
        scale_bits = config.current().precision_bits
    out = [frac_sqrt_pyramidal(int(n), scale_bits).to_u64() for n in indices]
    return np.array(out, dtype=np.uint64)
