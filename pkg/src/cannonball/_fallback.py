"""Numpy implementations of the kernels in _kernels.pyx (same signatures)."""
import numpy as np

NATIVE_MAX_N = 3_000_000

_TWO_PI = 2.0 * np.pi
_TWO_M53 = 2.0**-53


def sequence_block(lo, hi):
    if lo < 0 or hi - 1 > NATIVE_MAX_N:
        raise ValueError(f"native range is [0, {NATIVE_MAX_N}]")
    n = np.arange(lo, max(hi, lo), dtype=np.int64)
    t = n * (n + 1) // 2
    u = 2 * n + 1
    P = np.where(t % 3 == 0, (t // 3) * u, t * (u // 3))
    r = np.sqrt(P.astype(np.float64)).astype(np.int64)
    # float sqrt is within one unit of the true root for P < 2^63
    for _ in range(2):
        r -= r * r > P
        r += (r + 1) * (r + 1) <= P
    a = np.minimum(P - r * r, (r + 1) * (r + 1) - P)
    return P, r, a


def divisor_sieve(a):
    a = np.asarray(a, dtype=np.int64)
    x = len(a) - 1
    b = np.zeros(x + 1, dtype=np.int64)
    for d in range(1, x + 1):
        ad = a[d]
        if ad:
            b[d::d] += ad
    return b


def exp_sums(u, ms):
    u = np.asarray(u, dtype=np.uint64)
    out = np.empty(len(ms), dtype=np.complex128)
    for j, m in enumerate(ms):
        turns = ((u * np.uint64(m)) >> np.uint64(11)).astype(np.float64) * _TWO_M53
        ang = _TWO_PI * turns
        out[j] = complex(np.cos(ang).sum(), np.sin(ang).sum())
    return out


def chi_weighted_sum(a, n0, cre, cim):
    a = np.asarray(a, dtype=np.int64)
    q = len(cre)
    res = (n0 + np.arange(len(a), dtype=np.int64)) % q
    w = a.astype(np.float64)
    return complex((w * np.asarray(cre)[res]).sum(), (w * np.asarray(cim)[res]).sum())


def power_sum(v, n0, s):
    v = np.asarray(v, dtype=np.float64)
    n = n0 + np.arange(len(v), dtype=np.float64)
    return float((v * n ** (-s)).sum())
