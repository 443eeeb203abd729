import math
from decimal import Decimal, getcontext

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cannonball import config, exact, kernels
from cannonball.exact import (
    a, a_array, b_sieve, frac_sqrt_pyramidal, isqrt, nearest_square_distance, pyramidal,
    residual_c, residual_c_values, sequence_arrays, sequence_range,
)


def high_precision_sqrt(n, digits=60):
    getcontext().prec = digits
    return Decimal(n).sqrt()


def brute_nearest(N):
    best = None
    y = 0
    while y * y <= 2 * N + 2:
        d = abs(N - y * y)
        if best is None or d < best[0]:
            best = (d, y)
        y += 1
    return best


def divisor_sums_oracle(x):
    av = [a(n) for n in range(x + 1)]
    out = [0] * (x + 1)
    for n in range(1, x + 1):
        for d in range(1, math.isqrt(n) + 1):
            if n % d == 0:
                out[n] += av[d]
                if d != n // d:
                    out[n] += av[n // d]
    return out


@pytest.mark.parametrize("n, expected", [(0, 0), (4, 30), (24, 4900)])
def test_pyramidal_examples(n, expected):
    assert pyramidal(n) == expected


def test_pyramidal_matches_sum_of_squares():
    total = 0
    for n in range(0, 500):
        total += n * n
        assert pyramidal(n) == total


@given(st.integers(min_value=0, max_value=10**30))
def test_pyramidal_closed_form(n):
    num = 2 * n**3 + 3 * n**2 + n
    assert num % 6 == 0
    assert pyramidal(n) == num // 6


@pytest.mark.parametrize("N, r", [(0, 0), (4899, 69), (4900, 70)])
def test_isqrt_examples(N, r):
    assert isqrt(N) == r


@given(st.integers(min_value=0, max_value=2**300))
def test_isqrt_brackets(N):
    r = isqrt(N)
    assert r * r <= N < (r + 1) ** 2


def test_isqrt_rejects_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


@pytest.mark.parametrize("N, expected", [(5, (1, 2)), (14, (2, 4)), (4900, (0, 70))])
def test_nearest_square_examples(N, expected):
    assert nearest_square_distance(N) == expected


def test_nearest_square_brute_force():
    for N in range(0, 3000):
        assert nearest_square_distance(N) == brute_nearest(N)


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 1), (24, 0)])
def test_a_examples(n, expected):
    assert a(n) == expected


def test_sequence_range_examples():
    assert [r.a for r in sequence_range(0, 2)] == [0, 0, 1]
    (rec,) = list(sequence_range(24, 24))
    assert (rec.n, rec.P, rec.root, rec.a) == (24, 4900, 70, 0)
    with pytest.raises(ValueError):
        sequence_range(5, 4)


def test_sequence_record_invariants():
    for rec in sequence_range(0, 3000):
        assert rec.P == (2 * rec.n**3 + 3 * rec.n**2 + rec.n) // 6
        assert rec.root**2 <= rec.P < (rec.root + 1) ** 2
        below, above = rec.P - rec.root**2, (rec.root + 1) ** 2 - rec.P
        assert below != above
        assert rec.a == min(below, above)
        assert rec.a <= rec.root and rec.a <= 2 * rec.root + 1


def test_incremental_and_closed_paths_agree():
    inc = list(sequence_range(900, 4000, incremental=True))
    closed = list(sequence_range(900, 4000, incremental=False))
    assert inc == closed


def test_bulk_arrays_match_scalar_path():
    P, root, av = sequence_arrays(0, 5000)
    for n in range(0, 5001, 7):
        rec = next(sequence_range(n, n))
        assert (int(P[n]), int(root[n]), int(av[n])) == (rec.P, rec.root, rec.a)


@pytest.mark.slow
def test_million_range_properties():
    X = 10**6
    P, root, av = sequence_arrays(0, X)
    n = np.arange(X + 1, dtype=np.int64)
    assert np.array_equal(P, np.cumsum(n * n))
    below = P - root * root
    above = (root + 1) * (root + 1) - P
    assert (below >= 0).all() and (above > 0).all()
    assert not (below == above).any()
    assert (av <= root).all()
    assert np.nonzero(av == 0)[0].tolist() == [0, 1, 24]


def test_python_path_beyond_native_range(monkeypatch):
    monkeypatch.setattr(kernels, "NATIVE_MAX_N", 50)
    exact.clear_cache()
    try:
        av = a_array(120)
        assert av.dtype == object
        assert [int(v) for v in av] == [a(n) for n in range(121)]
        P, root, av2 = sequence_arrays(40, 120)
        assert [int(v) for v in av2] == [a(n) for n in range(40, 121)]
        assert exact.b_sieve(120).tolist() == divisor_sums_oracle(120)
    finally:
        exact.clear_cache()


def test_large_index_records_are_exact():
    n = 2**42 + 12345
    rec = next(sequence_range(n, n))
    assert rec.P == n * (n + 1) * (2 * n + 1) // 6
    assert rec.P > 2**124
    assert rec.root**2 <= rec.P < (rec.root + 1) ** 2


def residual_oracle(n):
    getcontext().prec = 80
    t = Decimal(n) ** 3
    return Decimal(a(n)) - t.sqrt() / (2 * Decimal(3).sqrt())


@pytest.mark.parametrize("n, expected", [
    (1, -0.2886751345948129),
    (24, -33.94112549695428),
    (2, 0.1835034190722739),
])
def test_residual_c_examples(n, expected):
    assert residual_c(n) == pytest.approx(expected, rel=1e-15)


@given(st.integers(min_value=1, max_value=10**12))
@settings(max_examples=200)
def test_residual_c_fifteen_digits(n):
    ref = residual_oracle(n)
    getcontext().prec = 80
    got = Decimal(residual_c(n))
    assert abs(got - ref) <= abs(ref) * Decimal("1e-15")


def test_residual_c_exact_cancellation_case():
    # n = 12: n^3/12 = 144, so the subtracted term is exactly 12
    assert residual_c(12) == a(12) - 12


def test_residual_c_block_within_float_bound():
    vals = residual_c_values(1, 3000)
    for n in range(1, 3001, 13):
        assert abs(vals[n - 1] - residual_c(n)) <= 8 * 2.0**-52 * n**1.5


def test_b_sieve_small_examples():
    assert b_sieve(1)[1:].tolist() == [0]
    b = b_sieve(6)
    assert b[4] == 6
    assert b[6] == a(1) + a(2) + a(3) + a(6)


def test_b_sieve_matches_divisor_enumeration():
    x = 10**4
    assert b_sieve(x).tolist() == divisor_sums_oracle(x)


def test_b_sieve_budget(budget):
    with budget(1024):
        with pytest.raises(config.ResourceError, match="1024"):
            b_sieve(10**4)


def test_frac_sqrt_examples():
    f24 = frac_sqrt_pyramidal(24)
    assert f24.value == 0 and float(f24) == 0.0
    for n, N in ((2, 5), (3, 14)):
        f = frac_sqrt_pyramidal(n)
        root = high_precision_sqrt(N)
        frac = root - int(root)
        rep = Decimal(f.value) / Decimal(2) ** 96
        assert 0 <= frac - rep < Decimal(2) ** -96
        assert f.error_bound <= 2.0 ** (1 - 96)
    assert float(frac_sqrt_pyramidal(2)) == pytest.approx(0.2360679774997897, abs=2e-16)
    assert float(frac_sqrt_pyramidal(3)) == pytest.approx(0.7416573867739413, abs=2e-16)


@pytest.mark.parametrize("bits", [15, 257, 0])
def test_frac_sqrt_bits_range(bits):
    with pytest.raises(ValueError):
        frac_sqrt_pyramidal(5, bits)


@given(st.integers(min_value=1, max_value=2**40), st.integers(min_value=16, max_value=224))
def test_frac_sqrt_precision_refines(n, bits):
    getcontext().prec = 120
    coarse = frac_sqrt_pyramidal(n, bits)
    fine = frac_sqrt_pyramidal(n, bits + 32)
    assert 0 <= coarse.value < 2**bits
    diff = abs(Decimal(fine.value) / Decimal(2) ** (bits + 32) - Decimal(coarse.value) / Decimal(2) ** bits)
    assert diff <= Decimal(2) ** (1 - bits)


def test_frac_u64_truncation_keeps_multiples_accurate():
    # m * {sqrt P_n} mod 1 stays within 2^-40 for m <= 2^20 after truncation to 64 bits
    getcontext().prec = 120
    for n in (10**6, 2**40 - 3):
        f = frac_sqrt_pyramidal(n, 200)
        u = frac_sqrt_pyramidal(n).to_u64()
        for m in (1, 977, 2**20):
            exact_turns = (Decimal(m * f.value) / Decimal(2) ** 200) % 1
            fixed_turns = Decimal((m * u) % 2**64) / Decimal(2) ** 64
            delta = abs(exact_turns - fixed_turns)
            assert min(delta, 1 - delta) < Decimal(2) ** -40
