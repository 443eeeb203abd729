import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cannonball.averages import (
    APQuery, average_a, average_a_ap, main_term, partition_check, residual_table, sum_a, sum_a_ap,
)
from cannonball.exact import SQRT3, a

FIRST_24 = [0, 1, 2, 5, 6, 9, 4, 8, 4, 15, 22, 25, 22, 9, 15, 25, 21, 7, 30, 46, 53, 49, 32, 0]


def test_first_terms_frozen():
    assert [a(n) for n in range(1, 25)] == FIRST_24


def test_frozen_sums():
    assert sum_a(24) == sum(FIRST_24)
    assert sum_a(100) == 11885
    assert sum_a(1000) == 3685625
    assert sum_a_ap(APQuery(1, 3, 1000)) == 1131846


@given(st.integers(1, 400), st.integers(1, 30), st.integers(-50, 50))
@settings(max_examples=60)
def test_ap_sum_matches_brute(x, q, b):
    brute = sum(a(n) for n in range(1, x + 1) if (n - b) % q == 0)
    assert sum_a_ap(APQuery(b, q, x)) == brute


def test_query_normalizes_residue():
    assert APQuery(-1, 5, 10).b == 4
    assert APQuery(12, 5, 10) == APQuery(2, 5, 10)


@pytest.mark.parametrize("b, q, x", [(0, 0, 10), (0, -3, 10), (0, 1, 0)])
def test_query_validation(b, q, x):
    with pytest.raises(ValueError):
        APQuery(b, q, x)


def test_average_divides_by_x():
    r = average_a_ap(APQuery(1, 3, 100))
    assert r.average == r.raw_sum / 100
    assert r.count == 34
    assert r.main_term == pytest.approx(100**1.5 / (15 * SQRT3), rel=1e-15)
    assert r.residual == pytest.approx(r.average - r.main_term)


def test_empty_progression():
    r = average_a_ap(APQuery(0, 50, 10))
    assert (r.raw_sum, r.count, r.average) == (0, 0, 0.0)


def test_main_term_value():
    assert main_term(100) == pytest.approx(1000 / (5 * math.sqrt(3)))
    assert main_term(100, 4) == pytest.approx(main_term(100) / 4)


@pytest.mark.parametrize("q", [1, 2, 7, 20])
def test_partition(q):
    ok, sums = partition_check(q, 1000)
    assert ok and len(sums) == q and sum(sums) == sum_a(1000)


def test_ratio_tends_to_one():
    devs = [abs(average_a(x).ratio - 1) for x in (10**3, 10**4, 10**5)]
    assert devs[2] < devs[0]
    assert devs[2] < 0.01


def test_residual_table_requires_increasing():
    with pytest.raises(ValueError):
        residual_table([100, 100, 1000])
    rows = residual_table([100, 1000])
    assert rows[0] == (100, abs(11885 - 100**2.5 / (5 * SQRT3)))


def test_row_fields():
    row = average_a(10).row()
    assert set(row) == {"x", "q", "b", "raw_sum", "average", "main_term", "residual", "ratio"}
