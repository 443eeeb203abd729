"""Sums and averages of a_n over [1, x] and over arithmetic progressions.

Note the normalization: A(b, q, x) divides the progression sum by x, not by
the number of indices in the progression, so its main term carries 1/q.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exact import SQRT3, a_array, exact_sum


@dataclass(frozen=True)
class APQuery:
    b: int
    q: int
    x: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"modulus q must be >= 1, got {self.q}")
        if self.x < 1:
            raise ValueError(f"cutoff x must be >= 1, got {self.x}")
        object.__setattr__(self, "b", self.b % self.q)


@dataclass(frozen=True)
class AverageReport:
    x: int
    q: int
    b: int
    raw_sum: int
    average: float
    main_term: float
    residual: float
    count: int

    @property
    def ratio(self) -> float:
        return self.average / self.main_term

    def row(self) -> dict:
        return {
            "x": self.x,
            "q": self.q,
            "b": self.b,
            "raw_sum": self.raw_sum,
            "average": self.average,
            "main_term": self.main_term,
            "residual": self.residual,
            "ratio": self.ratio,
        }


def _first_index(b: int, q: int) -> int:
    return b if b >= 1 else q


def sum_a(x: int) -> int:
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    return exact_sum(a_array(x)[1:])


def sum_a_ap(query: APQuery) -> int:
    first = _first_index(query.b, query.q)
    if first > query.x:
        return 0
    return exact_sum(a_array(query.x)[first::query.q])


def _count(query: APQuery) -> int:
    first = _first_index(query.b, query.q)
    return 0 if first > query.x else (query.x - first) // query.q + 1


def main_term(x: int, q: int = 1) -> float:
    """x^{3/2} / (5 q sqrt 3), the predicted value of A(b, q, x)."""
    return x**1.5 / (5 * q * SQRT3)


def _report(query: APQuery, raw: int) -> AverageReport:
    average = raw / query.x
    mt = main_term(query.x, query.q)
    return AverageReport(
        query.x, query.q, query.b, raw, average, mt, average - mt, _count(query)
    )


def average_a(x: int) -> AverageReport:
    return _report(APQuery(0, 1, x), sum_a(x))


def average_a_ap(query: APQuery) -> AverageReport:
    return _report(query, sum_a_ap(query))


def partition_check(q: int, x: int) -> tuple[bool, list[int]]:
    """Check that the q residue-class sums add up to sum_a(x); return them too."""
    if q < 1 or x < 1:
        raise ValueError("q and x must be >= 1")
    sums = [sum_a_ap(APQuery(b, q, x)) for b in range(q)]
    return sum(sums) == sum_a(x), sums


def residual_table(x_values, b: int = 0, q: int = 1) -> list[tuple[int, float]]:
    """(x, |M(b,q,x) - x^{5/2}/(5 q sqrt 3)|) for each x, where M = x A(b,q,x)."""
    xs = list(x_values)
    if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
        raise ValueError("x_values must be strictly increasing")
    out = []
    for x in xs:
        raw = sum_a_ap(APQuery(b, q, x))
        out.append((x, abs(raw - x**2.5 / (5 * q * SQRT3))))
    return out
