"""Riemann zeta on the real axis, truncated Dirichlet series built from a_n,
b_n and c_n, pole/residue probes at s = 5/2, and the Cesàro-weighted sum of b_n.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels, parallel
from .characters import DirichletCharacter
from .exact import SQRT3, a_array, b_sieve, exact_sum, residual_c_values

POLE = 2.5
G_ABSCISSA = 29 / 12


def zeta_real(s: float, tol: float = 1e-12) -> float:
    """zeta(s) for real s > 1 by Euler–Maclaurin with one Bernoulli correction.

    N is chosen so the first omitted term, s(s+1)(s+2) N^{-s-3}/720, is below tol/2.
    """
    if s <= 1:
        raise ValueError(f"zeta_real needs s > 1, got {s}")
    if not 1e-15 <= tol <= 1e-3:
        raise ValueError(f"tol must lie in [1e-15, 1e-3], got {tol}")
    c = s * (s + 1) * (s + 2) / 720
    N = max(10, math.ceil((2 * c / tol) ** (1 / (s + 3))))
    head = math.fsum(n**-s for n in range(1, N))
    tail = N ** (1 - s) / (s - 1) + 0.5 * N**-s + s * N ** (-s - 1) / 12
    return head + tail


@functools.lru_cache(maxsize=None)
def cesaro_constant() -> float:
    """2 zeta(5/2) / (35 sqrt 3), about 0.0442576."""
    return 2 * zeta_real(2.5, 1e-12) / (35 * SQRT3)


@dataclass(frozen=True)
class PartialSeriesValue:
    series_id: str
    s: float
    N: int
    value: float | complex
    tail_note: str

    def row(self) -> dict:
        v = complex(self.value)
        return {"series_id": self.series_id, "s": self.s, "N": self.N, "re": v.real, "im": v.imag}


def _note_F(s):
    return "absolutely convergent" if s > POLE else "not absolutely convergent (s <= 5/2)"


def _note_G(s):
    return "convergent" if s > G_ABSCISSA else "divergent (s <= 29/12)"


def _dirichlet(values: np.ndarray, s: float, first: int = 1) -> float:
    """sum_i values[i] * (first + i)^{-s}, chunked with a fixed reduction tree."""
    values = np.ascontiguousarray(values, dtype=np.float64)

    def part(c):
        lo, hi = c
        return kernels.power_sum(values[lo:hi], first + lo, s)

    return parallel.pairwise_sum(parallel.pmap(part, parallel.chunks(0, len(values))))


def _check_N(N):
    if N < 1:
        raise ValueError(f"truncation N must be >= 1, got {N}")


def partial_F(s: float, N: int) -> PartialSeriesValue:
    _check_N(N)
    return PartialSeriesValue("F", s, N, _dirichlet(a_array(N)[1:], s), _note_F(s))


def partial_H(s: float, N: int) -> PartialSeriesValue:
    _check_N(N)
    return PartialSeriesValue("H", s, N, _dirichlet(b_sieve(N)[1:], s), _note_F(s))


def partial_G(s: float, N: int) -> PartialSeriesValue:
    _check_N(N)
    return PartialSeriesValue("G", s, N, _dirichlet(residual_c_values(1, N), s), _note_G(s))


def zeta_partial(s: float, N: int) -> PartialSeriesValue:
    """Plain partial sum sum_{n <= N} n^{-s}, with no tail correction."""
    _check_N(N)
    note = "convergent" if s > 1 else "divergent (s <= 1)"
    return PartialSeriesValue("zeta", s, N, _dirichlet(np.ones(N), s), note)


def F_via_G(s: float, N: int) -> float:
    """partial G plus zeta(s - 3/2)/(2 sqrt 3)."""
    if s <= POLE:
        raise ValueError(f"F_via_G needs s > 5/2 so that zeta(s - 3/2) converges, got {s}")
    return partial_G(s, N).value + zeta_real(s - 1.5, 1e-12) / (2 * SQRT3)


def partial_F_chi(chi: DirichletCharacter, s: float, N: int) -> PartialSeriesValue:
    _check_N(N)
    tab = chi.table()
    res = np.arange(1, N + 1) % chi.modulus
    av = a_array(N)[1:].astype(np.float64)
    re = _dirichlet(av * tab.real[res], s)
    im = _dirichlet(av * tab.imag[res], s)
    return PartialSeriesValue(f"F_chi[{chi.ident}]", s, N, complex(re, im), _note_F(s))


@dataclass(frozen=True)
class ResidueProbe:
    series_id: str
    s: float
    N: int
    product: float
    target: float
    tail_uncertainty: float

    def row(self) -> dict:
        return {"s": self.s, "N": self.N, "product": self.product, "target": self.target}


def residue_probe(s_values, N: int, series: str = "F") -> list[ResidueProbe]:
    """(s - 5/2) F(s), or (s - 5/2) F(s) zeta(s) for series "H", along s -> 5/2+.

    tail_uncertainty scales |G_N(s) - G_{N/2}(s)| by the same factor, as a
    proxy for the truncation error of G.
    """
    if series not in ("F", "H"):
        raise ValueError(f"series must be F or H, got {series!r}")
    s_values = list(s_values)
    if any(s <= POLE for s in s_values):
        raise ValueError("every probe point must satisfy s > 5/2")
    out = []
    for s in s_values:
        F = F_via_G(s, N)
        tail = abs(partial_G(s, N).value - partial_G(s, max(N // 2, 1)).value)
        scale = s - POLE
        target = 1 / (2 * SQRT3)
        if series == "H":
            z = zeta_real(s, 1e-12)
            scale *= z
            target = zeta_real(POLE, 1e-12) / (2 * SQRT3)
        out.append(ResidueProbe(series, s, N, scale * F, target, scale * tail))
    return out


@dataclass(frozen=True)
class CesaroReport:
    x: int
    exact_numerator: int  # S = sum_{n <= x} b_n (x - n)
    value: Fraction  # S / x
    main_term: float
    residual: float
    ratio: float
    numerator_ratio: float  # S / main_term

    def row(self) -> dict:
        return {
            "x": self.x,
            "S_numerator": self.exact_numerator,
            "value": float(self.value),
            "main_term": self.main_term,
            "ratio": self.ratio,
        }


def cesaro_numerator(x: int) -> int:
    """sum_{n <= x} b_n (x - n) = sum_{m < x} (b_1 + ... + b_m), exactly."""
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    b = b_sieve(x)
    if b.dtype == object or exact_sum(b) >= 2**62:
        total, acc = 0, 0
        for m in range(1, x):
            acc += int(b[m])
            total += acc
        return total
    prefix = np.cumsum(b[1:x])
    return exact_sum(prefix)


def cesaro_B(x: int) -> CesaroReport:
    S = cesaro_numerator(x)
    value = Fraction(S, x)
    main = cesaro_constant() * x**3.5
    v = float(value)
    return CesaroReport(x, S, value, main, v - main, v / main, S / main)
