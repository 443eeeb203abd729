"""Least-squares exponent estimates on log-log data."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    point_count: int

    def row(self) -> dict:
        return asdict(self)


def fit_exponent(points) -> FitResult:
    """Fit log y = slope * log x + intercept by ordinary least squares."""
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 3:
        raise ValueError(f"need at least 3 points, got {len(pts)}")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if (np.diff(x) <= 0).any() or x[0] <= 0:
        raise ValueError("x values must be positive and strictly increasing")
    if (y <= 0).any():
        raise ValueError("y values must be positive")
    lx, ly = np.log(x), np.log(y)
    xm, ym = lx.mean(), ly.mean()
    slope = float(((lx - xm) * (ly - ym)).sum() / ((lx - xm) ** 2).sum())
    intercept = float(ym - slope * xm)
    ss_tot = float(((ly - ym) ** 2).sum())
    ss_res = float(((ly - (slope * lx + intercept)) ** 2).sum())
    # a constant y has nothing left to explain
    r2 = 1.0 if ss_tot == 0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return FitResult(slope, intercept, r2, len(pts))
