"""Locally weighted scatterplot smoothing for trend overlays.

Single-pass local linear regression with tricube weights over the nearest
ceil(fraction * N) neighbors of each evaluation point.  No robustness
iterations: the consumers need a trend line, not outlier rejection.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError


def lowess(points, fraction: float = 0.95) -> list[tuple[float, float]]:
    """Smooth (x, y) points, returning fitted (x, y_hat) sorted by x.

    Each input x is an evaluation point; its fit is a weighted linear
    least-squares over the k = ceil(fraction * N) nearest neighbors with
    tricube weights.  Exactly collinear neighborhoods reproduce the line.
    """
    points = [(float(x), float(y)) for x, y in points]
    if len(points) < 3:
        raise ParameterError("lowess needs at least 3 points")
    if not 0.0 < fraction <= 1.0:
        raise ParameterError("fraction must lie in (0, 1]")

    points.sort(key=lambda p: p[0])
    xs = np.array([p[0] for p in points])
    ys = np.array([p[1] for p in points])
    n = xs.size
    k = math.ceil(fraction * n)

    fitted = np.empty(n)
    for idx in range(n):
        d = np.abs(xs - xs[idx])
        neighbor = np.argpartition(d, k - 1)[:k]
        dn = d[neighbor]
        dmax = dn.max()
        if dmax == 0.0:
            w = np.ones(k)
        else:
            w = (1.0 - (dn / dmax) ** 3) ** 3
        xn, yn = xs[neighbor], ys[neighbor]
        sw = w.sum()
        if sw == 0.0:
            # all neighbors sit exactly at distance dmax; fall back to flat weights
            w = np.ones(k)
            sw = float(k)
        xm = float((w * xn).sum() / sw)
        ym = float((w * yn).sum() / sw)
        sxx = float((w * (xn - xm) ** 2).sum())
        if sxx == 0.0:
            fitted[idx] = ym
        else:
            slope = float((w * (xn - xm) * (yn - ym)).sum()) / sxx
            fitted[idx] = ym + slope * (xs[idx] - xm)
    return [(float(x), float(y)) for x, y in zip(xs, fitted)]
