"""Least-squares polynomial fits used to classify growth of cost columns."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class PolyFit:
    degree: int
    coefficients: np.ndarray  # highest power first, as numpy.polyval expects

    def __call__(self, x):
        return np.polyval(self.coefficients, np.asarray(x, dtype=float))


def fit(xs, ys, degree: int) -> PolyFit:
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if len(xs) <= degree:
        raise ValueError("need more points than the polynomial degree")
    return PolyFit(degree, np.polyfit(xs, ys, degree))


def relative_residual(xs, ys, model: PolyFit) -> float:
    """Largest pointwise ``|y - model(x)| / |y|``."""
    ys = np.asarray(ys, dtype=float)
    if np.any(ys == 0):
        raise ValueError("relative residual undefined for zero observations")
    return float(np.max(np.abs(ys - model(xs)) / np.abs(ys)))


def fits_polynomial(xs, ys, degree: int, tol: float = 0.05) -> tuple[bool, float]:
    """Does a degree-``degree`` least-squares fit explain every point within ``tol``?"""
    m = fit(xs, ys, degree)
    r = relative_residual(xs, ys, m)
    return r < tol, r


def extrapolation_check(xs, ys, degree: int, train: int) -> tuple[bool, np.ndarray, np.ndarray]:
    """Fit on the first ``train`` points and test the rest stay at or below the curve.

    Returns ``(ok, predicted, observed)`` for the held-out points.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    m = fit(xs[:train], ys[:train], degree)
    pred = m(xs[train:])
    obs = ys[train:]
    return bool(np.all(obs <= pred)), pred, obs
