"""Evaluation grids for the numerical order and condition checkers.

A continuous "for all x" claim is decided on a finite grid with explicit
tolerances and witnesses.  ``GridSpec`` fixes the grid once so verdicts are
reproducible and refinement-stable.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass

import numpy as np

ENV_GRID_POINTS = "EOC_GRID_POINTS"


class Spacing(enum.Enum):
    LOG = "log"
    LINEAR = "linear"


def _default_points() -> int:
    raw = os.environ.get(ENV_GRID_POINTS)
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_GRID_POINTS} must be an integer, got {raw!r}")
        if n < 16:
            raise ValueError(f"{ENV_GRID_POINTS} must be >= 16, got {n}")
        return n
    return 2048


@dataclass(frozen=True)
class GridSpec:
    """Grid used to decide a pointwise inequality.

    ``lo_quantile``/``hi_quantile`` bound the probability range covered;
    order checkers map them through pooled quantile functions, condition
    checkers use them directly as a grid on (0, 1).
    """

    points: int = 0  # 0 means "default", possibly overridden by env var
    lo_quantile: float = 1e-6
    hi_quantile: float = 1.0 - 1e-6
    spacing: Spacing = Spacing.LOG

    def __post_init__(self):
        if self.points == 0:
            object.__setattr__(self, "points", _default_points())
        if self.points < 16:
            raise ValueError("points must be >= 16")
        if not (0.0 < self.lo_quantile < self.hi_quantile < 1.0):
            raise ValueError("need 0 < lo_quantile < hi_quantile < 1")

    def unit_grid(self) -> np.ndarray:
        """Grid on (0, 1), log-symmetric near both ends when spacing is LOG."""
        lo, hi, n = self.lo_quantile, self.hi_quantile, self.points
        if self.spacing is Spacing.LINEAR:
            return np.linspace(lo, hi, n)
        half = n // 2
        left = np.geomspace(lo, 0.5, half)
        right = 1.0 - np.geomspace(1.0 - hi, 0.5, n - half)
        return np.unique(np.concatenate([left, right]))

    def positive_grid(self, x_lo: float, x_hi: float) -> np.ndarray:
        """Grid on [x_lo, x_hi] with the configured spacing."""
        if not (0.0 <= x_lo < x_hi):
            raise ValueError("need 0 <= x_lo < x_hi")
        if self.spacing is Spacing.LINEAR:
            return np.linspace(x_lo, x_hi, self.points)
        return np.geomspace(max(x_lo, 1e-280), x_hi, self.points)

    def meta(self) -> dict:
        return {
            "points": self.points,
            "lo_quantile": self.lo_quantile,
            "hi_quantile": self.hi_quantile,
            "spacing": self.spacing.value,
        }


DEFAULT_CONDITION_GRID = GridSpec(points=1024)


def slopes(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """First divided differences, valid on non-uniform grids."""
    return np.diff(y) / np.diff(x)


def curvatures(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Second divided differences (twice the usual Newton coefficient).

    Scaled so that on a uniform grid the result approximates f''.
    """
    s = slopes(x, y)
    return 2.0 * np.diff(s) / (x[2:] - x[:-2])
