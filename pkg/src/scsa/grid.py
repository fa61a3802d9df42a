"""Periodic sampling grids, sampled signals and the built-in test signals.

The grid is periodic: ``M`` points with spacing ``(b - a) / M`` starting at
``a``, so the point after the last one is identified with ``a``.  Indices are
0-based throughout the Python API.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import warnings

import numpy as np

__all__ = [
    "Grid",
    "Signal",
    "WindowK",
    "make_grid",
    "sech2_signal",
    "synthetic_beat",
    "window_from_lambda",
    "default_margin",
]


def _frozen(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Grid:
    a: float
    b: float
    M: int

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"need a < b, got a={self.a}, b={self.b}")
        if int(self.M) != self.M or self.M < 8:
            raise ValueError(f"M must be an integer >= 8, got {self.M}")
        if self.M % 2:
            raise ValueError(f"M must be even, got {self.M}")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def spacing(self) -> float:
        return (self.b - self.a) / self.M

    @property
    def x(self) -> np.ndarray:
        return self.a + np.arange(self.M) * self.spacing


def make_grid(a: float, b: float, M: int) -> Grid:
    """Uniform periodic grid of ``M`` points on ``[a, b)``."""
    return Grid(float(a), float(b), int(M))


@dataclass(frozen=True)
class Signal:
    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = _frozen(self.values)
        if values.shape != (self.grid.M,):
            raise ValueError(
                f"signal has {values.size} values, grid has M={self.grid.M}")
        if not np.all(np.isfinite(values)):
            raise ValueError("signal values must be finite")
        object.__setattr__(self, "values", values)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def shifted(self, c: float) -> "Signal":
        return Signal(self.grid, self.values + c)


@dataclass(frozen=True)
class WindowK:
    """Contiguous (cyclic) run of grid indices ``start, start+1, ...``.

    ``fragmented`` is set when the region it was extracted from had more
    than one connected component.
    """

    start: int
    length: int
    M: int
    fragmented: bool = False

    def __post_init__(self):
        if not 1 <= self.length <= self.M:
            raise ValueError(f"window length must be in [1, {self.M}]")
        if not 0 <= self.start < self.M:
            raise ValueError(f"window start must be in [0, {self.M})")

    @classmethod
    def from_range(cls, lo: int, hi: int, M: int) -> "WindowK":
        """Half-open index range ``lo:hi``; ``hi <= lo`` wraps around the seam."""
        lo, hi = int(lo), int(hi)
        if not (0 <= lo < M and 0 <= hi <= M) or lo == hi:
            raise ValueError(f"bad window {lo}:{hi} for M={M}")
        length = hi - lo if hi > lo else M - lo + hi
        return cls(lo, length, M)

    @classmethod
    def full(cls, M: int) -> "WindowK":
        return cls(0, M, M)

    @property
    def indices(self) -> np.ndarray:
        return (self.start + np.arange(self.length)) % self.M

    def mask(self) -> np.ndarray:
        m = np.zeros(self.M, dtype=bool)
        m[self.indices] = True
        return m


def sech2_signal(grid: Grid, center: float = 5.0) -> Signal:
    """The Pöschl–Teller well ``sech²(x - center)``."""
    if not grid.a < center < grid.b:
        raise ValueError("center must lie inside (a, b)")
    return Signal(grid, 1.0 / np.cosh(grid.x - center) ** 2)


def _lognormal_bump(t, peak, width):
    # exp(-log(t/peak)^2 / 2w^2), smooth with all derivatives vanishing at t=0
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-np.log(t[pos] / peak) ** 2 / (2 * width**2))
    return out


def synthetic_beat(grid: Grid, systolic: float = 120.0, diastolic: float = 80.0,
                   notch_position: float = 0.4) -> Signal:
    """Pressure-beat-like pulse on one period of the grid.

    A skewed systolic wave, a broad diastolic run-off and a small dicrotic
    wave just after ``notch_position`` (fraction of the period).  The sum is
    periodised over the seam and mapped affinely onto ``[diastolic, systolic]``.
    """
    if not systolic > diastolic > 0:
        raise ValueError("need systolic > diastolic > 0")
    if not 0 < notch_position < 1:
        raise ValueError("notch_position must be in (0, 1)")
    t = (grid.x - grid.a) / grid.length
    shape = np.zeros_like(t)
    # log-normal tails are long; four periods make the seam smooth to ~1e-4
    for k in range(4):
        s = t + k
        shape += _lognormal_bump(s, 0.16, 0.32)
        shape += 0.55 * _lognormal_bump(s, 0.32, 0.7)
        shape += 0.22 * np.exp(-((s - notch_position - 0.06) / 0.055) ** 2)
    shape = (shape - shape.min()) / (shape.max() - shape.min())
    return Signal(grid, diastolic + (systolic - diastolic) * shape)


def default_margin(signal: Signal) -> float:
    return 0.02 * float(np.ptp(signal.values))


def _cyclic_runs(mask):
    """(start, length) of each maximal cyclic run of True in ``mask``."""
    M = mask.size
    if mask.all():
        return [(0, M)]
    if not mask.any():
        return []
    # rotate so index 0 is False; runs then never cross the array end
    offset = int(np.argmin(mask))
    rolled = np.roll(mask, -offset).astype(np.int8)
    edges = np.diff(np.concatenate(([0], rolled, [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return [((s + offset) % M, e - s) for s, e in zip(starts, ends)]


def window_from_lambda(signal: Signal, lam: float, margin: float | None = None) -> WindowK:
    """Largest contiguous region where ``y > -lam + margin``.

    ``margin`` defaults to 2% of the signal range.  Raises ``ValueError`` when
    no sample qualifies; if the qualifying set is disconnected the largest
    component is returned with ``fragmented=True`` and a warning is issued.
    """
    if margin is None:
        margin = default_margin(signal)
    if margin <= 0:
        raise ValueError("margin must be positive")
    runs = _cyclic_runs(signal.values > -lam + margin)
    if not runs:
        raise ValueError(f"lambda too low for this signal (lambda={lam})")
    start, length = max(runs, key=lambda r: (r[1], -r[0]))
    fragmented = len(runs) > 1
    if fragmented:
        warnings.warn(
            f"region y > {-lam + margin:g} has {len(runs)} components; "
            "using the largest", RuntimeWarning, stacklevel=2)
    return WindowK(start, length, signal.grid.M, fragmented)
