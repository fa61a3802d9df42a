"""Analytic oracles, admissibility diagnostics, error metrics and order fits."""
from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

from .eigensolver import SpectralDecomposition, count_below
from .grid import Signal, WindowK
from .reconstruction import ReconstructedSignal, classical_riesz_integral

GRAM_TOL = 1e-8
RESIDUAL_RTOL = 1e-7


def poschl_teller_spectrum(h: float) -> np.ndarray:
    """Whole-line bound states of ``-h**2 d²/dx² - sech²(x)``, most negative first.

    ``lambda_n = -h**2 (nu - n)**2`` for ``n < nu`` where ``nu (nu + 1) = 1/h**2``.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    nu = (-1.0 + math.sqrt(1.0 + 4.0 / h**2)) / 2.0
    n = np.arange(math.ceil(nu))
    return -(h**2) * (nu - n) ** 2


@dataclass(frozen=True)
class AdmissibilityReport:
    """Diagnostics for a level/window pair; nothing here is enforced."""

    edges_ok: bool
    window_ok: bool
    noncritical_ok: bool
    edge_values: tuple[float, float]
    window_min: float
    crossing_slopes: tuple[float, ...]
    slope_threshold: float

    @property
    def ok(self) -> bool:
        return self.edges_ok and self.window_ok and self.noncritical_ok

    def failures(self) -> list[str]:
        out = []
        if not self.edges_ok:
            out.append("lambda is not below -y at the interval edges")
        if not self.window_ok:
            out.append(f"y <= -lambda somewhere in the window (min y = {self.window_min:g})")
        if not self.noncritical_ok:
            out.append("-lambda is close to a critical value of y (flat crossing)")
        return out


def check_admissible(signal: Signal, lam: float, window: WindowK,
                     slope_threshold: float | None = None) -> AdmissibilityReport:
    y = signal.values
    grid = signal.grid
    if slope_threshold is None:
        slope_threshold = 0.05 * float(np.ptp(y)) / grid.length
    edges = (float(y[0]), float(y[-1]))
    window_min = float(y[window.indices].min())

    s = y + lam
    nxt = np.roll(s, -1)
    crossings = np.flatnonzero((s == 0) | (s * nxt < 0))
    slopes = np.abs(np.roll(y, -1)[crossings] - y[crossings]) / grid.spacing
    return AdmissibilityReport(
        edges_ok=lam < min(-edges[0], -edges[1]),
        window_ok=window_min > -lam,
        noncritical_ok=bool(np.all(slopes > slope_threshold)),
        edge_values=edges,
        window_min=window_min,
        crossing_slopes=tuple(float(v) for v in slopes),
        slope_threshold=slope_threshold,
    )


@dataclass(frozen=True)
class ErrorReport:
    pointwise_rel: np.ndarray = field(repr=False)
    sup_rel: float
    rms_rel: float
    terms_used: int
    h: float
    gamma: float
    lam: float


def relative_error(recon: ReconstructedSignal, truth: Signal, window: WindowK) -> ErrorReport:
    """``|y_rec - y| / max(|y|, floor)`` on the window, with sup and RMS."""
    if recon.grid != truth.grid:
        raise ValueError("reconstruction and truth live on different grids")
    if window.M != truth.grid.M:
        raise ValueError("window does not match the grid")
    idx = window.indices
    y = truth.values
    floor = 1e-12 * float(np.abs(y).max())
    rel = np.abs(recon.values[idx] - y[idx]) / np.maximum(np.abs(y[idx]), floor)
    p = recon.params
    return ErrorReport(rel, float(rel.max()), float(np.sqrt(np.mean(rel**2))),
                       recon.terms_used, p.h, p.gamma, p.lam)


@dataclass(frozen=True)
class ConvergenceFit:
    h_values: np.ndarray = field(repr=False)
    errors: np.ndarray = field(repr=False)
    order: float
    r_squared: float


def convergence_order(h_values, errors) -> ConvergenceFit:
    """Least-squares slope of ``log(error)`` against ``log(h)``."""
    h = np.asarray(h_values, dtype=float)
    err = np.asarray(errors, dtype=float)
    if h.ndim != 1 or h.size < 3 or err.shape != h.shape:
        raise ValueError("need at least 3 h values with matching errors")
    if np.any(h <= 0) or np.any(np.diff(h) >= 0):
        raise ValueError("h values must be positive and strictly decreasing")
    if np.any(~(err > 0)):
        raise ValueError("errors must be positive")
    lx, ly = np.log(h), np.log(err)
    slope, intercept = np.polyfit(lx, ly, 1)
    ss_res = float(np.sum((ly - (slope * lx + intercept)) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res < 1e-24 else 0.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return ConvergenceFit(h, err, float(slope), r2)


def weyl_count_residual(decomp: SpectralDecomposition, signal: Signal, lam: float) -> float:
    """``h N_{h,lam}`` minus its classical phase-space volume."""
    return decomp.h * count_below(decomp, lam) - classical_riesz_integral(signal, lam, 0.0)


def gram_deviation(decomp: SpectralDecomposition) -> float:
    psi = decomp.eigenfunctions
    G = (psi.T @ psi) * decomp.grid.spacing
    G[np.diag_indices_from(G)] -= 1.0
    return float(np.abs(G).max())


def max_residual(decomp: SpectralDecomposition) -> float:
    """``max_n |H psi_n - lambda_n psi_n| / |psi_n|`` relative to the spectral radius."""
    H = decomp.hamiltonian()
    psi = decomp.eigenfunctions
    R = H @ psi - psi * decomp.eigenvalues
    res = np.linalg.norm(R, axis=0) / np.linalg.norm(psi, axis=0)
    return float(res.max()) / decomp.spectral_radius


def hard_invariants(decomp: SpectralDecomposition) -> dict[str, tuple[float, float, bool]]:
    """Orthonormality and residual checks as ``name -> (value, tolerance, ok)``."""
    gram = gram_deviation(decomp)
    res = max_residual(decomp)
    return {
        "gram_deviation": (gram, GRAM_TOL, gram <= GRAM_TOL),
        "relative_residual": (res, RESIDUAL_RTOL, res <= RESIDUAL_RTOL),
    }
