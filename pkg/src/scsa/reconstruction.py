"""Classical constants, Riesz means and the spectral reconstruction of a signal.

For a decomposition with eigenpairs ``(lambda_n, psi_n)`` the reconstruction
at level ``lam`` with Riesz exponent ``gamma`` is::

    y_rec(x) = -lam + (h / L_gamma * sum_{lambda_n < lam} (lam - lambda_n)**gamma psi_n(x)**2) ** (2 / (2 gamma + 1))

where ``L_gamma`` is the classical Weyl constant.  ``gamma = 1/2, lam = 0``
gives the older formula ``4 h sum sqrt(-lambda_n) psi_n**2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.special import gammaln

from .eigensolver import SpectralDecomposition, count_below
from .grid import Grid, Signal, WindowK


def _check_gamma(gamma):
    if not gamma >= 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")


def classical_constant(gamma: float) -> float:
    """Classical Weyl constant ``Gamma(g+1) / (2 sqrt(pi) Gamma(g+3/2))``."""
    _check_gamma(gamma)
    return math.exp(gammaln(gamma + 1) - gammaln(gamma + 1.5)) / (2 * math.sqrt(math.pi))


def c_gamma(gamma: float) -> float:
    """``integral (1 - eta**2)_+**gamma d eta``, i.e. ``2 pi`` times the Weyl constant."""
    return 2 * math.pi * classical_constant(gamma)


@dataclass(frozen=True)
class ReconstructionParams:
    h: float
    gamma: float
    lam: float
    window: WindowK | None = None

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError("h must be positive")
        _check_gamma(self.gamma)


@dataclass(frozen=True)
class ReconstructedSignal:
    grid: Grid
    values: np.ndarray = field(repr=False)
    params: ReconstructionParams
    terms_used: int

    def as_signal(self) -> Signal:
        return Signal(self.grid, self.values)


def _weights(decomp, lam, gamma, strict):
    tie = decomp.tie_epsilon
    ev = decomp.eigenvalues
    sel = ev < lam - tie if strict else ev <= lam + tie
    gap = np.maximum(lam - ev[sel], 0.0)
    # gamma == 0: each selected term counts 1, including a tie at the cutoff
    w = np.ones_like(gap) if gamma == 0 else gap**gamma
    return sel, w


def _spectral_sum(decomp, lam, gamma, strict):
    sel, w = _weights(decomp, lam, gamma, strict)
    psi = decomp.eigenfunctions[:, sel]
    return (psi**2) @ w


def reconstruct(decomp: SpectralDecomposition, params: ReconstructionParams) -> ReconstructedSignal:
    """Evaluate the reconstruction on the full grid.

    The window in ``params`` is only carried along for error reporting.
    """
    if not math.isclose(decomp.h, params.h, rel_tol=1e-12):
        raise ValueError(f"decomposition has h={decomp.h}, params have h={params.h}")
    if params.window is not None and params.window.M != decomp.grid.M:
        raise ValueError("window does not match the grid")
    g, lam = params.gamma, params.lam
    S = params.h / classical_constant(g) * _spectral_sum(decomp, lam, g, strict=True)
    values = -lam + S ** (2.0 / (2.0 * g + 1.0))
    return ReconstructedSignal(decomp.grid, values, params, count_below(decomp, lam))


def reconstruct_zero(decomp: SpectralDecomposition) -> ReconstructedSignal:
    """``4 h sum_{lambda_n < 0} sqrt(-lambda_n) psi_n**2``, with no level offset."""
    values = 4 * decomp.h * _spectral_sum(decomp, 0.0, 0.5, strict=True)
    params = ReconstructionParams(decomp.h, 0.5, 0.0)
    return ReconstructedSignal(decomp.grid, values, params, decomp.N_h)


def riesz_mean(decomp: SpectralDecomposition, lam: float, gamma: float) -> float:
    """``sum_{lambda_n <= lam} (lam - lambda_n)**gamma``; the count when gamma is 0."""
    _check_gamma(gamma)
    return float(_weights(decomp, lam, gamma, strict=False)[1].sum())


def classical_riesz_integral(signal: Signal, lam: float, gamma: float) -> float:
    """Phase-space side of the Riesz law: ``L_gamma * int (lam + y)_+**(gamma+1/2) dx``."""
    integrand = np.maximum(lam + signal.values, 0.0) ** (gamma + 0.5)
    return classical_constant(gamma) * float(integrand.sum()) * signal.grid.spacing


def local_riesz_density(decomp: SpectralDecomposition, lam: float, gamma: float,
                        j: int | np.ndarray | None = None):
    """Diagonal Riesz density ``sum_{lambda_n <= lam} (lam - lambda_n)**gamma psi_n(x_j)**2``.

    ``j=None`` returns the whole grid.
    """
    _check_gamma(gamma)
    sel, w = _weights(decomp, lam, gamma, strict=False)
    psi = decomp.eigenfunctions[:, sel] if j is None else decomp.eigenfunctions[j][..., sel]
    out = (psi**2) @ w
    return float(out) if np.ndim(out) == 0 else out
