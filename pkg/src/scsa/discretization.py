"""Second-derivative matrices on the periodic grid and the discrete Hamiltonian.

Matrices are dense symmetric ``numpy`` arrays.  The Hamiltonian for a signal
``y`` is ``-h**2 * D2 - diag(y)``; its eigenvalues are the ``lambda_hn``.
"""
import warnings

import numpy as np
from scipy.linalg import toeplitz

from .grid import Grid, Signal

MAX_DENSE_M = 4096


def fourier_d2(grid: Grid) -> np.ndarray:
    """Periodic pseudo-spectral second-derivative matrix (even ``M``).

    Exact on trigonometric polynomials of degree below ``M/2``; the Nyquist
    mode is mapped to ``-(pi M / L)**2``.
    """
    M = grid.M
    if M % 2:
        raise ValueError("M must be even")
    theta = 2 * np.pi / M
    k = np.arange(1, M)
    col = np.empty(M)
    col[0] = -np.pi**2 / (3 * theta**2) - 1.0 / 6.0
    col[1:] = -((-1.0) ** k) / (2 * np.sin(k * theta / 2) ** 2)
    # toeplitz of a single column is exactly symmetric
    return (2 * np.pi / grid.length) ** 2 * toeplitz(col)


def finite_difference_d2(grid: Grid) -> np.ndarray:
    """Periodic three-point stencil ``(1, -2, 1) / spacing**2``."""
    col = np.zeros(grid.M)
    col[0], col[1], col[-1] = -2.0, 1.0, 1.0
    return toeplitz(col) / grid.spacing**2


def hamiltonian(signal: Signal, h: float, d2: np.ndarray | None = None) -> np.ndarray:
    """``-h**2 * d2 - diag(y)``.  ``d2`` defaults to :func:`fourier_d2`."""
    if h <= 0:
        raise ValueError(f"h must be positive, got {h}")
    grid = signal.grid
    if d2 is None:
        if grid.M > MAX_DENSE_M:
            raise ValueError(f"M={grid.M} exceeds the dense cap {MAX_DENSE_M}")
        d2 = fourier_d2(grid)
    if d2.shape != (grid.M, grid.M):
        raise ValueError(f"d2 has shape {d2.shape}, signal has M={grid.M}")
    if h < 2 * grid.spacing:
        warnings.warn(
            f"h={h:g} is small compared with the grid spacing {grid.spacing:g}",
            RuntimeWarning, stacklevel=2)
    H = -(h**2) * d2
    H[np.diag_indices_from(H)] -= signal.values
    return H
