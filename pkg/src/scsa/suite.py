"""Quick numerical invariant suite behind ``scsa validate``."""
import math

import numpy as np

from .discretization import fourier_d2
from .eigensolver import decompose, eigendecompose
from .grid import make_grid, sech2_signal
from .reconstruction import (ReconstructionParams, c_gamma, classical_constant,
                             reconstruct, reconstruct_zero)
from .validation import hard_invariants, poschl_teller_spectrum, weyl_count_residual


def _d2_exactness(M=64, L=10.0):
    grid = make_grid(0.0, L, M)
    D = fourier_d2(grid)
    worst = 0.0
    for k in range(-M // 2 + 1, M // 2):
        f = np.exp(2j * np.pi * k * grid.x / L)
        expected = -(2 * np.pi * k / L) ** 2 * f
        scale = max(1.0, (2 * np.pi * k / L) ** 2)
        worst = max(worst, float(np.abs(D @ f - expected).max()) / scale)
    return worst


def invariant_suite(M=1024, method="lapack"):
    """Return ``[(name, passed, detail), ...]``."""
    out = []

    def record(name, value, tol, detail=""):
        out.append((name, bool(value <= tol), f"{value:.3e} <= {tol:g} {detail}".rstrip()))

    record("fourier_d2 spectral exactness", _d2_exactness(), 1e-9)

    grid = make_grid(0.0, 10.0, M)
    y = sech2_signal(grid, 5.0)
    dec = decompose(y, 0.1, method=method)
    for name, (value, tol, _) in hard_invariants(dec).items():
        record(name, value, tol)

    shifted = decompose(y.shifted(0.3), 0.1, method=method)
    record("constant-shift covariance",
           float(np.abs(shifted.eigenvalues - (dec.eigenvalues - 0.3)).max()), 1e-9)

    pt = poschl_teller_spectrum(0.1)
    deep = pt[pt < -0.05]
    record("Poschl-Teller oracle", float(np.abs(dec.eigenvalues[: deep.size] - deep).max()),
           1e-3, f"(N_h={dec.N_h}, expected {pt.size})")
    out.append(("Poschl-Teller count", dec.N_h == pt.size, f"N_h={dec.N_h}"))

    record("Weyl count at lambda=0", abs(weyl_count_residual(dec, y, 0.0)), 0.05)

    r4 = reconstruct(dec, ReconstructionParams(0.1, 0.5, 0.0))
    r3 = reconstruct_zero(dec)
    record("gamma=1/2, lambda=0 identity", float(np.abs(r4.values - r3.values).max()), 1e-12)

    record("L_0 = 1/pi", abs(classical_constant(0.0) - 1 / math.pi), 1e-12)
    record("L_1/2 = 1/4", abs(classical_constant(0.5) - 0.25), 1e-12)
    record("c_1 = 4/3", abs(c_gamma(1.0) - 4.0 / 3.0), 1e-12)
    return out
