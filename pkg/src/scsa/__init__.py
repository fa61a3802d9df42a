"""Semi-classical signal analysis with the periodic Schrödinger operator -h² d²/dx² - y."""
from .discretization import finite_difference_d2, fourier_d2, hamiltonian
from .eigensolver import SpectralDecomposition, count_below, decompose, eigendecompose
from .grid import (Grid, Signal, WindowK, make_grid, sech2_signal, synthetic_beat,
                   window_from_lambda)
from .reconstruction import (ReconstructedSignal, ReconstructionParams, c_gamma,
                             classical_constant, classical_riesz_integral,
                             local_riesz_density, reconstruct, reconstruct_zero, riesz_mean)
from .validation import (ConvergenceFit, ErrorReport, check_admissible, convergence_order,
                         poschl_teller_spectrum, relative_error, weyl_count_residual)

__version__ = "0.1.0"
