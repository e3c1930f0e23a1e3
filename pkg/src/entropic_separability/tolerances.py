"""Numerical tolerances shared by every module and by the test suite."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-10          # max|A - A^H| relative to max|A|
    offdiag: float = 1e-14       # Jacobi stop: off-diagonal Frobenius / Frobenius
    resid: float = 1e-10         # eigen-reconstruction residual relative to max|A|
    max_sweeps: int = 100
    trace: float = 1e-10
    psd: float = 1e-8            # eigenvalues in [-psd, 0) are clipped, below rejected
    eig_zero: float = 1e-14      # positive eigenvalues below this are solver noise
    spectrum_sum: float = 1e-9
    top_multiplicity: float = 1e-9
    majorization: float = 1e-10
    largest_eig: float = 1e-10
    entropic: float = 1e-10      # separable states give S_f^A >= -entropic
    family: float = 1e-12
    distribution: float = 1e-12
    root_xtol: float = 1e-10
    root_ftol: float = 1e-8
    root_grid: int = 41


TOL = Tolerances()

HERM_TOL = TOL.herm
OFFDIAG_TOL = TOL.offdiag
RESID_TOL = TOL.resid
