"""Dense complex linear algebra: Kronecker products, a cyclic Jacobi
eigensolver for Hermitian matrices, and spectral matrix functions.

Eigenvalues are always returned in descending order; ties keep the
original diagonal order (stable sort).
"""

from typing import Callable, NamedTuple

import numpy as np

from .errors import NoConvergence, NotHermitian
from .tolerances import TOL


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray   # real, descending
    eigenvectors: np.ndarray  # columns aligned with eigenvalues


def as_matrix(a) -> np.ndarray:
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry (i*b.rows + k, j*b.cols + l) is a[i, j] * b[k, l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def hermiticity_defect(a: np.ndarray) -> float:
    """max|a - a^H| divided by max|a| (0 for the zero matrix)."""
    scale = np.max(np.abs(a))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().T)) / scale)


def _offdiag_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] in place with a complex Jacobi rotation on rows/cols p, q."""
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    app = a[p, p].real
    aqq = a[q, q].real
    theta = (aqq - app) / (2.0 * mag)
    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ u
    a[idx, :] = u.conj().T @ a[idx, :]
    v[:, idx] = v[:, idx] @ u
    a[p, q] = a[q, p] = 0.0
    a[p, p] = app - t * mag
    a[q, q] = aqq + t * mag


def jacobi_sweeps(a, *, max_sweeps: int = TOL.max_sweeps, tol: float = TOL.offdiag):
    """Run cyclic Jacobi sweeps on a copy of ``a``.

    Yields ``(diagonalised, eigenvectors)`` after every sweep, starting with the
    untouched input, so callers can inspect convergence. Raises
    :class:`NoConvergence` when the sweep cap is reached.
    """
    work = as_matrix(a).copy()
    n = work.shape[0]
    vecs = np.eye(n, dtype=complex)
    total = np.linalg.norm(work)
    yield work, vecs
    for _ in range(max_sweeps):
        if _offdiag_norm(work) <= tol * total:
            return
        for p in range(n - 1):
            for q in range(p + 1, n):
                if work[p, q] != 0.0:
                    _rotate(work, vecs, p, q)
        yield work, vecs
    if _offdiag_norm(work) > tol * total:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


def eig_hermitian(a) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Raises :class:`NotHermitian` if ``a`` is not square or deviates from its
    adjoint by more than ``TOL.herm`` (relative to its largest entry).
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise NotHermitian(f"matrix is not square: {m.shape}")
    defect = hermiticity_defect(m)
    if defect > TOL.herm:
        raise NotHermitian(f"matrix is not Hermitian (relative defect {defect:.3g})")
    m = 0.5 * (m + m.conj().T)
    for work, vecs in jacobi_sweeps(m):
        pass
    vals = np.diag(work).real.copy()
    order = np.argsort(-vals, kind="stable")
    return EigenDecomposition(vals[order], vecs[:, order].copy())


def eigvalsh(a) -> np.ndarray:
    return eig_hermitian(a).eigenvalues


def matrix_function(a, scalar_fn: Callable[[float], float]) -> np.ndarray:
    """Apply ``scalar_fn`` to the spectrum of Hermitian ``a``: V f(L) V^H."""
    vals, vecs = eig_hermitian(a)
    fvals = np.array([scalar_fn(float(x)) for x in vals], dtype=float)
    out = (vecs * fvals) @ vecs.conj().T
    return 0.5 * (out + out.conj().T)
