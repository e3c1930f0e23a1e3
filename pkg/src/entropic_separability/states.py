"""Density matrices on composite systems and the state families studied here.

Composite indices follow the ``np.kron`` convention: subsystem 0 varies
slowest. For qubits, ``|up> = (1, 0)`` and ``|down> = (0, 1)``, so the
two-qubit basis is ``|uu>, |ud>, |du>, |dd>``.
"""

from dataclasses import dataclass, field, replace
from functools import cached_property
from math import isclose, prod, sqrt
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadSubsystemIndex,
    BadSubsystemSet,
    InvalidDensity,
    InvalidFamilyParams,
)
from .linalg import as_matrix, eig_hermitian, hermiticity_defect, kron
from .tolerances import TOL

UP = np.array([1.0, 0.0], dtype=complex)
DOWN = np.array([0.0, 1.0], dtype=complex)

SINGLET = (np.kron(UP, DOWN) - np.kron(DOWN, UP)) / sqrt(2)
BELL_BASIS = (
    SINGLET,
    (np.kron(UP, DOWN) + np.kron(DOWN, UP)) / sqrt(2),
    (np.kron(UP, UP) + np.kron(DOWN, DOWN)) / sqrt(2),
    (np.kron(UP, UP) - np.kron(DOWN, DOWN)) / sqrt(2),
)


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix with a factorization
    ``dims`` into subsystems.

    Validation happens on construction and caches the eigendecomposition.
    """

    matrix: np.ndarray
    dims: tuple = field(default=None)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        n = m.shape[0]
        if m.shape[0] != m.shape[1]:
            raise InvalidDensity(f"density matrix must be square, got {m.shape}")
        dims = (n,) if self.dims is None else tuple(int(d) for d in self.dims)
        if self.dims is not None and any(d < 2 for d in dims):
            raise InvalidDensity(f"subsystem dimensions must be >= 2, got {dims}")
        if prod(dims) != n:
            raise InvalidDensity(f"dims {dims} do not factor matrix order {n}")
        defect = hermiticity_defect(m)
        if defect > TOL.herm:
            raise InvalidDensity(f"matrix is not Hermitian (relative defect {defect:.3g})")
        m = 0.5 * (m + m.conj().T)
        tr = np.trace(m).real
        if abs(tr - 1.0) > TOL.trace:
            raise InvalidDensity(f"trace is {tr:.12g}, expected 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)
        lowest = self.eig.eigenvalues[-1]
        if lowest < -TOL.psd:
            raise InvalidDensity(f"matrix is not positive semidefinite (eigenvalue {lowest:.3g})")

    @cached_property
    def eig(self):
        return eig_hermitian(self.matrix)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eig.eigenvalues

    @property
    def order(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_subsystems(self) -> int:
        return len(self.dims)

    def is_pure(self, tol: float = 1e-10) -> bool:
        return abs(self.eigenvalues[0] - 1.0) <= tol

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims}, order={self.order})"


def density_from_ket(psi, dims: Sequence[int]) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex)
    return DensityMatrix(projector(psi / np.linalg.norm(psi)), tuple(dims))


def product_density(*factors: DensityMatrix) -> DensityMatrix:
    mat = factors[0].matrix
    dims = tuple(factors[0].dims)
    for f in factors[1:]:
        mat = kron(mat, f.matrix)
        dims += tuple(f.dims)
    return DensityMatrix(mat, dims)


def mixture(weights: Iterable[float], states: Iterable[DensityMatrix]) -> DensityMatrix:
    weights = list(weights)
    states = list(states)
    mat = sum(w * s.matrix for w, s in zip(weights, states))
    return DensityMatrix(mat, states[0].dims)


# --- state families ---------------------------------------------------------

def _check_x(x):
    if not 0.0 <= x <= 1.0:
        raise InvalidFamilyParams(f"mixing parameter x must lie in [0, 1], got {x}")


class StateFamily:
    """Base for parametrised state constructors.

    Families with a free mixing parameter ``x`` support :meth:`with_x`, which
    the scanners and root finders use to walk along the family.
    """

    parametric = True
    dims = (2, 2)

    def density(self) -> DensityMatrix:
        raise NotImplementedError

    def with_x(self, x: float) -> "StateFamily":
        if not self.parametric:
            raise TypeError(f"{type(self).__name__} has no mixing parameter x")
        return replace(self, x=float(x))


@dataclass(frozen=True)
class SingletPolarized(StateFamily):
    """x |singlet><singlet| + (1 - x) |uu><uu|."""

    x: float

    def __post_init__(self):
        _check_x(self.x)

    def density(self):
        mat = self.x * projector(SINGLET) + (1 - self.x) * projector(np.kron(UP, UP))
        return DensityMatrix(mat, (2, 2))


@dataclass(frozen=True)
class SingletProduct(StateFamily):
    """x |singlet><singlet| + (1 - x) |u v><u v| for unit qubit vectors u, v."""

    x: float
    u: tuple
    v: tuple

    def __post_init__(self):
        _check_x(self.x)
        for name in ("u", "v"):
            vec = np.asarray(getattr(self, name), dtype=complex)
            if vec.shape != (2,):
                raise InvalidFamilyParams(f"{name} must be a 2-vector")
            if abs(np.linalg.norm(vec) - 1.0) > TOL.family:
                raise InvalidFamilyParams(f"{name} must be a unit vector")
            object.__setattr__(self, name, tuple(complex(c) for c in vec))

    @classmethod
    def from_overlap(cls, x, r, phase=0.0):
        """Canonical member with |<u|v>|^2 = r: u = |up>, v = sqrt(r)|up> + e^{i phase} sqrt(1-r)|down>."""
        if not 0.0 <= r <= 1.0:
            raise InvalidFamilyParams(f"overlap r must lie in [0, 1], got {r}")
        v = (sqrt(r), np.exp(1j * phase) * sqrt(1.0 - r))
        return cls(x, (1.0, 0.0), v)

    @property
    def overlap(self) -> float:
        return float(abs(np.vdot(self.u, self.v)) ** 2)

    def density(self):
        uv = np.kron(np.asarray(self.u), np.asarray(self.v))
        mat = self.x * projector(SINGLET) + (1 - self.x) * projector(uv)
        return DensityMatrix(mat, (2, 2))


@dataclass(frozen=True)
class PsiMixture(StateFamily):
    """x |psi><psi| + (1 - x)(|uu><uu| + |dd><dd|)/2 with psi = a|ud> + b|du>."""

    x: float
    a: complex
    b: complex

    def __post_init__(self):
        _check_x(self.x)
        if abs(abs(self.a) ** 2 + abs(self.b) ** 2 - 1.0) > TOL.family:
            raise InvalidFamilyParams("PsiMixture needs |a|^2 + |b|^2 = 1")

    @classmethod
    def from_a2(cls, x, a2):
        if not 0.0 <= a2 <= 1.0:
            raise InvalidFamilyParams(f"|a|^2 must lie in [0, 1], got {a2}")
        return cls(x, sqrt(a2), sqrt(1.0 - a2))

    def density(self):
        psi = self.a * np.kron(UP, DOWN) + self.b * np.kron(DOWN, UP)
        classical = (projector(np.kron(UP, UP)) + projector(np.kron(DOWN, DOWN))) / 2
        return DensityMatrix(self.x * projector(psi) + (1 - self.x) * classical, (2, 2))


@dataclass(frozen=True)
class BellDiagonal(StateFamily):
    """sum_i q_i |Psi_i><Psi_i| over the Bell basis (singlet first)."""

    q: tuple
    parametric = False

    def __post_init__(self):
        q = tuple(float(v) for v in self.q)
        if len(q) != 4:
            raise InvalidFamilyParams("BellDiagonal needs four weights")
        if min(q) < 0.0 or abs(sum(q) - 1.0) > TOL.family:
            raise InvalidFamilyParams(f"Bell weights must form a probability vector, got {q}")
        object.__setattr__(self, "q", q)

    def density(self):
        mat = sum(w * projector(b) for w, b in zip(self.q, BELL_BASIS))
        return DensityMatrix(mat, (2, 2))


@dataclass(frozen=True)
class WernerPopescu(StateFamily):
    """x |singlet><singlet| + (1 - x) I/4."""

    x: float

    def __post_init__(self):
        _check_x(self.x)

    def density(self):
        mat = self.x * projector(SINGLET) + (1 - self.x) * np.eye(4) / 4
        return DensityMatrix(mat, (2, 2))


def ghz_ket(d: int, n: int) -> np.ndarray:
    psi = np.zeros(d**n, dtype=complex)
    step = sum(d**k for k in range(n))  # index of |k k ... k> is k * step
    psi[np.arange(d) * step] = 1.0 / sqrt(d)
    return psi


@dataclass(frozen=True)
class GhzWerner(StateFamily):
    """x |GHZ><GHZ| + (1 - x) I/d^n on n qudits of dimension d."""

    x: float
    d: int = 2
    n: int = 2

    def __post_init__(self):
        _check_x(self.x)
        if self.d < 2 or self.n < 2:
            raise InvalidFamilyParams("GhzWerner needs d >= 2 and n >= 2")

    @property
    def dims(self):
        return (self.d,) * self.n

    def density(self):
        N = self.d**self.n
        mat = self.x * projector(ghz_ket(self.d, self.n)) + (1 - self.x) * np.eye(N) / N
        return DensityMatrix(mat, self.dims)


def make_density(family: StateFamily) -> DensityMatrix:
    return family.density()


# --- subsystem operations ---------------------------------------------------

def normalize_subsystems(rho_or_dims, subsystems) -> tuple:
    """Sorted tuple of subsystem indices; accepts an int or any iterable."""
    dims = rho_or_dims.dims if isinstance(rho_or_dims, DensityMatrix) else tuple(rho_or_dims)
    if isinstance(subsystems, (int, np.integer)):
        subsystems = (int(subsystems),)
    keep = tuple(sorted(set(int(s) for s in subsystems)))
    if not keep:
        raise BadSubsystemSet("subsystem set is empty")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise BadSubsystemSet(f"subsystems {keep} out of range for dims {dims}")
    if len(keep) == len(dims):
        raise BadSubsystemSet("subsystem set must be a strict subset")
    return keep


def complement(dims, keep) -> tuple:
    return tuple(i for i in range(len(dims)) if i not in keep)


def _reduce(matrix: np.ndarray, dims: tuple, keep: tuple) -> np.ndarray:
    k = len(dims)
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if 2 * k > len(letters):
        raise BadSubsystemSet("too many subsystems")
    rows = list(letters[:k])
    cols = [rows[i] if i not in keep else letters[k + i] for i in range(k)]
    out = "".join(rows[i] for i in keep) + "".join(cols[i] for i in keep)
    tensor = matrix.reshape(dims + dims)
    dk = prod(dims[i] for i in keep)
    return np.einsum(f"{''.join(rows)}{''.join(cols)}->{out}", tensor).reshape(dk, dk)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on the subsystems in ``keep`` (others traced out)."""
    keep = normalize_subsystems(rho, keep)
    reduced = _reduce(rho.matrix, rho.dims, keep)
    return DensityMatrix(reduced, tuple(rho.dims[i] for i in keep))


def partial_transpose(rho, subsystem, dims=None) -> np.ndarray:
    """Transpose the indices of the given subsystem(s); the result need not be PSD."""
    if isinstance(rho, DensityMatrix):
        matrix, dims = rho.matrix, rho.dims
    else:
        matrix = as_matrix(rho)
        dims = tuple(dims) if dims is not None else (matrix.shape[0],)
    if isinstance(subsystem, (int, np.integer)):
        subsystem = (int(subsystem),)
    subsystem = tuple(subsystem)
    if any(s < 0 or s >= len(dims) for s in subsystem):
        raise BadSubsystemIndex(f"subsystem {subsystem} out of range for dims {dims}")
    k = len(dims)
    tensor = matrix.reshape(dims + dims)
    axes = list(range(2 * k))
    for s in subsystem:
        axes[s], axes[k + s] = axes[k + s], axes[s]
    return tensor.transpose(axes).reshape(matrix.shape)


def embed(op_a: np.ndarray, dims: tuple, keep: tuple) -> np.ndarray:
    """``op_a`` on the ``keep`` subsystems tensored with identity elsewhere, in
    the original subsystem order."""
    rest = complement(dims, keep)
    d_rest = prod(dims[i] for i in rest)
    full = np.kron(op_a, np.eye(d_rest))
    order = keep + rest
    k = len(dims)
    permuted_dims = tuple(dims[i] for i in order)
    tensor = full.reshape(permuted_dims + permuted_dims)
    inverse = np.argsort(order)
    tensor = tensor.transpose(list(inverse) + [k + i for i in inverse])
    n = prod(dims)
    return tensor.reshape(n, n)


def reduction_operator(rho: DensityMatrix, subsystem) -> np.ndarray:
    """rho_A (x) I_B - rho; non-negative for every separable rho."""
    try:
        keep = normalize_subsystems(rho, subsystem)
    except BadSubsystemSet as exc:
        raise BadSubsystemIndex(str(exc)) from None
    rho_a = _reduce(rho.matrix, rho.dims, keep)
    return embed(rho_a, rho.dims, keep) - rho.matrix


def random_pure_state(rng: np.random.Generator, d: int) -> np.ndarray:
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    return psi / np.linalg.norm(psi)


def sample_separable(rng_seed: int, dims=(2, 2), num_terms: int = 4) -> DensityMatrix:
    """Random separable state sum_a w_a rho_A^a (x) rho_B^a.

    Factors are Haar-random pure states, weights are flat-Dirichlet. The
    generator is Philox (counter based) keyed by ``rng_seed``, so the seed
    fully determines the output.
    """
    if num_terms < 1:
        raise ValueError("num_terms must be >= 1")
    dims = tuple(int(d) for d in dims)
    rng = np.random.Generator(np.random.Philox(int(rng_seed)))
    weights = rng.dirichlet(np.ones(num_terms))
    mat = np.zeros((prod(dims), prod(dims)), dtype=complex)
    for w in weights:
        psi = random_pure_state(rng, dims[0])
        for d in dims[1:]:
            psi = np.kron(psi, random_pure_state(rng, d))
        mat += w * projector(psi)
    return DensityMatrix(mat, dims)


def random_density(rng: np.random.Generator, dims=(2, 2), rank=None) -> DensityMatrix:
    """Random (generally entangled) density matrix ``G G^H / Tr`` with G of the given rank."""
    n = prod(dims)
    rank = n if rank is None else rank
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    mat = g @ g.conj().T
    return DensityMatrix(mat / np.trace(mat).real, tuple(dims))
