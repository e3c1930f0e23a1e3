"""Trace-form entropies S_f(rho) = sum_i f(p_i) for concave f with f(0) = f(1) = 0,
their conditional (subsystem-difference) versions, Renyi entropies and the
classical analogue on joint probability tables.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import (
    DegenerateNormalization,
    DomainError,
    InvalidDistribution,
    InvalidEntropicFunction,
)
from .states import DensityMatrix, partial_trace
from .tolerances import TOL

TSALLIS_VN_SWITCH = 1e-6
EXP_SMALL_Q = 1e-6
RENYI_VN_SWITCH = 1e-6
TINY = 1e-300


def _xlogx(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p)
    pos = p > TINY
    out[pos] = p[pos] * np.log(p[pos])
    return out


def _power(p: np.ndarray, q: float) -> np.ndarray:
    """p**q as exp(q ln p), with 0**q = 0 and underflow flushed to zero."""
    out = np.zeros_like(p)
    pos = p > 0.0
    with np.errstate(under="ignore"):
        out[pos] = np.exp(q * np.log(p[pos]))
    return out


class EntropicFunction:
    """A concave f on [0, 1] written as ``f(p) = slope * p + nonlinear(p)``.

    The linear part integrates to ``slope`` over any normalised spectrum, so
    differences between two spectra only need ``nonlinear``; this avoids the
    cancellation that ruins large-q Tsallis differences.
    """

    name = "f"
    q = None

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        return self.slope * p + self.nonlinear(p)

    slope = 0.0

    def nonlinear(self, p: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def g(self, p):
        """The convex function with f = k (p - g); used to normalise S_f^A."""
        raise NotImplementedError

    @property
    def k(self) -> float:
        raise NotImplementedError

    @property
    def label(self) -> str:
        return self.name if self.q is None else f"{self.name}(q={self.q:g})"


@dataclass(frozen=True)
class VonNeumann(EntropicFunction):
    k: float = 1.0
    name = "vn"

    def __post_init__(self):
        if not self.k > 0:
            raise InvalidEntropicFunction("VonNeumann needs k > 0")

    @property
    def q(self):
        return 1.0

    @property
    def label(self):
        return "vn"

    def nonlinear(self, p):
        return -self.k * _xlogx(np.asarray(p, dtype=float))

    def g(self, p):
        return np.asarray(p, dtype=float)


@dataclass(frozen=True)
class Tsallis(EntropicFunction):
    """f(p) = (p - p^q)/(q - 1); the von Neumann form -p ln p within 1e-6 of q = 1."""

    q: float
    name = "tsallis"

    def __post_init__(self):
        if not self.q > 0:
            raise InvalidEntropicFunction(f"Tsallis needs q > 0, got {self.q}")

    @property
    def _is_vn(self):
        return abs(self.q - 1.0) < TSALLIS_VN_SWITCH

    @property
    def slope(self):
        return 0.0 if self._is_vn else 1.0 / (self.q - 1.0)

    @property
    def k(self):
        return 1.0 if self._is_vn else 1.0 / (self.q - 1.0)

    def nonlinear(self, p):
        p = np.asarray(p, dtype=float)
        if self._is_vn:
            return -_xlogx(p)
        return -_power(p, self.q) / (self.q - 1.0)

    def g(self, p):
        return _power(np.asarray(p, dtype=float), self.q)


@dataclass(frozen=True)
class ExpForm(EntropicFunction):
    """f(p) = [p - (e^{qp} - 1)/(e^q - 1)]/q, concave for every real q; p(1-p)/2 at q = 0."""

    q: float
    name = "exp"

    @property
    def _is_small(self):
        return abs(self.q) < EXP_SMALL_Q

    @property
    def slope(self):
        return 0.5 if self._is_small else 1.0 / self.q

    @property
    def k(self):
        return self.slope

    def g(self, p):
        p = np.asarray(p, dtype=float)
        q = self.q
        if self._is_small:
            return p.copy()
        if q > 0:
            # e^{q(p-1)} (1 - e^{-qp}) / (1 - e^{-q}); never forms e^q
            with np.errstate(under="ignore"):
                return np.exp(q * (p - 1.0)) * (-np.expm1(-q * p)) / (-np.expm1(-q))
        return np.expm1(q * p) / np.expm1(q)

    def nonlinear(self, p):
        p = np.asarray(p, dtype=float)
        if self._is_small:
            return -0.5 * p * p
        return -self.g(p) / self.q


def _grid_concave(values: np.ndarray, tol: float) -> bool:
    return bool(np.all(values[1:-1] >= 0.5 * (values[:-2] + values[2:]) - tol))


@dataclass(frozen=True)
class GqForm(EntropicFunction):
    """f(p) = k [p - g(p)] for a user-supplied convex increasing g, g(0) = 0, g(1) = 1.

    ``g`` is checked on a 101-point grid when the object is built.
    """

    g_fn: Callable
    k: float = 1.0
    tag: str = "gq"

    def __post_init__(self):
        if not self.k > 0:
            raise InvalidEntropicFunction("GqForm needs k > 0")
        grid = np.linspace(0.0, 1.0, 101)
        gv = self.g(grid)
        if abs(gv[0]) > 1e-12 or abs(gv[-1] - 1.0) > 1e-12:
            raise InvalidEntropicFunction("g must satisfy g(0) = 0 and g(1) = 1")
        if np.any(np.diff(gv) < -1e-12):
            raise InvalidEntropicFunction("g must be increasing")
        if not _grid_concave(grid - gv, 1e-12):
            raise InvalidEntropicFunction("p - g(p) is not concave; g must be convex")

    @property
    def slope(self):
        return self.k

    def g(self, p):
        p = np.asarray(p, dtype=float)
        try:
            out = np.asarray(self.g_fn(p), dtype=float)
            if out.shape == p.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.vectorize(lambda t: float(self.g_fn(float(t))), otypes=[float])(p)

    def nonlinear(self, p):
        return -self.k * self.g(p)

    @property
    def name(self):
        return self.tag

    @property
    def label(self):
        return self.tag


def threshold_witness(t: float) -> GqForm:
    """GqForm with g(p) = max(0, (p - t)/(1 - t)); detects majorization breaks at level t."""
    if not 0.0 <= t < 1.0:
        raise InvalidEntropicFunction(f"threshold must lie in [0, 1), got {t}")
    return GqForm(lambda p: np.maximum(0.0, (p - t) / (1.0 - t)), tag=f"witness(t={t:.6g})")


DEFAULT_BATTERY = (
    VonNeumann(),
    *(Tsallis(q) for q in (0.5, 1.0, 2.0, 5.0, 20.0, 100.0)),
    *(ExpForm(q) for q in (0.0, 1.0, 5.0, 20.0, 100.0)),
)


def f_eval(f: EntropicFunction, p: float) -> float:
    if not -1e-12 <= p <= 1.0 + 1e-12:
        raise DomainError(f"probability {p} outside [0, 1]")
    return float(f(np.array([min(max(p, 0.0), 1.0)]))[0])


def is_concave_on_grid(f: EntropicFunction, points: int = 99, tol: float = 1e-12) -> bool:
    grid = np.linspace(0.0, 1.0, points + 2)
    return _grid_concave(f(grid), tol)


# --- spectra ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Spectrum:
    """Descending probability vector with its partial sums."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).ravel().copy()
        if p.size == 0:
            raise InvalidDistribution("empty spectrum")
        if np.any(np.diff(p) > 0):
            raise InvalidDistribution("spectrum must be sorted in descending order")
        if p[-1] < 0 or p[0] > 1:
            raise InvalidDistribution("probabilities must lie in [0, 1]")
        if abs(p.sum() - 1.0) > TOL.spectrum_sum:
            raise InvalidDistribution(f"probabilities sum to {p.sum()!r}")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @classmethod
    def from_eigenvalues(cls, values) -> "Spectrum":
        """Sort, clip solver noise to zero and renormalise.

        Values in [-TOL.psd, TOL.eig_zero] become 0; anything more negative is
        rejected as a genuinely indefinite input.
        """
        p = np.sort(np.asarray(values, dtype=float).ravel())[::-1]
        if p.size and p[-1] < -TOL.psd:
            raise InvalidDistribution(f"negative eigenvalue {p[-1]:.3g}")
        p = np.where(p <= TOL.eig_zero, 0.0, p)
        total = p.sum()
        if abs(total - 1.0) > TOL.spectrum_sum:
            raise InvalidDistribution(f"eigenvalues sum to {total!r}")
        return cls(np.minimum(p / total, 1.0))

    @cached_property
    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self.probs)

    @property
    def p1(self) -> float:
        return float(self.probs[0])

    @property
    def top_multiplicity(self) -> int:
        return int(np.sum(self.probs >= self.probs[0] - TOL.top_multiplicity))

    def __len__(self):
        return self.probs.size

    def padded(self, n: int) -> np.ndarray:
        return np.concatenate([self.probs, np.zeros(max(0, n - self.probs.size))])

    def __repr__(self):
        return f"Spectrum({np.array2string(self.probs, precision=6)})"


def as_spectrum(obj) -> Spectrum:
    if isinstance(obj, Spectrum):
        return obj
    if isinstance(obj, DensityMatrix):
        return spectrum(obj)
    return Spectrum.from_eigenvalues(obj)


def spectrum(rho: DensityMatrix) -> Spectrum:
    return Spectrum.from_eigenvalues(rho.eigenvalues)


# --- entropies --------------------------------------------------------------

def s_f(spec, f: EntropicFunction) -> float:
    """Generalised entropy sum_i f(p_i)."""
    return float(np.sum(f(as_spectrum(spec).probs)))


def s_f_gap(spec, spec_ref, f: EntropicFunction) -> float:
    """S_f(spec) - S_f(spec_ref) for two normalised spectra (linear parts cancel)."""
    p = as_spectrum(spec).probs
    p_ref = as_spectrum(spec_ref).probs
    return float(np.sum(f.nonlinear(p)) - np.sum(f.nonlinear(p_ref)))


def reduced_spectra(rho: DensityMatrix, subsystem_a):
    return spectrum(rho), spectrum(partial_trace(rho, subsystem_a))


def conditional_s_f(rho: DensityMatrix, subsystem_a, f: EntropicFunction) -> float:
    """S_f(rho) - S_f(rho_A), with rho_A keeping the subsystems in ``subsystem_a``."""
    spec, spec_a = reduced_spectra(rho, subsystem_a)
    return s_f_gap(spec, spec_a, f)


def normalized_gap(spec, spec_a, f: EntropicFunction) -> float:
    denom = float(np.sum(f.g(as_spectrum(spec_a).probs)))
    if not denom > TINY:
        raise DegenerateNormalization(f"Tr g(rho_A) = {denom!r} underflows for {f.label}")
    return s_f_gap(spec, spec_a, f) / denom


def normalized_conditional(rho: DensityMatrix, subsystem_a, f: EntropicFunction) -> float:
    """S_f^A / Tr g_q(rho_A); for Tsallis this is the q-conditional entropy S_q(B|A)."""
    spec, spec_a = reduced_spectra(rho, subsystem_a)
    return normalized_gap(spec, spec_a, f)


def dominant_term(spec, f: EntropicFunction) -> float:
    """Large-q approximation k (1 - d_1 g(p_1)), d_1 the multiplicity of p_1."""
    spec = as_spectrum(spec)
    g1 = float(f.g(np.array([spec.p1]))[0])
    return f.k * (1.0 - spec.top_multiplicity * g1)


def renyi(spec, alpha: float) -> float:
    """Renyi entropy ln(sum p^alpha)/(1 - alpha), natural log; von Neumann near alpha = 1."""
    if not alpha > 0:
        raise DomainError(f"Renyi order must be positive, got {alpha}")
    p = as_spectrum(spec).probs
    p = p[p > 0]
    if abs(alpha - 1.0) < RENYI_VN_SWITCH:
        return float(-np.sum(p * np.log(p)))
    logs = alpha * np.log(p)
    top = logs.max()
    log_sum = top + np.log(np.sum(np.exp(logs - top)))
    return float(log_sum / (1.0 - alpha))


def classical_conditional(table, f: EntropicFunction) -> float:
    """sum_ij f(p_ij) - sum_i f(p_i) with p_i = sum_j p_ij; never negative for concave f."""
    p = np.asarray(table, dtype=float)
    if p.ndim != 2:
        raise InvalidDistribution("joint table must be two-dimensional")
    if np.any(p < 0) or abs(p.sum() - 1.0) > TOL.distribution:
        raise InvalidDistribution("joint table must be non-negative and sum to 1")
    marginal = p.sum(axis=1)
    return float(np.sum(f.nonlinear(p.ravel())) - np.sum(f.nonlinear(marginal)))
