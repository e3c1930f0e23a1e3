"""Closed-form thresholds and spectra for the state families.

Everything here is scalar arithmetic on ``math`` so it stays independent of
the matrix pipeline it is used to check.
"""

import math
from typing import Callable, NamedTuple

from .errors import DomainError, InvalidDistribution, InvalidFamilyParams, UnknownTag

LN2 = math.log(2.0)


def _unit(name, value):
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value}")


def sigma1_singlet_polarized(x: float) -> float:
    """Lowest partial-transpose eigenvalue of x|singlet><singlet| + (1-x)|uu><uu|."""
    _unit("x", x)
    return 0.5 * (1.0 - x - math.sqrt(1.0 - 2.0 * x * (1.0 - x)))


class SingletProductValues(NamedTuple):
    sigma1: float
    z: float
    x_c: float
    p1: float
    p1_A: float


def singlet_product_values(x: float, r: float) -> SingletProductValues:
    """Thresholds for x|singlet><singlet| + (1-x)|uv><uv| with r = |<u|v>|^2.

    rho has eigenvalues ((1+z)/2, (1-z)/2, 0, 0); both reductions have
    (1 - x/2, x/2).
    """
    _unit("x", x)
    _unit("r", r)
    sigma1 = 0.5 * (1.0 - x - math.sqrt(1.0 - 2.0 * x * (1.0 - x) * r))
    z = math.sqrt(max(0.0, 1.0 - 2.0 * x * (1.0 - x) * (1.0 + r)))
    x_c = 2.0 * r / (1.0 + 2.0 * r)
    return SingletProductValues(sigma1, z, x_c, 0.5 * (1.0 + z), 1.0 - 0.5 * x)


class PsiMixtureValues(NamedTuple):
    x_e: float
    x_c: float
    sigma1_branch: Callable[[float], float]
    branch_onset: float


def _psi_params(a: complex, b: complex):
    a2, b2 = abs(a) ** 2, abs(b) ** 2
    if abs(a2 + b2 - 1.0) > 1e-12:
        raise InvalidFamilyParams("need |a|^2 + |b|^2 = 1")
    return abs(a) * abs(b), abs(a2 - b2)


def psi_mixture_values(a: complex, b: complex) -> PsiMixtureValues:
    """Entanglement onset x_e, largest-eigenvalue threshold x_c, and the PPT
    eigenvalue branch valid for x > branch_onset, for
    x|psi><psi| + (1-x)(|uu><uu| + |dd><dd|)/2 with psi = a|ud> + b|du>.

    Below ``branch_onset`` the branch is not the lowest eigenvalue and calling
    it raises DomainError.
    """
    ab, diff = _psi_params(a, b)
    x_e = 1.0 / (1.0 + 2.0 * ab)
    x_c = 1.0 / (2.0 - diff)
    onset = 1.0 / (2.0 * (1.0 + ab) - diff)

    def sigma1_branch(x: float) -> float:
        _unit("x", x)
        if x < onset:
            raise DomainError(f"branch formula only valid for x >= {onset:.6g}")
        return 0.5 * (1.0 - x * (1.0 + 2.0 * ab))

    return PsiMixtureValues(x_e, x_c, sigma1_branch, onset)


def psi_mixture_largest(x: float, a: complex, b: complex):
    """(p1, p1_A): rho has (x, (1-x)/2, (1-x)/2, 0), rho_A has (1 +- x(|b|^2-|a|^2))/2."""
    _unit("x", x)
    _, diff = _psi_params(a, b)
    return max(x, 0.5 * (1.0 - x)), 0.5 * (1.0 + x * diff)


class BellDiagonalValues(NamedTuple):
    separable: bool
    ppt_eigs: tuple


def bell_diagonal_values(q0: float, q1: float, q2: float, q3: float) -> BellDiagonalValues:
    qs = (q0, q1, q2, q3)
    if min(qs) < 0.0 or abs(sum(qs) - 1.0) > 1e-12:
        raise InvalidDistribution(f"Bell weights must form a probability vector, got {qs}")
    return BellDiagonalValues(max(qs) <= 0.5, tuple(0.5 - q for q in qs))


class WernerValues(NamedTuple):
    p1: float
    x_c: float


def werner_values(x: float) -> WernerValues:
    _unit("x", x)
    return WernerValues((1.0 + 3.0 * x) / 4.0, 1.0 / 3.0)


ASYMPTOTE_GAMMA = {"tsallis": 1.0, "exp": 2.0}


def werner_xr_asymptote(q: float, entropy_tag: str) -> float:
    """Large-q root 1/3 + 2 gamma ln2 / (3q); gamma = 1 (Tsallis) or 2 (exponential form)."""
    try:
        gamma = ASYMPTOTE_GAMMA[entropy_tag]
    except KeyError:
        raise UnknownTag(f"no asymptote for entropy {entropy_tag!r}") from None
    if not q > 0:
        raise DomainError("q must be positive")
    return 1.0 / 3.0 + 2.0 * gamma * LN2 / (3.0 * q)


def _check_ghz(d, n, m):
    if d < 2 or n < 2 or not 1 <= m <= n - 1:
        raise DomainError(f"need d >= 2, n >= 2 and 1 <= m <= n-1 (got d={d}, n={n}, m={m})")


def ghz_werner_xc(d: int, n: int, m: int) -> float:
    """Separability threshold p1 = p1^(m) for the split of the first m qudits."""
    _check_ghz(d, n, m)
    return 1.0 / (1.0 + d ** (n - 1) * (d - 1) / (d ** (n - m) - 1))


def ghz_werner_largest(x: float, d: int, n: int, m: int):
    """(p1, p1^(m)) = (x + (1-x)/d^n, x/d + (1-x)/d^m)."""
    _unit("x", x)
    _check_ghz(d, n, m)
    return x + (1.0 - x) / d**n, x / d + (1.0 - x) / d**m
