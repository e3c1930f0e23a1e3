"""Separability tests: majorization (disorder) criterion, largest-eigenvalue
test, PPT, reduction criterion, entropic sign tests, and root finding along a
one-parameter state family.
"""

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np

from .entropies import (
    DEFAULT_BATTERY,
    EntropicFunction,
    GqForm,
    as_spectrum,
    reduced_spectra,
    s_f_gap,
    spectrum,
    threshold_witness,
)
from .errors import NoSignChange
from .linalg import eigvalsh
from .states import (
    DensityMatrix,
    StateFamily,
    complement,
    normalize_subsystems,
    partial_trace,
    partial_transpose,
    reduction_operator,
)
from .tolerances import TOL


@dataclass(frozen=True)
class MajorizationVerdict:
    is_more_mixed: bool
    first_violation_index: Optional[int]  # 1-based, as in S_1, S_2, ...
    margin: float                         # min_i (S'_i - S_i)


def majorization_compare(spec, spec_ref, tol: float = TOL.majorization) -> MajorizationVerdict:
    """Is ``spec`` more mixed than (majorized by) ``spec_ref``?

    The shorter spectrum is padded with zeros. Partial sums i = 1..n-1 are
    compared with tolerance ``tol``.
    """
    spec, spec_ref = as_spectrum(spec), as_spectrum(spec_ref)
    n = max(len(spec), len(spec_ref))
    sums = np.cumsum(spec.padded(n))[:-1]
    sums_ref = np.cumsum(spec_ref.padded(n))[:-1]
    if n == 1:
        return MajorizationVerdict(True, None, 0.0)
    diff = sums_ref - sums
    bad = np.flatnonzero(diff < -tol)
    first = int(bad[0]) + 1 if bad.size else None
    return MajorizationVerdict(first is None, first, float(diff.min()))


def majorization_witness(spec, spec_ref) -> Optional[GqForm]:
    """Piecewise-linear GqForm whose entropy ranks ``spec`` below ``spec_ref``.

    Uses sum_j (p_j - t)_+ : p is majorized by p' iff this never exceeds the
    same sum for p'. The excess is piecewise linear in t, so its maximum sits
    on one of the eigenvalues. Returns None when no threshold in (0, 1) works.
    """
    spec, spec_ref = as_spectrum(spec), as_spectrum(spec_ref)

    def excess(t):
        return np.maximum(spec.probs - t, 0).sum() - np.maximum(spec_ref.probs - t, 0).sum()

    candidates = np.unique(np.concatenate([spec.probs, spec_ref.probs]))
    candidates = candidates[(candidates > 0) & (candidates < 1)]
    if candidates.size == 0:
        return None
    gaps = np.array([excess(t) for t in candidates])
    best = int(np.argmax(gaps))
    if gaps[best] <= 0:
        return None
    return threshold_witness(float(candidates[best]))


def disorder_criterion(rho: DensityMatrix, subsystem_a) -> MajorizationVerdict:
    """Is rho more mixed than rho_A? Necessary (not sufficient) for separability."""
    spec, spec_a = reduced_spectra(rho, subsystem_a)
    return majorization_compare(spec, spec_a)


class LargestEigResult(NamedTuple):
    p1: float
    p1_a: float
    passed: bool


def largest_eig_test(rho: DensityMatrix, subsystem_a) -> LargestEigResult:
    """p1 <= p1_A holds for separable states; failure certifies entanglement."""
    spec, spec_a = reduced_spectra(rho, subsystem_a)
    return LargestEigResult(spec.p1, spec_a.p1, spec.p1 <= spec_a.p1 + TOL.largest_eig)


def ppt_test(rho: DensityMatrix, subsystem=0) -> float:
    """Smallest eigenvalue of the partial transpose (negative => entangled)."""
    return float(eigvalsh(partial_transpose(rho, subsystem))[-1])


def reduction_min_eigenvalue(rho: DensityMatrix, subsystem=0) -> float:
    return float(eigvalsh(reduction_operator(rho, subsystem))[-1])


def entropic_test(rho: DensityMatrix, subsystem_a, f: EntropicFunction) -> float:
    """S_f^A = S_f(rho) - S_f(rho_A); a negative value certifies entanglement."""
    spec, spec_a = reduced_spectra(rho, subsystem_a)
    return s_f_gap(spec, spec_a, f)


# --- root finding along a family --------------------------------------------

def bracket_and_bisect(fn: Callable[[float], float], lo: float = 0.0, hi: float = 1.0,
                       grid: int = TOL.root_grid, xtol: float = TOL.root_xtol) -> float:
    """First sign change of ``fn`` on an equispaced grid, refined by bisection.

    Exact zeros on the grid are skipped when looking for the bracket, so a
    function that vanishes at an endpoint (pure or classical states) still
    brackets its interior root.
    """
    xs = np.linspace(lo, hi, grid)
    prev_x, prev_s = None, 0.0
    bracket = None
    for x in xs:
        s = np.sign(fn(float(x)))
        if s == 0:
            continue
        if prev_s != 0 and s != prev_s:
            bracket = (prev_x, float(x), prev_s)
            break
        prev_x, prev_s = float(x), s
    if bracket is None:
        raise NoSignChange(f"no sign change on a {grid}-point grid over [{lo}, {hi}]")
    a, b, sa = bracket
    while b - a > xtol:
        mid = 0.5 * (a + b)
        sm = np.sign(fn(mid))
        if sm == 0:
            return mid
        if sm == sa:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def _family_subsystem(family: StateFamily, subsystem_a):
    return (0,) if subsystem_a is None else subsystem_a


def find_entropic_root(family: StateFamily, subsystem_a, f: EntropicFunction) -> float:
    """x where S_f^A changes sign along ``family`` (x in [0, 1])."""
    sub = _family_subsystem(family, subsystem_a)

    def fn(x):
        return entropic_test(family.with_x(x).density(), sub, f)

    return bracket_and_bisect(fn)


def find_largest_eig_crossing(family: StateFamily, subsystem_a) -> float:
    """x where p1 - p1_A changes sign along ``family``."""
    sub = _family_subsystem(family, subsystem_a)

    def fn(x):
        res = largest_eig_test(family.with_x(x).density(), sub)
        return res.p1 - res.p1_a

    return bracket_and_bisect(fn)


# --- aggregate report -------------------------------------------------------

def _sign(value: float) -> int:
    # raw sign: large-q values are tiny but accurate, see s_f_gap
    return int(np.sign(value))


@dataclass
class CriteriaReport:
    p1: float
    p1_A: float
    p1_B: float
    largest_eig_pass: bool
    disorder_pass_A: bool
    disorder_pass_B: bool
    ppt_min_eigenvalue: float
    reduction_min_eigenvalue: float
    entropic_signs: dict = field(default_factory=dict)
    entropic_values: dict = field(default_factory=dict)
    disorder_A: Optional[MajorizationVerdict] = None
    disorder_B: Optional[MajorizationVerdict] = None

    @property
    def ppt_entangled(self) -> bool:
        return self.ppt_min_eigenvalue < -TOL.psd

    @property
    def entropic_detects(self) -> bool:
        return any(v < -TOL.entropic for v in self.entropic_values.values())

    @property
    def entangled(self) -> bool:
        """True when at least one necessary condition for separability fails."""
        return (
            self.ppt_entangled
            or self.entropic_detects
            or not self.disorder_pass_A
            or not self.disorder_pass_B
            or not self.largest_eig_pass
            or self.reduction_min_eigenvalue < -TOL.psd
        )

    @property
    def verdict(self) -> str:
        if not self.entangled:
            return "separability not excluded"
        if self.entropic_detects or not (self.disorder_pass_A and self.disorder_pass_B):
            return "entangled, detected by entropic criteria"
        return "entangled, undetected by entropic criteria"


def classify(rho: DensityMatrix, subsystem_a=0, battery=DEFAULT_BATTERY) -> CriteriaReport:
    keep = normalize_subsystems(rho, subsystem_a)
    rest = complement(rho.dims, keep)
    spec = spectrum(rho)
    spec_a = spectrum(partial_trace(rho, keep))
    spec_b = spectrum(partial_trace(rho, rest))
    dis_a = majorization_compare(spec, spec_a)
    dis_b = majorization_compare(spec, spec_b)
    values = {(f.name, f.q): s_f_gap(spec, spec_a, f) for f in battery}
    return CriteriaReport(
        p1=spec.p1,
        p1_A=spec_a.p1,
        p1_B=spec_b.p1,
        largest_eig_pass=spec.p1 <= spec_a.p1 + TOL.largest_eig,
        disorder_pass_A=dis_a.is_more_mixed,
        disorder_pass_B=dis_b.is_more_mixed,
        ppt_min_eigenvalue=ppt_test(rho, keep),
        reduction_min_eigenvalue=reduction_min_eigenvalue(rho, keep),
        entropic_signs={key: _sign(v) for key, v in values.items()},
        entropic_values=values,
        disorder_A=dis_a,
        disorder_B=dis_b,
    )
