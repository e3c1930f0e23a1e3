"""End-to-end acceptance checks, one test per criterion.

A PASS/FAIL line per criterion is printed in the pytest terminal summary.
"""

import subprocess
import sys
from itertools import permutations
from pathlib import Path

import mpmath
import numpy as np
import pytest

from entropic_separability.criteria import (
    bracket_and_bisect,
    disorder_criterion,
    entropic_test,
    find_entropic_root,
    find_largest_eig_crossing,
    majorization_compare,
    majorization_witness,
    ppt_test,
    reduction_min_eigenvalue,
)
from entropic_separability.entropies import (
    DEFAULT_BATTERY,
    ExpForm,
    Spectrum,
    Tsallis,
    classical_conditional,
    conditional_s_f,
    s_f,
    spectrum,
)
from entropic_separability.linalg import eig_hermitian
from entropic_separability.oracles import (
    ghz_werner_xc,
    psi_mixture_values,
    sigma1_singlet_polarized,
    singlet_product_values,
    werner_xr_asymptote,
)
from entropic_separability.states import (
    GhzWerner,
    PsiMixture,
    SingletPolarized,
    SingletProduct,
    WernerPopescu,
    density_from_ket,
    partial_trace,
    random_pure_state,
    sample_separable,
)

from conftest import random_hermitian

GRID = np.linspace(0.0, 1.0, 41)
INPUTS = Path(__file__).resolve().parents[1] / "demos" / "inputs"


def test_ac01_universal_sign_point():
    family = SingletPolarized(0.0)
    for f in DEFAULT_BATTERY:
        assert abs(find_entropic_root(family, 0, f) - 2 / 3) <= 1e-8, f.label


def test_ac02_ppt_closed_forms():
    for x in GRID:
        numeric = ppt_test(SingletPolarized(x).density(), 0)
        assert abs(numeric - sigma1_singlet_polarized(x)) <= 1e-9
        if x >= 0.025:
            assert numeric < 0
        for r in (0.0, 0.25, 0.5, 1.0):
            numeric = ppt_test(SingletProduct.from_overlap(x, r).density(), 0)
            assert abs(numeric - singlet_product_values(x, r).sigma1) <= 1e-9


def test_ac03_detection_gap():
    for r in (0.25, 0.5, 1.0):
        family = SingletProduct.from_overlap(0.0, r)
        x_c = 2 * r / (1 + 2 * r)
        assert abs(find_largest_eig_crossing(family, 0) - x_c) <= 1e-8
        rho = family.with_x(x_c / 2).density()
        assert all(entropic_test(rho, 0, f) >= -1e-10 for f in DEFAULT_BATTERY)
        assert ppt_test(rho, 0) < -1e-6


def _psi_tsallis_root_hp(q, lo, hi):
    """Root of Tr rho^q = Tr rho_A^q at 50 digits, by bisection on [lo, hi]."""
    mpmath.mp.dps = 50
    q = mpmath.mpf(q)

    def g(x):
        rho = x**q + 2 * ((1 - x) / 2) ** q
        rho_a = ((1 + mpmath.mpf("0.6") * x) / 2) ** q + ((1 - mpmath.mpf("0.6") * x) / 2) ** q
        return rho_a - rho

    a, b = mpmath.mpf(lo), mpmath.mpf(hi)
    ga = g(a)
    assert ga * g(b) < 0
    for _ in range(120):
        m = (a + b) / 2
        if g(m) * ga > 0:
            a, ga = m, g(m)
        else:
            b = m
    return float((a + b) / 2)


def test_ac04_psi_mixture_thresholds_and_roots():
    vals = psi_mixture_values(np.sqrt(0.8), np.sqrt(0.2))
    assert abs(vals.x_e - 5 / 9) <= 1e-9
    assert abs(vals.x_c - 5 / 7) <= 1e-9
    family = PsiMixture.from_a2(0.0, 0.8)
    # numeric x_e from the partial transpose, numeric x_c from the eigenvalues
    x_e = bracket_and_bisect(lambda x: ppt_test(family.with_x(x).density(), 0) + 1e-13)
    assert abs(x_e - 5 / 9) <= 1e-9
    assert abs(find_largest_eig_crossing(family, 0) - 5 / 7) <= 1e-9
    roots = {q: find_entropic_root(family, 0, Tsallis(q)) for q in (10, 20, 30)}
    assert roots[10] > roots[20] > roots[30]
    assert abs(roots[30] - 5 / 7) <= 1e-6
    for q, xr in roots.items():
        assert abs(xr - _psi_tsallis_root_hp(q, 0.7, 0.9)) <= 1e-8


def test_ac05_werner_asymptotics():
    family = WernerPopescu(0.0)
    q = 100.0
    for f, gamma in ((Tsallis(q), 1.0), (ExpForm(q), 2.0)):
        xr = find_entropic_root(family, 0, f)
        ratio = (xr - 1 / 3) * 3 * q / (2 * gamma * np.log(2))
        assert abs(ratio - 1) <= 0.1, (f.label, ratio)
        assert werner_xr_asymptote(q, f.name) == pytest.approx(1 / 3 + 2 * gamma * np.log(2) / (3 * q))


def test_ac06_ghz_thresholds():
    for d, n in ((2, 2), (2, 3), (3, 2), (3, 3)):
        prev = None
        for m in range(1, n):
            expected = ghz_werner_xc(d, n, m)
            numeric = find_largest_eig_crossing(GhzWerner(0.0, d, n), tuple(range(m)))
            assert abs(numeric - expected) <= 1e-8, (d, n, m)
            if prev is not None:
                assert expected < prev
            prev = expected


def test_ac07_separable_battery():
    for seed in range(500):
        rho = sample_separable(seed, (2, 2), num_terms=(1, 2, 4, 8)[seed % 4])
        for side in (0, 1):
            assert disorder_criterion(rho, side).is_more_mixed, seed
            assert reduction_min_eigenvalue(rho, side) >= -1e-8, seed
            assert all(entropic_test(rho, side, f) >= -1e-10 for f in DEFAULT_BATTERY), seed
        assert ppt_test(rho, 0) >= -1e-8, seed


def _doubly_stochastic(rng, n, terms=4):
    perms = list(permutations(range(n))) if n <= 5 else None
    weights = rng.dirichlet(np.ones(terms))
    mat = np.zeros((n, n))
    for w in weights:
        perm = perms[rng.integers(len(perms))] if perms else rng.permutation(n)
        mat[np.arange(n), list(perm)] += w
    return mat


def test_ac08_majorization_entropy_equivalence():
    rng = np.random.default_rng(8)
    held = violated = 0
    for k in range(500):
        n = int(rng.integers(2, 7))
        p_ref = rng.dirichlet(np.ones(n) * rng.uniform(0.2, 2.0))
        if k % 2 == 0:
            p = _doubly_stochastic(rng, n) @ p_ref
        else:
            p = rng.dirichlet(np.ones(int(rng.integers(2, 7))))
        spec, spec_ref = Spectrum.from_eigenvalues(p), Spectrum.from_eigenvalues(p_ref)
        if majorization_compare(spec, spec_ref).is_more_mixed:
            held += 1
            for f in DEFAULT_BATTERY:
                assert s_f(spec, f) >= s_f(spec_ref, f) - 1e-10, (k, f.label)
        else:
            violated += 1
            w = majorization_witness(spec, spec_ref)
            assert w is not None, k
            assert s_f(spec, w) < s_f(spec_ref, w), k
    assert held >= 250 and violated > 0


def test_ac09_pure_state_identity():
    rng = np.random.default_rng(9)
    dims_cycle = ((2, 2), (3, 3), (2, 4))
    for k in range(100):
        dims = dims_cycle[k % 3]
        rho = density_from_ket(random_pure_state(rng, dims[0] * dims[1]), dims)
        spec_a = spectrum(partial_trace(rho, 0))
        spec_b = spectrum(partial_trace(rho, 1))
        for f in DEFAULT_BATTERY:
            assert abs(conditional_s_f(rho, 0, f) + s_f(spec_a, f)) <= 1e-10, (k, f.label)
            assert abs(s_f(spec_a, f) - s_f(spec_b, f)) <= 1e-10, (k, f.label)


def test_ac10_classical_nonnegativity():
    rng = np.random.default_rng(10)
    for k in range(1000):
        shape = tuple(int(s) for s in rng.integers(1, 6, size=2))
        table = rng.dirichlet(np.ones(shape[0] * shape[1]) * rng.uniform(0.1, 2.0))
        if k % 3 == 0:
            table = table * (rng.random(table.size) < 0.6)
            if table.sum() == 0:
                table[0] = 1.0
            table = table / table.sum()
        table = table.reshape(shape)
        for f in DEFAULT_BATTERY:
            assert classical_conditional(table, f) >= -1e-12, (k, f.label)


def test_ac11_linear_algebra_floor():
    rng = np.random.default_rng(11)
    for k in range(200):
        n = 2 + k % 15
        a = random_hermitian(rng, n)
        vals, vecs = eig_hermitian(a)
        recon = (vecs * vals) @ vecs.conj().T
        assert np.abs(recon - a).max() <= 1e-10, n
        assert abs(vals.sum() - np.trace(a).real) <= 1e-10, n


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "entropic_separability", *argv],
                          capture_output=True)


def test_ac12_cli_determinism():
    for flags in (
        ("--family", "singlet-polarized"),
        ("--family", "psi-mixture", "--a2", "0.8", "--entropy", "tsallis", "--q", "30"),
        ("--family", "singlet-product", "--r", "0.5", "--seed", "3"),
        ("--family", "ghz-werner", "--d", "3", "--n", "3", "--m", "1", "--x-steps", "11"),
    ):
        first, second = _cli("scan", *flags), _cli("scan", *flags)
        assert first.returncode == second.returncode == 0
        assert first.stdout and first.stdout == second.stdout
    for name, status in (("separable_mixture.txt", 0),
                         ("singlet_polarized_half.txt", 1),
                         ("not_normalized.txt", 2)):
        assert _cli("classify", str(INPUTS / name)).returncode == status, name
