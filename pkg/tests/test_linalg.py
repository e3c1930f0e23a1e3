import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from entropic_separability.errors import NoConvergence, NotHermitian
from entropic_separability.linalg import (
    eig_hermitian,
    jacobi_sweeps,
    kron,
    matrix_function,
)
from entropic_separability.states import SingletPolarized
from entropic_separability.tolerances import TOL

from conftest import random_hermitian, random_unitary


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_permutation_structure():
    x = np.array([[0, 1], [1, 0]])
    out = kron(x, np.eye(2))
    expected = np.zeros((4, 4))
    expected[:2, 2:] = np.eye(2)
    expected[2:, :2] = np.eye(2)
    assert np.array_equal(out, expected)


def test_kron_reduced_singlet_factors_at_x1():
    x = 1.0
    a = np.diag([1 - x / 2, x / 2])
    assert np.allclose(kron(a, a), np.diag([0.25] * 4), atol=0, rtol=0)


def test_kron_entry_layout():
    a = np.arange(6).reshape(2, 3) + 1j
    b = np.arange(4).reshape(4, 1) - 2.0
    out = kron(a, b)
    assert out.shape == (8, 3)
    for i in range(2):
        for j in range(3):
            for k in range(4):
                assert out[i * 4 + k, j] == a[i, j] * b[k, 0]


# integer entries keep every triple product exact, so equality can be bitwise
small = arrays(np.float64, (2, 2), elements=st.integers(-9, 9).map(float))


@given(small, small, small)
def test_kron_associative(a, b, c):
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


def test_eig_diagonal_sorted_descending():
    vals, vecs = eig_hermitian(np.diag([0.25, 0.75]))
    assert np.array_equal(vals, [0.75, 0.25])
    assert np.allclose(np.abs(vecs), [[0, 1], [1, 0]])


def test_eig_singlet_polarized_state():
    vals = eig_hermitian(SingletPolarized(0.4).density().matrix).eigenvalues
    assert np.allclose(vals, [0.6, 0.4, 0, 0], atol=1e-14)


def test_eig_ties_keep_original_order():
    vals, vecs = eig_hermitian(np.diag([1.0, 2.0, 1.0]))
    assert np.array_equal(vals, [2.0, 1.0, 1.0])
    assert np.array_equal(np.argmax(np.abs(vecs), axis=0), [1, 0, 2])


@pytest.mark.parametrize("n", [1, 2, 3, 6, 9])
def test_eig_random_reconstruction(rng, n):
    a = random_hermitian(rng, n)
    vals, vecs = eig_hermitian(a)
    assert np.all(np.diff(vals) <= 0)
    assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(n))) <= 1e-10
    resid = np.max(np.abs(a - (vecs * vals) @ vecs.conj().T))
    assert resid <= TOL.resid * np.max(np.abs(a))
    assert abs(vals.sum() - np.trace(a).real) <= 1e-10


def test_eig_recovers_planted_spectrum(rng):
    for n in (2, 4, 7, 12):
        lam = np.sort(rng.normal(size=n))[::-1]
        u = random_unitary(rng, n)
        a = (u * lam) @ u.conj().T
        assert np.allclose(eig_hermitian(a).eigenvalues, lam, atol=1e-9, rtol=0)


def test_eig_matches_lapack(rng):
    a = random_hermitian(rng, 10)
    ref = np.sort(np.linalg.eigvalsh(a))[::-1]
    assert np.allclose(eig_hermitian(a).eigenvalues, ref, atol=1e-12)


def test_jacobi_sweeps_preserve_frobenius_norm(rng):
    a = random_hermitian(rng, 8)
    norm = np.linalg.norm(a)
    for work, _ in jacobi_sweeps(a):
        assert abs(np.linalg.norm(work) - norm) <= 1e-12 * max(norm, 1.0)


def test_zero_matrix():
    vals, vecs = eig_hermitian(np.zeros((3, 3)))
    assert np.array_equal(vals, np.zeros(3))
    assert np.array_equal(vecs, np.eye(3))


def test_not_hermitian_rejected():
    with pytest.raises(NotHermitian):
        eig_hermitian(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(NotHermitian):
        eig_hermitian(np.ones((2, 3)))


def test_sweep_cap_raises(rng):
    with pytest.raises(NoConvergence):
        for _ in jacobi_sweeps(random_hermitian(rng, 6), max_sweeps=1):
            pass


def test_matrix_function_basics(rng):
    assert np.allclose(matrix_function(np.eye(2) / 2, lambda p: p * p), np.eye(2) / 4)
    rho = SingletPolarized(0.5).density().matrix
    assert np.allclose(matrix_function(rho, lambda p: p), rho, atol=1e-14)
    tsallis2 = matrix_function(rho, lambda p: p - p * p)
    assert abs(np.trace(tsallis2).real - 0.5) <= 1e-14
    a = random_hermitian(rng, 5)
    out = matrix_function(a, np.exp)
    assert np.allclose(out, out.conj().T)
    assert np.allclose(np.sort(np.linalg.eigvalsh(out)), np.sort(np.exp(np.linalg.eigvalsh(a))))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2**32 - 1))
def test_eig_trace_invariant(n, seed):
    a = random_hermitian(np.random.default_rng(seed), n)
    assert abs(eig_hermitian(a).eigenvalues.sum() - np.trace(a).real) <= 1e-10
