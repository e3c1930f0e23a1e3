import numpy as np
import pytest

_ACCEPTANCE = {}


def random_hermitian(rng, n, scale=1.0):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (x + x.conj().T) / 2


def random_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_probs(rng, n):
    return rng.dirichlet(np.ones(n))


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE[report.nodeid] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.outcome != "passed":
        _ACCEPTANCE[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in sorted(_ACCEPTANCE.items()):
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
