import numpy as np
import pytest

from localdetect.linalg import BipartiteState, random_density_matrix

ACCEPTANCE_LINES = []


def random_state(rng, d_s, d_e, rank=None):
    return BipartiteState(random_density_matrix(d_s * d_e, rng, rank), d_s, d_e)


def random_hermitian(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def report():
    def _report(label, passed, detail=""):
        ACCEPTANCE_LINES.append(f"[{label}] {'PASS' if passed else 'FAIL'}  {detail}")
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
