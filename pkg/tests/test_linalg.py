import math

import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from localdetect.errors import ContractViolation, DimensionLimitError
from localdetect.linalg import (
    BipartiteState,
    check_density_matrix,
    haar_unitary,
    hermitian_spectrum,
    partial_trace,
    propagator,
    pure_state,
    random_density_matrix,
    state_distance,
    tensor_product,
    trace_norm,
)

from conftest import random_hermitian

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.diag([1.0, -1.0]).astype(complex)
KET0 = np.diag([1.0, 0.0]).astype(complex)
KET1 = np.diag([0.0, 1.0]).astype(complex)
BELL = pure_state([1, 0, 0, 1])

seeds = st.integers(min_value=0, max_value=2**32 - 1)


# -- tensor_product ---------------------------------------------------------

def test_tensor_identity():
    np.testing.assert_array_equal(tensor_product(np.eye(2), np.eye(3)), np.eye(6))


def test_tensor_basis_projectors():
    out = tensor_product(KET0, KET1)
    expected = np.zeros((4, 4))
    expected[1, 1] = 1.0  # |01> sits at composite index 0 * 2 + 1
    np.testing.assert_array_equal(out, expected)


def test_tensor_trace_factorizes(rng):
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    assert abs(np.trace(tensor_product(a, b)) - np.trace(a) * np.trace(b)) < 1e-12


def test_tensor_entry_convention(rng):
    a = rng.standard_normal((2, 3))
    b = rng.standard_normal((3, 2))
    out = tensor_product(a, b)
    for ia, ja, ib, jb in [(1, 2, 0, 1), (0, 0, 2, 1), (1, 1, 1, 0)]:
        assert out[ia * 3 + ib, ja * 2 + jb] == pytest.approx(a[ia, ja] * b[ib, jb])


def test_tensor_dimension_ceiling():
    with pytest.raises(DimensionLimitError):
        tensor_product(np.eye(70), np.eye(70))
    assert tensor_product(np.eye(2), np.eye(3), max_dim=6).shape == (6, 6)
    with pytest.raises(DimensionLimitError):
        tensor_product(np.eye(2), np.eye(3), max_dim=5)


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        tensor_product(np.array([[np.nan]]), np.eye(2))


# -- partial_trace ----------------------------------------------------------

def _partial_trace_loops(m, d_s, d_e):
    out = np.zeros((d_s, d_s), dtype=complex)
    for a in range(d_s):
        for b in range(d_s):
            out[a, b] = sum(m[a * d_e + j, b * d_e + j] for j in range(d_e))
    return out


def test_partial_trace_of_product(rng):
    rs, re = random_density_matrix(3, rng), random_density_matrix(4, rng)
    state = BipartiteState(np.kron(rs, re), 3, 4)
    assert np.max(np.abs(partial_trace(state, "S") - rs)) <= 1e-14
    assert np.max(np.abs(partial_trace(state, "E") - re)) <= 1e-14


def test_partial_trace_bell():
    np.testing.assert_allclose(partial_trace(BipartiteState(BELL, 2, 2), "S"), np.eye(2) / 2, atol=1e-15)


def test_partial_trace_linear(rng):
    r1, r2 = random_density_matrix(6, rng), random_density_matrix(6, rng)
    mix = BipartiteState(0.3 * r1 + 0.7 * r2, 2, 3)
    expected = 0.3 * _partial_trace_loops(r1, 2, 3) + 0.7 * _partial_trace_loops(r2, 2, 3)
    assert np.max(np.abs(partial_trace(mix, "S") - expected)) <= 1e-12


@given(seed=seeds, d_s=st.integers(1, 4), d_e=st.integers(1, 5))
def test_partial_trace_preserves_trace(seed, d_s, d_e):
    rho = BipartiteState(random_density_matrix(d_s * d_e, np.random.default_rng(seed)), d_s, d_e)
    for keep in "SE":
        reduced = partial_trace(rho, keep)
        assert abs(np.trace(reduced) - 1) <= 1e-12
        check_density_matrix(reduced)


def test_partial_trace_bad_tag():
    with pytest.raises(ValueError):
        partial_trace(BipartiteState(BELL, 2, 2), "X")


# -- hermitian_spectrum -----------------------------------------------------

def test_spectrum_diagonal():
    spec = hermitian_spectrum(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(spec.eigenvalues, [1, 2, 3])
    np.testing.assert_allclose(np.abs(spec.eigenvectors), np.eye(3)[:, [1, 2, 0]])


def test_spectrum_pauli_x():
    spec = hermitian_spectrum(PAULI_X)
    np.testing.assert_allclose(spec.eigenvalues, [-1, 1], atol=1e-15)
    s = 1 / math.sqrt(2)
    # first component made real positive
    np.testing.assert_allclose(spec.eigenvectors[:, 0], [s, -s], atol=1e-15)
    np.testing.assert_allclose(spec.eigenvectors[:, 1], [s, s], atol=1e-15)


def test_spectrum_reconstruction(rng):
    h = random_hermitian(rng, 8)
    spec = hermitian_spectrum(h)
    v, lam = spec.eigenvectors, spec.eigenvalues
    assert np.max(np.abs(v @ np.diag(lam) @ v.conj().T - h)) <= 1e-9 * max(1, np.abs(h).max())
    assert np.max(np.abs(v.conj().T @ v - np.eye(8))) <= 1e-10
    assert np.all(np.diff(lam) >= 0)


def test_spectrum_degenerate_cluster_is_canonical(rng):
    # a degenerate subspace spanned by computational vectors, hidden by a rotation inside it
    u = haar_unitary(2, 5)
    h = np.zeros((3, 3), dtype=complex)
    h[np.ix_([0, 2], [0, 2])] = u @ np.eye(2) @ u.conj().T
    h[1, 1] = 3.0
    spec = hermitian_spectrum(h)
    np.testing.assert_allclose(spec.eigenvectors[:, :2], np.eye(3)[:, [0, 2]], atol=1e-12)


def test_spectrum_rejects_non_hermitian():
    with pytest.raises(ContractViolation):
        hermitian_spectrum(np.array([[0, 1], [0, 0]]))


# -- propagator -------------------------------------------------------------

def test_propagator_at_zero(rng):
    np.testing.assert_allclose(propagator(random_hermitian(rng, 5), 0.0), np.eye(5), atol=1e-14)


def test_propagator_pauli_z():
    u = propagator(PAULI_Z, math.pi / 2)
    np.testing.assert_allclose(u, np.diag([np.exp(-1j * math.pi / 2), np.exp(1j * math.pi / 2)]), atol=1e-15)


def test_propagator_group_property(rng):
    h = random_hermitian(rng, 6)
    u1, u2, u12 = propagator(h, 0.7), propagator(h, 1.9), propagator(h, 2.6)
    assert np.max(np.abs(u1 @ u1.conj().T - np.eye(6))) <= 1e-9
    assert np.max(np.abs(u1 @ u2 - u12)) <= 1e-9


def test_propagator_matches_pade_expm(rng):
    h = random_hermitian(rng, 7)
    assert np.max(np.abs(propagator(h, 1.3) - sla.expm(-1.3j * h))) <= 1e-10


@given(seed=seeds, t=st.floats(-5, 5))
def test_propagation_preserves_spectrum(seed, t):
    rng = np.random.default_rng(seed)
    rho = random_density_matrix(4, rng)
    u = propagator(random_hermitian(rng, 4), t)
    np.testing.assert_allclose(np.linalg.eigvalsh(u @ rho @ u.conj().T), np.linalg.eigvalsh(rho), atol=1e-9)


def test_propagator_rejects_non_finite_time():
    with pytest.raises(ValueError):
        propagator(PAULI_Z, math.inf)


# -- trace_norm -------------------------------------------------------------

def test_trace_norm_examples():
    assert trace_norm(np.zeros((3, 3))) == 0.0
    assert trace_norm(KET0 - KET1) == pytest.approx(2.0, abs=1e-15)
    classical = 0.5 * (pure_state([1, 0, 0, 0]) + pure_state([0, 0, 0, 1]))
    # difference has eigenvalues +-1/2 and 0, 0
    assert trace_norm(BELL - classical) == pytest.approx(1.0, abs=1e-14)


def test_trace_norm_general_matrix(rng):
    x = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    # Tr sqrt(X^dag X) straight from the definition
    oracle = np.trace(sla.sqrtm(x.conj().T @ x)).real
    assert trace_norm(x) == pytest.approx(oracle, rel=1e-10)


@given(seed=seeds)
@settings(max_examples=50)
def test_trace_norm_dominates_hs_and_is_unitarily_invariant(seed):
    rng = np.random.default_rng(seed)
    rho, sigma = random_density_matrix(4, rng, rank=2), random_density_matrix(4, rng)
    t = trace_norm(rho - sigma)
    assert t + 1e-12 >= state_distance(rho, sigma, "hs")
    u = haar_unitary(4, seed)
    assert abs(trace_norm(u @ (rho - sigma) @ u.conj().T) - t) <= 1e-10


# -- state_distance ---------------------------------------------------------

METRICS = ["trace", "hs", "bures", "hellinger", "jsd"]


@pytest.mark.parametrize("metric", METRICS)
def test_distance_identical_states(rng, metric):
    rho = random_density_matrix(3, rng)
    assert state_distance(rho, rho, metric) <= 1e-9
    pure = pure_state([1, 1j, 0])
    assert state_distance(pure, pure, metric) <= 1e-9


def test_distance_orthogonal_pure():
    assert state_distance(KET0, KET1, "trace") == pytest.approx(2.0)
    assert state_distance(KET0, KET1, "hs") == pytest.approx(math.sqrt(2))
    assert state_distance(KET0, KET1, "bures") == pytest.approx(math.sqrt(2))
    assert state_distance(KET0, KET1, "hellinger") == pytest.approx(math.sqrt(2))
    assert state_distance(KET0, KET1, "jsd") == pytest.approx(math.sqrt(math.log(2)))


def _entropy(m):
    lam = np.clip(np.linalg.eigvalsh(m), 0, None)
    lam = lam[lam > 1e-300]
    return -np.sum(lam * np.log(lam))


def _reference_distances(rho, sigma):
    # textbook formulas via scipy.linalg.sqrtm, independent of the library route
    sr = sla.sqrtm(rho)
    fid = np.trace(sla.sqrtm(sr @ sigma @ sr)).real ** 2
    aff = np.trace(sr @ sla.sqrtm(sigma)).real
    jsd = _entropy((rho + sigma) / 2) - (_entropy(rho) + _entropy(sigma)) / 2
    return {
        "bures": math.sqrt(max(0.0, 2 * (1 - math.sqrt(fid)))),
        "hellinger": math.sqrt(max(0.0, 2 * (1 - aff))),
        "jsd": math.sqrt(max(0.0, jsd)),
    }


@given(seed=seeds)
@settings(max_examples=40)
def test_distances_match_textbook_formulas(seed):
    rng = np.random.default_rng(seed)
    rho, sigma = random_density_matrix(3, rng), random_density_matrix(3, rng)
    ref = _reference_distances(rho, sigma)
    for metric, value in ref.items():
        assert state_distance(rho, sigma, metric) == pytest.approx(value, abs=1e-7)


@given(seed=seeds, dim=st.integers(2, 4))
@settings(max_examples=40)
def test_distances_symmetric(seed, dim):
    rng = np.random.default_rng(seed)
    rho = random_density_matrix(dim, rng, rank=int(rng.integers(1, dim + 1)))
    sigma = random_density_matrix(dim, rng)
    for metric in METRICS:
        assert abs(state_distance(rho, sigma, metric) - state_distance(sigma, rho, metric)) <= 1e-10


def test_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        state_distance(np.eye(2) / 2, np.eye(3) / 3)


def test_distance_unknown_metric():
    with pytest.raises(ValueError):
        state_distance(KET0, KET1, "wasserstein")


def test_distance_rejects_invalid_state():
    with pytest.raises(ContractViolation):
        state_distance(np.diag([1.2, -0.2]), KET0)


# -- haar_unitary -----------------------------------------------------------

def test_haar_dim_one():
    u = haar_unitary(1, 99)
    assert u.shape == (1, 1)
    assert abs(abs(u[0, 0]) - 1) <= 1e-15


@given(seed=seeds, dim=st.integers(1, 8))
@settings(max_examples=30)
def test_haar_unitary_and_deterministic(seed, dim):
    u = haar_unitary(dim, seed)
    assert np.max(np.abs(u.conj().T @ u - np.eye(dim))) <= 1e-10
    np.testing.assert_array_equal(u, haar_unitary(dim, seed))


def test_haar_first_moment():
    x = np.array([abs(haar_unitary(4, s)[0, 0]) ** 2 for s in range(10_000)])
    se = x.std(ddof=1) / math.sqrt(x.size)
    assert abs(x.mean() - 0.25) <= 3 * se


def test_haar_phase_is_uniform():
    # without the R-diagonal phase fix the diagonal phases of Q are biased
    phases = np.array([np.angle(haar_unitary(2, s)[0, 0]) for s in range(4000)])
    hist, _ = np.histogram(phases, bins=8, range=(-math.pi, math.pi))
    expected = phases.size / 8
    chi2 = np.sum((hist - expected) ** 2 / expected)
    assert chi2 < 24.3  # 0.999 quantile of chi^2 with 7 dof
