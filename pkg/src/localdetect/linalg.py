"""Dense complex linear algebra for small open-system simulations.

Matrices are plain ``numpy`` complex arrays. Composite spaces always place
the accessible system first, so a composite index is ``i_S * d_E + i_E``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, DimensionLimitError

#: Default ceiling on any composite Hilbert-space dimension.
MAX_DIM = 4096

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
# Two density matrices closer than this (max-abs) count as equal for distances.
EQUAL_TOL = 1e-12

METRICS = ("trace", "hs", "bures", "hellinger", "jsd")


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a finite 2-D complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def check_dim(dim: int, max_dim: int = MAX_DIM) -> None:
    if dim > max_dim:
        raise DimensionLimitError(f"composite dimension {dim} exceeds the ceiling {max_dim}")


def check_density_matrix(rho, name: str = "rho") -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return the array."""
    m = as_matrix(rho, name)
    if m.shape[0] != m.shape[1]:
        raise ContractViolation(f"{name} is not square: {m.shape}")
    herm_dev = np.max(np.abs(m - m.conj().T))
    if herm_dev > HERMITIAN_TOL:
        raise ContractViolation(f"{name} is not Hermitian (deviation {herm_dev:.3e})")
    tr = np.trace(m)
    if abs(tr - 1.0) > TRACE_TOL:
        raise ContractViolation(f"{name} has trace {tr.real:.12g}, expected 1")
    lam_min = np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0]
    if lam_min < -PSD_TOL:
        raise ContractViolation(f"{name} has negative eigenvalue {lam_min:.3e}")
    return m


@dataclass(frozen=True)
class BipartiteState:
    """A density matrix on ``C^d_s (x) C^d_e`` with the system factor first."""

    matrix: np.ndarray
    d_s: int
    d_e: int

    def __post_init__(self):
        if self.d_s < 1 or self.d_e < 1:
            raise ValueError("factor dimensions must be positive")
        m = check_density_matrix(self.matrix, "bipartite state")
        if m.shape[0] != self.d_s * self.d_e:
            raise ValueError(
                f"state dimension {m.shape[0]} != d_s*d_e = {self.d_s * self.d_e}"
            )
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.d_s * self.d_e


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def tensor_product(a, b, max_dim: int = MAX_DIM) -> np.ndarray:
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    check_dim(max(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), max_dim)
    return np.kron(a, b)


def product_state(rho_s, rho_e) -> BipartiteState:
    rho_s = as_matrix(rho_s)
    rho_e = as_matrix(rho_e)
    return BipartiteState(tensor_product(rho_s, rho_e), rho_s.shape[0], rho_e.shape[0])


def partial_trace(rho: BipartiteState | np.ndarray, keep: str = "S", dims=None) -> np.ndarray:
    """Reduce a bipartite operator to the kept factor (``"S"`` or ``"E"``).

    Accepts a :class:`BipartiteState` or a raw square array together with
    ``dims=(d_s, d_e)``. Raw arrays need not be states, so the map can be
    applied to differences of states.
    """
    if isinstance(rho, BipartiteState):
        m, (d_s, d_e) = rho.matrix, (rho.d_s, rho.d_e)
    else:
        if dims is None:
            raise ValueError("dims=(d_s, d_e) is required for raw arrays")
        m, (d_s, d_e) = np.asarray(rho, dtype=complex), dims
    t = m.reshape(d_s, d_e, d_s, d_e)
    if keep == "S":
        return np.einsum("ajbj->ab", t)
    if keep == "E":
        return np.einsum("iaib->ab", t)
    raise ValueError(f"keep must be 'S' or 'E', got {keep!r}")


def _fix_phase(vecs: np.ndarray) -> np.ndarray:
    # first component with non-negligible magnitude made real positive
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            z = col[idx[0]]
            out[:, k] = col * (abs(z) / z)
    return out


def _canonical_cluster_basis(vecs: np.ndarray) -> np.ndarray:
    """Orthonormal basis of span(vecs) built from projected computational vectors.

    The result depends only on the subspace, not on the basis LAPACK happened
    to return, and it reduces to computational basis vectors whenever the
    subspace is spanned by them.
    """
    m = vecs.shape[1]
    proj = vecs @ vecs.conj().T
    basis: list[np.ndarray] = []
    for j in np.flatnonzero(np.real(np.diag(proj)) > 1e-14):
        v = proj[:, j].copy()
        for b in basis:
            v -= b * (b.conj() @ v)
        nrm = np.linalg.norm(v)
        if nrm > 1e-8:
            basis.append(v / nrm)
        if len(basis) == m:
            break
    if len(basis) < m:
        return vecs
    return np.column_stack(basis)


def hermitian_spectrum(h, degeneracy_tol: float = 1e-10) -> Spectrum:
    """Eigen-decomposition of a Hermitian matrix with deterministic eigenvectors.

    Eigenvalues are ascending. Inside each cluster of (near-)degenerate
    eigenvalues the eigenvectors are replaced by a canonical basis of the
    cluster, then every eigenvector's first non-negligible component is made
    real and positive.
    """
    h = as_matrix(h, "h")
    if h.shape[0] != h.shape[1]:
        raise ContractViolation(f"matrix is not square: {h.shape}")
    scale = max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0
    dev = np.max(np.abs(h - h.conj().T)) if h.size else 0.0
    if dev > HERMITIAN_TOL * scale:
        raise ContractViolation(f"matrix is not Hermitian (deviation {dev:.3e})")
    lam, vecs = np.linalg.eigh(0.5 * (h + h.conj().T))
    tol = degeneracy_tol * scale
    start = 0
    n = lam.size
    while start < n:
        stop = start + 1
        while stop < n and lam[stop] - lam[stop - 1] <= tol:
            stop += 1
        if stop - start > 1:
            vecs[:, start:stop] = _canonical_cluster_basis(vecs[:, start:stop])
        start = stop
    return Spectrum(lam, _fix_phase(vecs))


def propagator_from_spectrum(spec: Spectrum, t: float) -> np.ndarray:
    v = spec.eigenvectors
    if t == 0:
        # exact identity rather than V V^dag with rounding
        return np.eye(v.shape[0], dtype=complex)
    return (v * np.exp(-1j * spec.eigenvalues * t)) @ v.conj().T


def propagator(h, t: float) -> np.ndarray:
    """Return ``exp(-i H t)`` (hbar = 1) via the spectral decomposition."""
    if not math.isfinite(t):
        raise ValueError("time must be finite")
    return propagator_from_spectrum(hermitian_spectrum(h), t)


def is_hermitian(x: np.ndarray, tol: float = 1e-12) -> bool:
    return x.shape[0] == x.shape[1] and np.max(np.abs(x - x.conj().T), initial=0.0) <= tol


def trace_norm(x, hermitian: bool | None = None) -> float:
    """Sum of singular values, ``Tr sqrt(X^dag X)``, without the factor 1/2."""
    x = as_matrix(x, "x")
    if x.shape[0] != x.shape[1]:
        raise ValueError("trace norm needs a square matrix")
    if hermitian is None:
        hermitian = is_hermitian(x)
    if hermitian:
        return float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (x + x.conj().T)))))
    return float(np.sum(np.linalg.svd(x, compute_uv=False)))


def _psd_eig(rho: np.ndarray):
    lam, vecs = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    lam = np.where(lam < 0.0, 0.0, lam)  # callers guarantee lam >= -PSD_TOL
    return lam, vecs


def psd_sqrt(rho: np.ndarray) -> np.ndarray:
    lam, vecs = _psd_eig(rho)
    return (vecs * np.sqrt(lam)) @ vecs.conj().T


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in nats; zero eigenvalues contribute nothing."""
    lam, _ = _psd_eig(rho)
    lam = lam[lam > 0.0]
    return float(-np.sum(lam * np.log(lam)))


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity ``(Tr sqrt(sqrt(rho) sigma sqrt(rho)))**2``."""
    s1, s2 = psd_sqrt(as_matrix(rho)), psd_sqrt(as_matrix(sigma))
    return float(np.sum(np.linalg.svd(s1 @ s2, compute_uv=False)) ** 2)


def _bures(rho, sigma) -> float:
    # min over unitaries W of ||sqrt(rho) - sqrt(sigma) W||_2; avoids the
    # cancellation in 2(1 - sqrt(F)) for nearby states
    s1, s2 = psd_sqrt(rho), psd_sqrt(sigma)
    u, _, vh = np.linalg.svd(s1 @ s2)
    w = vh.conj().T @ u.conj().T
    return float(np.linalg.norm(s1 - s2 @ w))


def state_distance(rho, sigma, metric: str = "trace") -> float:
    """Distance between two density matrices.

    ``trace``      unhalved trace norm ``||rho - sigma||``, range [0, 2]
    ``hs``         Hilbert-Schmidt ``sqrt(Tr (rho - sigma)^2)``
    ``bures``      ``sqrt(2 (1 - sqrt(F)))``
    ``hellinger``  ``sqrt(2 (1 - Tr sqrt(rho) sqrt(sigma)))``
    ``jsd``        square root of the quantum Jensen-Shannon divergence (nats)

    States that agree entry-wise to ``EQUAL_TOL`` are at distance exactly 0.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; choose from {METRICS}")
    rho = check_density_matrix(rho, "rho")
    sigma = check_density_matrix(sigma, "sigma")
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    diff = rho - sigma
    if np.max(np.abs(diff)) <= EQUAL_TOL:
        return 0.0
    if metric == "trace":
        return trace_norm(diff, hermitian=True)
    if metric == "hs":
        return float(np.linalg.norm(diff))
    if metric == "bures":
        return _bures(rho, sigma)
    if metric == "hellinger":
        # equals sqrt(2 - 2 Tr sqrt(rho) sqrt(sigma)) for unit-trace inputs
        return float(np.linalg.norm(psd_sqrt(rho) - psd_sqrt(sigma)))
    mix = 0.5 * (rho + sigma)
    jsd = von_neumann_entropy(mix) - 0.5 * (von_neumann_entropy(rho) + von_neumann_entropy(sigma))
    return math.sqrt(max(jsd, 0.0))


def ginibre(dim: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)


def haar_unitary(dim: int, seed) -> np.ndarray:
    """Haar-distributed unitary from a seeded Ginibre matrix and QR.

    ``seed`` is anything ``numpy.random.default_rng`` accepts, e.g. an int or
    a tuple ``(seed, index)`` for per-sample streams.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(ginibre(dim, rng))
    d = np.diag(r)
    return q * (d / np.abs(d))


def gue(dim: int, rng: np.random.Generator) -> np.ndarray:
    """GUE matrix whose entries all have unit variance."""
    a = ginibre(dim, rng)
    return (a + a.conj().T) / math.sqrt(2)


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random mixed state ``G G^dag / Tr`` from a ``dim x rank`` Ginibre factor."""
    rank = dim if rank is None else rank
    g = (rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank)))
    m = g @ g.conj().T
    return m / np.trace(m).real


def pure_state(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())
