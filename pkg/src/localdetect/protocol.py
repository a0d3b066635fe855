"""Local detection of initial system-environment correlations.

A local dephasing channel on the system turns the total state ``rho`` into a
reference ``rho' = (Phi x 1) rho`` with the same marginals. Both states are
propagated with the same total unitary and only their system marginals are
compared; any separation certifies that ``rho`` carried discord-type
correlations.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation
from .linalg import (
    METRICS,
    BipartiteState,
    Spectrum,
    as_matrix,
    check_density_matrix,
    hermitian_spectrum,
    partial_trace,
    state_distance,
    trace_norm,
)

BASIS_TOL = 1e-10
# eigenvalue gap of rho_S below which the dephasing basis is flagged as ambiguous
DEGENERACY_TOL = 1e-8

DEGENERACY_WARNING = (
    "reduced system state is degenerate; the dephasing basis (and hence the "
    "witness) depends on the tie-broken eigenbasis"
)


@dataclass(frozen=True)
class DephasingChannel:
    """Rank-1 projective dephasing in the orthonormal basis given by ``basis`` columns."""

    basis: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        b = as_matrix(self.basis, "basis")
        if b.shape[0] != b.shape[1]:
            raise ValueError(f"dephasing basis must be square, got {b.shape}")
        dev = np.max(np.abs(b.conj().T @ b - np.eye(b.shape[0])))
        if dev > BASIS_TOL:
            raise ValueError(f"dephasing basis is not orthonormal (deviation {dev:.3e})")
        object.__setattr__(self, "basis", b)

    @property
    def d_s(self) -> int:
        return self.basis.shape[0]

    @classmethod
    def computational(cls, d_s: int) -> "DephasingChannel":
        return cls(np.eye(d_s, dtype=complex))

    @property
    def warnings(self) -> tuple[str, ...]:
        return (DEGENERACY_WARNING,) if self.degenerate else ()


@dataclass(frozen=True)
class WitnessRecord:
    times: np.ndarray
    d_values: np.ndarray
    metric: str
    total_bound: float
    max_d: float
    argmax_time: float
    warnings: tuple[str, ...] = ()

    @classmethod
    def build(cls, times, d_values, metric, total_bound, warnings=()) -> "WitnessRecord":
        times = np.asarray(times, dtype=float)
        d_values = np.asarray(d_values, dtype=float)
        if d_values.shape != times.shape:
            raise ValueError("one distance value per time point is required")
        k = int(np.argmax(d_values))  # first occurrence of the maximum
        return cls(times, d_values, metric, float(total_bound),
                   float(d_values[k]), float(times[k]), tuple(warnings))


@dataclass(frozen=True)
class HelstromReport:
    p: float
    helstrom_norm: float
    p_max: float


@dataclass(frozen=True)
class MetricComparison:
    records: dict[str, WitnessRecord]
    helstrom_increase: dict[float, float] = field(default_factory=dict)


def eigenbasis_dephasing(rho: BipartiteState) -> DephasingChannel:
    """Dephasing channel in the eigenbasis of ``Tr_E rho``, largest population first."""
    rho_s = partial_trace(rho, "S")
    spec = hermitian_spectrum(rho_s)
    lam = spec.eigenvalues
    gaps = np.diff(lam)
    # clusters of equal eigenvalues keep their canonical internal order
    cluster = np.concatenate([[0], np.cumsum(gaps > 1e-10)])
    order = np.lexsort((np.arange(lam.size), -cluster))
    degenerate = bool(np.any(gaps <= DEGENERACY_TOL))
    return DephasingChannel(spec.eigenvectors[:, order], degenerate=degenerate)


def _dephase_matrix(m: np.ndarray, basis: np.ndarray, d_s: int, d_e: int) -> np.ndarray:
    t = m.reshape(d_s, d_e, d_s, d_e)
    # rotate the system indices into the dephasing basis, keep only diagonal blocks
    t = np.einsum("xa,xiyj,yb->aibj", basis.conj(), t, basis, optimize=True)
    mask = np.eye(d_s, dtype=bool)[:, None, :, None]
    t = np.where(mask, t, 0.0)
    t = np.einsum("xa,aibj,yb->xiyj", basis, t, basis.conj(), optimize=True)
    out = t.reshape(d_s * d_e, d_s * d_e)
    return 0.5 * (out + out.conj().T)


def apply_local_dephasing(rho: BipartiteState, phi: DephasingChannel) -> BipartiteState:
    """Reference state ``sum_k (P_k x 1) rho (P_k x 1)``."""
    if phi.d_s != rho.d_s:
        raise ValueError(f"channel acts on dimension {phi.d_s}, state has d_s={rho.d_s}")
    out = _dephase_matrix(rho.matrix, phi.basis, rho.d_s, rho.d_e)
    return BipartiteState(out, rho.d_s, rho.d_e)


def check_time_grid(times) -> np.ndarray:
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("time grid must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(t)):
        raise ValueError("time grid contains non-finite values")
    if t[0] < 0:
        raise ValueError("time grid must start at t >= 0")
    if np.any(np.diff(t) <= 0):
        raise ValueError("time grid must be strictly ascending")
    return t


def evolve_reduced(matrices, h_total, times, dims) -> list[np.ndarray]:
    """System marginals of ``U_t M U_t^dag`` for each matrix and time.

    Returns one array of shape ``(len(times), d_s, d_s)`` per input matrix.
    """
    d_s, d_e = dims
    if isinstance(h_total, Spectrum):
        spec = h_total
    else:
        h = as_matrix(h_total, "h_total")
        if h.shape != (d_s * d_e, d_s * d_e):
            raise ValueError(f"Hamiltonian shape {h.shape} does not match state dimension {d_s * d_e}")
        spec = hermitian_spectrum(h)
    v, lam = spec.eigenvectors, spec.eigenvalues
    factors = []
    for m in matrices:
        # M = sum_k w_k |x_k><x_k| in the energy basis; only the non-negligible
        # components are propagated, so pure states cost O(D^2) per time point
        w, x = np.linalg.eigh(v.conj().T @ as_matrix(m) @ v)
        keep = np.abs(w) > 1e-15 * max(np.max(np.abs(w)), 1e-300)
        factors.append((w[keep], x[:, keep]))
    out = [np.empty((len(times), d_s, d_s), dtype=complex) for _ in matrices]
    for n, t in enumerate(times):
        a = v * np.exp(-1j * lam * t)
        for (w, x), dest in zip(factors, out):
            b = (a @ x).reshape(d_s, d_e, -1)
            r = np.einsum("aik,bik,k->ab", b, b.conj(), w)
            dest[n] = 0.5 * (r + r.conj().T)
    return out


def _reduced_pair(rho, phi, h_total, times):
    times = check_time_grid(times)
    rho_ref = apply_local_dephasing(rho, phi)
    traj, traj_ref = evolve_reduced([rho.matrix, rho_ref.matrix], h_total, times, (rho.d_s, rho.d_e))
    bound = trace_norm(rho.matrix - rho_ref.matrix, hermitian=True)
    return times, traj, traj_ref, bound


def _distances(traj, traj_ref, metric):
    return np.array([state_distance(a, b, metric) for a, b in zip(traj, traj_ref)])


def witness_trace(rho: BipartiteState, phi: DephasingChannel, h_total, times,
                  metric: str = "trace") -> WitnessRecord:
    """Distance between the reduced evolutions of ``rho`` and its dephased reference."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    times, traj, traj_ref, bound = _reduced_pair(rho, phi, h_total, times)
    d = _distances(traj, traj_ref, metric)
    rec = WitnessRecord.build(times, d, metric, bound, phi.warnings)
    if metric == "trace" and rec.max_d > bound + 1e-9:
        raise ContractViolation(
            f"trace-distance witness {rec.max_d:.12g} exceeds the total-state bound {bound:.12g}"
        )
    return rec


def discord_lower_bound(record: WitnessRecord, normalized: bool = False) -> float:
    """``max_t d(t)``, a lower bound on ``||rho - rho'||`` (halved if ``normalized``)."""
    if record.metric != "trace":
        raise ValueError("the discord lower bound requires the trace-norm metric")
    value = record.max_d
    return 0.5 * value if normalized else value


def helstrom_analysis(rho_s, rho_s_prime, p: float) -> HelstromReport:
    """Optimal success probability for distinguishing ``rho_s`` (prior p) from ``rho_s_prime``."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"prior p must lie in (0, 1), got {p}")
    a = check_density_matrix(rho_s, "rho_s")
    b = check_density_matrix(rho_s_prime, "rho_s_prime")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    norm = trace_norm(p * a - (1.0 - p) * b, hermitian=True)
    return HelstromReport(p, norm, 0.5 * (1.0 + norm))


def correlation_witness(rho1: BipartiteState, rho2: BipartiteState, h_total, times) -> WitnessRecord:
    """Trace distance between the reduced evolutions of two arbitrary total states.

    Without initial correlations in either state (and with equal environment
    marginals) the distance can never rise above its initial value, so
    ``max_d - d_values[0] > 0`` flags correlations of any kind, classical
    ones included.
    """
    if (rho1.d_s, rho1.d_e) != (rho2.d_s, rho2.d_e):
        raise ValueError("both states must share the same factor dimensions")
    times = check_time_grid(times)
    traj1, traj2 = evolve_reduced([rho1.matrix, rho2.matrix], h_total, times, (rho1.d_s, rho1.d_e))
    bound = trace_norm(rho1.matrix - rho2.matrix, hermitian=True)
    return WitnessRecord.build(times, _distances(traj1, traj2, "trace"), "trace", bound)


def metric_comparison(rho: BipartiteState, phi: DephasingChannel, h_total, times,
                      priors=(0.3, 0.4, 0.5, 0.6, 0.7)) -> MetricComparison:
    """Witness records for every metric plus the Helstrom increase for each prior.

    The increase for prior p is ``max_t ||Delta(t)|| - |2p - 1|``; the second
    term is ``||Delta(0)||`` because both reduced initial states coincide.
    """
    times, traj, traj_ref, bound = _reduced_pair(rho, phi, h_total, times)
    records = {
        m: WitnessRecord.build(times, _distances(traj, traj_ref, m), m, bound, phi.warnings)
        for m in METRICS
    }
    increase = {}
    for p in priors:
        norms = [helstrom_analysis(a, b, p).helstrom_norm for a, b in zip(traj, traj_ref)]
        increase[p] = float(max(norms) - abs(2 * p - 1))
    return MetricComparison(records, increase)
