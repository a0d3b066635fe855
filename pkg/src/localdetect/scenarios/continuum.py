"""Polarization qubit dephased by its own discretized frequency continuum."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ScenarioError
from ..linalg import MAX_DIM, BipartiteState, check_dim
from .base import SIGMA_Z, Scenario


@dataclass(frozen=True)
class SpectrumParams:
    width: float
    delta_n: float
    n_modes: int = 201
    center: float = 0.0
    # half-width of the discretized band in units of ``width``
    cutoff: float = 5.0

    def __post_init__(self):
        if self.width <= 0:
            raise ScenarioError("spectral width must be positive")
        if self.delta_n == 0:
            raise ScenarioError("delta_n must be non-zero")
        if self.n_modes < 1:
            raise ScenarioError("n_modes must be >= 1")

    @property
    def coherence_time(self) -> float:
        return 1.0 / abs(self.width * self.delta_n)


def mode_grid(params: SpectrumParams) -> tuple[np.ndarray, np.ndarray]:
    """Frequencies and normalized Gaussian amplitudes ``f_k``.

    ``|f_k|^2`` samples a Gaussian of standard deviation ``width`` on a
    uniform grid over ``center +- cutoff * width``.
    """
    half = params.cutoff * params.width
    if params.n_modes == 1:
        omega = np.array([params.center])
    else:
        omega = np.linspace(params.center - half, params.center + half, params.n_modes)
    weights = np.exp(-((omega - params.center) ** 2) / (2 * params.width ** 2))
    weights /= weights.sum()
    return omega, np.sqrt(weights)


def continuum_hamiltonian(params: SpectrumParams) -> np.ndarray:
    omega, _ = mode_grid(params)
    return params.delta_n * np.kron(SIGMA_Z / 2, np.diag(omega).astype(complex))


@dataclass(frozen=True)
class Correlation:
    """``correlated=False`` gives the product preparation; ``theta`` and ``tau0``
    shape the correlated pure state."""

    correlated: bool = True
    theta: float = math.pi / 4
    # preparation delay; negative values are undone by the later evolution
    tau0: float | None = None


def continuum_scenario(params: SpectrumParams, correlation: Correlation = Correlation(),
                       n_points: int = 200, max_dim: int = MAX_DIM) -> Scenario:
    check_dim(2 * params.n_modes, max_dim)
    omega, f = mode_grid(params)
    if correlation.correlated:
        tau0 = -3.0 * params.delta_n * params.coherence_time if correlation.tau0 is None else correlation.tau0
        c, s = math.cos(correlation.theta), math.sin(correlation.theta)
        # amplitude index = pol * n_modes + k, pol 0 = H, 1 = V
        psi = np.concatenate([c * f, s * f * np.exp(1j * omega * tau0)])
        rho = np.outer(psi, psi.conj())
        notes = {"correlated": True, "theta": correlation.theta, "tau0": tau0}
    else:
        plus = np.full((2, 2), 0.5, dtype=complex)
        rho = np.kron(plus, np.diag(f ** 2).astype(complex))
        notes = {"correlated": False}
    state = BipartiteState(rho, 2, params.n_modes)
    times = np.linspace(0.0, 6.0 * params.coherence_time, n_points)
    return Scenario(state, continuum_hamiltonian(params), times, "continuum", notes)


def coherence_envelope(params: SpectrumParams, times) -> np.ndarray:
    """Normalized polarization coherence ``2 |<sigma_+>(t)|`` of the product branch."""
    omega, f = mode_grid(params)
    w = f ** 2
    return np.abs(np.exp(-1j * params.delta_n * np.outer(times, omega)) @ w)


def gaussian_envelope(params: SpectrumParams, times) -> np.ndarray:
    """Continuum-limit decay ``exp(-width^2 delta_n^2 t^2 / 2)``."""
    t = np.asarray(times, dtype=float)
    return np.exp(-0.5 * (params.width * params.delta_n * t) ** 2)
