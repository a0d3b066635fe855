"""Qubit coupled to one thermal oscillator by a resonant sideband interaction."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ScenarioError
from ..linalg import MAX_DIM, BipartiteState, check_dim, propagator
from .base import SIGMA_MINUS, SIGMA_PLUS, Scenario, annihilation

TAIL_TOL = 1e-6


def minimal_n_max(nbar: float, tail: float = TAIL_TOL) -> int:
    """Smallest Fock cutoff whose discarded thermal tail mass is at most ``tail``."""
    if nbar <= 0:
        return 1
    r = nbar / (nbar + 1.0)
    n = math.ceil(math.log(tail) / math.log(r)) - 1
    while r ** (n + 1) > tail:
        n += 1
    return max(n, 1)


@dataclass(frozen=True)
class JCParams:
    n_max: int
    nbar: float
    g: float = 1.0
    t_prep: float = 0.0
    # start from |e> instead of |g>; None picks |e> only at nbar == 0,
    # where |g,0> would be dark
    excited: bool | None = None

    def __post_init__(self):
        if self.nbar < 0:
            raise ScenarioError("nbar must be >= 0")
        if self.g <= 0:
            raise ScenarioError("coupling g must be positive")
        need = minimal_n_max(self.nbar)
        if self.n_max < need:
            raise ScenarioError(
                f"n_max={self.n_max} truncates more than {TAIL_TOL:g} of the thermal "
                f"distribution at nbar={self.nbar}; minimal admissible n_max is {need}"
            )

    @property
    def starts_excited(self) -> bool:
        return self.nbar == 0 if self.excited is None else self.excited


def thermal_state(nbar: float, n_max: int) -> np.ndarray:
    """Truncated, renormalized thermal state of mean occupation ``nbar``."""
    if nbar == 0:
        p = np.zeros(n_max + 1)
        p[0] = 1.0
    else:
        p = (nbar / (nbar + 1.0)) ** np.arange(n_max + 1)
        p /= p.sum()
    return np.diag(p).astype(complex)


def jc_hamiltonian(n_max: int, g: float) -> np.ndarray:
    a = annihilation(n_max)
    return g * (np.kron(SIGMA_PLUS, a) + np.kron(SIGMA_MINUS, a.conj().T))


def excitation_number(n_max: int) -> np.ndarray:
    a = annihilation(n_max)
    return (np.kron(SIGMA_PLUS @ SIGMA_MINUS, np.eye(n_max + 1))
            + np.kron(np.eye(2), a.conj().T @ a))


def jc_scenario(params: JCParams, n_points: int = 200, max_dim: int = MAX_DIM) -> Scenario:
    check_dim(2 * (params.n_max + 1), max_dim)
    qubit = np.diag([0.0, 1.0] if params.starts_excited else [1.0, 0.0]).astype(complex)
    rho0 = np.kron(qubit, thermal_state(params.nbar, params.n_max))
    h = jc_hamiltonian(params.n_max, params.g)
    u = propagator(h, params.t_prep)
    rho = u @ rho0 @ u.conj().T
    state = BipartiteState(0.5 * (rho + rho.conj().T), 2, params.n_max + 1)
    times = np.linspace(0.0, 4 * math.pi / params.g, n_points)
    return Scenario(state, h, times, "jc", {"excited": params.starts_excited})
