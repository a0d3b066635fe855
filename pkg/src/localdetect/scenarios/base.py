from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..linalg import BipartiteState


@dataclass(frozen=True)
class Scenario:
    """Initial total state, total Hamiltonian and a recommended time grid."""

    state: BipartiteState
    hamiltonian: np.ndarray
    times: np.ndarray
    name: str = ""
    notes: dict = field(default_factory=dict)


def annihilation(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1).astype(complex)


# qubit convention: index 0 = |g> (or |H>), index 1 = |e> (or |V>)
SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_MINUS = SIGMA_PLUS.T.copy()
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)
