"""Monte Carlo average of the witness over random states and generic dynamics."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ScenarioError
from ..linalg import EQUAL_TOL, MAX_DIM, BipartiteState, check_dim, gue, haar_unitary, partial_trace
from ..protocol import apply_local_dephasing, check_time_grid, eigenbasis_dephasing, evolve_reduced

EVOLUTIONS = ("gue", "haar")


@dataclass(frozen=True)
class EnsembleParams:
    d_s: int = 2
    d_e: tuple[int, ...] = (2, 4, 8, 16, 32)
    n_samples: int = 500
    seed: int = 0
    times: tuple[float, ...] = tuple(np.linspace(0.0, 10.0, 50))
    # "gue": one random Hamiltonian per sample evolved over the grid;
    # "haar": an independent Haar unitary per grid point
    evolution: str = "gue"

    def __post_init__(self):
        if self.n_samples < 1:
            raise ScenarioError("n_samples must be >= 1")
        if self.evolution not in EVOLUTIONS:
            raise ScenarioError(f"unknown evolution {self.evolution!r}; choose from {EVOLUTIONS}")
        if self.d_s < 1 or any(d < 1 for d in self.d_e):
            raise ScenarioError("dimensions must be positive")
        for d in self.d_e:
            check_dim(self.d_s * d, MAX_DIM)


@dataclass(frozen=True)
class EnsembleRow:
    d_e: int
    mean_max_d: float
    stderr: float
    samples: np.ndarray


def sample_max_distance(d_s: int, d_e: int, times, evolution: str, seed) -> float:
    """max_t Hilbert-Schmidt witness for one random pure state and one random evolution."""
    dim = d_s * d_e
    rng = np.random.default_rng(seed)
    psi = haar_unitary(dim, rng.integers(2**63))[:, 0]
    rho = BipartiteState(np.outer(psi, psi.conj()), d_s, d_e)
    diff = rho.matrix - apply_local_dephasing(rho, eigenbasis_dephasing(rho)).matrix
    if np.max(np.abs(diff)) <= EQUAL_TOL:
        return 0.0
    if evolution == "gue":
        # the witness is linear in rho - rho', so only the difference is evolved
        (traj,) = evolve_reduced([diff], gue(dim, rng), times, (d_s, d_e))
        return float(max(np.linalg.norm(x) for x in traj))
    best = 0.0
    for _ in times:
        u = haar_unitary(dim, rng.integers(2**63))
        x = partial_trace(u @ diff @ u.conj().T, "S", dims=(d_s, d_e))
        best = max(best, float(np.linalg.norm(x)))
    return best


def ensemble_average(params: EnsembleParams) -> list[EnsembleRow]:
    """Mean and standard error of ``max_t d_HS(t)`` for each environment dimension.

    Sample ``i`` at environment dimension ``d_e`` draws from the stream
    ``(seed, d_e, i)``, so results do not depend on evaluation order.
    """
    times = check_time_grid(params.times)
    rows = []
    for d_e in params.d_e:
        vals = np.array([
            sample_max_distance(params.d_s, d_e, times, params.evolution, (params.seed, d_e, i))
            for i in range(params.n_samples)
        ])
        n = vals.size
        mean = math.fsum(vals) / n
        if n > 1:
            var = math.fsum((vals - mean) ** 2) / (n - 1)
            se = math.sqrt(var / n)
        else:
            se = 0.0
        rows.append(EnsembleRow(d_e, mean, se, vals))
    return rows
