"""Two-qubit scenario: polarization qubit correlated with a two-path environment.

Besides the dephasing witness, the report runs a second witness that compares
the state with a partner whose system preparation is swapped. That second
witness also fires for purely classical correlations, so the pair of results
separates discord from classical correlations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ScenarioError
from ..linalg import BipartiteState, pure_state
from ..protocol import (
    DephasingChannel,
    WitnessRecord,
    correlation_witness,
    eigenbasis_dephasing,
    witness_trace,
)
from .base import SIGMA_MINUS, SIGMA_PLUS, SIGMA_X, SIGMA_Z, Scenario

FAMILIES = ("bell_mixture", "dephased_bell", "classical", "product")
COUPLINGS = ("cross", "exchange")

PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
# fixed marginals for the product family
PRODUCT_RHO_S = np.array([[0.6, 0.2], [0.2, 0.4]], dtype=complex)
PRODUCT_RHO_E = np.diag([0.75, 0.25]).astype(complex)


def family_state(family: str, visibility: float = 1.0) -> np.ndarray:
    """Two-qubit density matrix of the named family.

    ``bell_mixture``   v |Phi+><Phi+| + (1 - v) I/4
    ``dephased_bell``  |Phi+><Phi+| with its |00><11| coherence scaled by v
    ``classical``      (|00><00| + |11><11|) / 2
    ``product``        a fixed rho_S x rho_E
    """
    v = visibility
    if family == "bell_mixture":
        return v * pure_state(PHI_PLUS) + (1 - v) * np.eye(4) / 4
    if family == "dephased_bell":
        m = np.diag([0.5, 0, 0, 0.5]).astype(complex)
        m[0, 3] = m[3, 0] = 0.5 * v
        return m
    if family == "classical":
        return np.diag([0.5, 0, 0, 0.5]).astype(complex)
    if family == "product":
        return np.kron(PRODUCT_RHO_S, PRODUCT_RHO_E)
    raise ScenarioError(f"unknown qubit-qubit family {family!r}; choose from {FAMILIES}")


def coupling_hamiltonian(coupling: str = "cross", g: float = 1.0) -> np.ndarray:
    """Two-qubit interaction.

    ``exchange`` is ``g (s+ s- + s- s+)``; every Bell state is one of its
    eigenstates, so Bell-type inputs never produce a witness signal under it.
    ``cross`` is ``g (sz sx + sx sz) / sqrt(2)``, which moves both the
    environment (conditioned on the system) and the system (conditioned on
    the environment).
    """
    if coupling == "exchange":
        return g * (np.kron(SIGMA_PLUS, SIGMA_MINUS) + np.kron(SIGMA_MINUS, SIGMA_PLUS))
    if coupling == "cross":
        return g * (np.kron(SIGMA_Z, SIGMA_X) + np.kron(SIGMA_X, SIGMA_Z)) / math.sqrt(2)
    raise ScenarioError(f"unknown coupling {coupling!r}; choose from {COUPLINGS}")


@dataclass(frozen=True)
class QubitQubitParams:
    family: str = "bell_mixture"
    visibility: float = 1.0
    g: float = 1.0
    coupling: str = "cross"


def qubit_qubit_scenario(params: QubitQubitParams, n_points: int = 200) -> Scenario:
    rho = BipartiteState(family_state(params.family, params.visibility), 2, 2)
    h = coupling_hamiltonian(params.coupling, params.g)
    times = np.linspace(0.0, 2 * math.pi, n_points)
    return Scenario(rho, h, times, "qubit_qubit",
                    {"family": params.family, "coupling": params.coupling})


def swapped_preparation(rho: BipartiteState, phi: DephasingChannel) -> BipartiteState:
    """Partner state with the two dephasing-basis preparations of the system exchanged."""
    b = phi.basis
    flip = b @ SIGMA_X @ b.conj().T
    u = np.kron(flip, np.eye(rho.d_e))
    return BipartiteState(u @ rho.matrix @ u.conj().T, rho.d_s, rho.d_e)


@dataclass(frozen=True)
class TwoStepReport:
    discord_record: WitnessRecord
    classical_record: WitnessRecord
    # max_t of the second witness minus its initial value
    classical_increase: float
    correlated: bool
    discordant: bool


def two_step_discrimination(scn: Scenario, phi: DephasingChannel | None = None,
                            tol: float = 1e-9) -> TwoStepReport:
    """Run the dephasing witness and the swapped-preparation witness."""
    rho = scn.state
    phi = eigenbasis_dephasing(rho) if phi is None else phi
    first = witness_trace(rho, phi, scn.hamiltonian, scn.times, "trace")
    partner = swapped_preparation(rho, phi)
    second = correlation_witness(rho, partner, scn.hamiltonian, scn.times)
    increase = second.max_d - float(second.d_values[0])
    return TwoStepReport(first, second, increase,
                         correlated=increase > tol or first.max_d > tol,
                         discordant=first.max_d > tol)
