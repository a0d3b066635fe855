"""Scenario generators for the four experimental settings and the random ensemble."""

from .base import Scenario
from .chain import ChainParams, chain_full_validation, chain_visibility, hopping_matrix
from .continuum import Correlation, SpectrumParams, coherence_envelope, continuum_scenario
from .ensemble import EnsembleParams, ensemble_average
from .jc import JCParams, jc_scenario, minimal_n_max, thermal_state
from .qubit_qubit import QubitQubitParams, qubit_qubit_scenario, two_step_discrimination
