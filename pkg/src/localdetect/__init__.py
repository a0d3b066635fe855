"""Local detection of system-environment correlations by dephasing and reduced dynamics."""

from .errors import ConfigError, ContractViolation, DimensionLimitError, ScenarioError
from .linalg import (
    BipartiteState,
    hermitian_spectrum,
    haar_unitary,
    partial_trace,
    propagator,
    state_distance,
    tensor_product,
    trace_norm,
)
from .protocol import (
    DephasingChannel,
    HelstromReport,
    WitnessRecord,
    apply_local_dephasing,
    discord_lower_bound,
    eigenbasis_dephasing,
    helstrom_analysis,
    metric_comparison,
    witness_trace,
)

__version__ = "0.1.0"
