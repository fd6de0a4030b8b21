"""Coherent (partial-swap) and incoherent (controlled-swap) qubit homogenizers."""

from .bounds import (
    BoundReport,
    fidelity_gap_bound,
    fidelity_pair,
    max_reuse_count,
    min_reservoir_reuse,
    min_reservoir_single,
)
from .dynamics import (
    HomogenizationTrace,
    InteractionResult,
    cswap_step,
    homogenize_repeated,
    homogenize_single_pass,
    pswap_cross_coefficient,
    pswap_step,
)
from .gates import control_state, cswap, pswap
from .oracle import joint_entropy_series, oracle_repeated, oracle_single_pass
from .qcore import (
    apply_unitary,
    bloch_distance,
    bloch_to_density,
    density_to_bloch,
    fidelity,
    kron,
    partial_trace,
    von_neumann_entropy,
)

__version__ = "0.1.0"
