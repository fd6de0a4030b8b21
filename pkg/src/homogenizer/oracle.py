"""Full density-matrix simulation of the homogenizer register.

Every interaction is an explicit unitary conjugation of the joint state, so the
results here are independent of the reduced maps in :mod:`homogenizer.dynamics`
and serve as their ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gates
from .dynamics import HomogenizationTrace, check_protocol, control_index
from .errors import CapacityError, ConfigurationError
from .qcore import (
    QubitIndexMap,
    apply_unitary,
    bloch_to_density,
    bloch_vector,
    density_to_bloch,
    kron,
    kron_all,
    max_qubits,
    partial_trace,
    von_neumann_entropy,
)


@dataclass(frozen=True)
class RegisterState:
    matrix: np.ndarray
    index_map: QubitIndexMap

    def marginal(self, labels: Sequence[str]) -> np.ndarray:
        """Reduced state on ``labels``, ordered as they sit in the register."""
        return partial_trace(self.matrix, self.index_map.positions(labels))

    def bloch(self, label: str) -> np.ndarray:
        return density_to_bloch(self.marginal([label]))


def _require(qubits: int) -> None:
    limit = max_qubits()
    if qubits > limit:
        raise CapacityError(f"oracle register needs {qubits} qubits, maximum is {limit}")


def _interact(matrix, index_map, sys_label, res_label, eta, protocol, ctrl_label=None):
    """One exact interaction; returns the new matrix and index map."""
    s_pos = index_map.position(sys_label)
    r_pos = index_map.position(res_label)
    if protocol == "pswap":
        return apply_unitary(matrix, gates.pswap(eta), [s_pos, r_pos]), index_map
    if ctrl_label is not None:
        c_pos = index_map.position(ctrl_label)
        return apply_unitary(matrix, gates.cswap(), [c_pos, s_pos, r_pos]), index_map
    # fresh control appended, used once, traced out immediately
    k = len(index_map)
    widened = kron(matrix, gates.control_state(eta))
    widened = apply_unitary(widened, gates.cswap(), [k, s_pos, r_pos])
    return partial_trace(widened, range(k)), index_map


def oracle_interaction(beta, alpha, eta: float, protocol: str) -> RegisterState:
    """Joint state right after a single interaction.

    The controlled swap keeps its control on slot 0, giving the register
    ``(c, s, r)``; the partial swap gives ``(s, r)``.
    """
    protocol = check_protocol(protocol)
    rho = bloch_to_density(beta)
    xi = bloch_to_density(alpha)
    if protocol == "pswap":
        m = apply_unitary(np.kron(rho, xi), gates.pswap(eta), [0, 1])
        return RegisterState(m, QubitIndexMap(("s", "r")))
    m = kron_all([gates.control_state(eta), rho, xi])
    m = apply_unitary(m, gates.cswap(), [0, 1, 2])
    return RegisterState(m, QubitIndexMap(("c", "s", "r")))


def oracle_single_pass(system0, reservoir0, N: int, eta: float, protocol: str,
                       trace_controls: bool = True,
                       entropy: bool = False) -> tuple[RegisterState, HomogenizationTrace]:
    """Simulate ``rho (x) xi^N`` through ``N`` exact interactions.

    With ``trace_controls`` each controlled swap uses a fresh control that is
    traced out immediately, so the register holds ``N + 1`` qubits. Without it
    all ``N`` controls stay in the register (``2N + 1`` qubits).
    """
    protocol = check_protocol(protocol)
    if N < 0:
        raise ConfigurationError(f"N must be >= 0, got {N}")
    gates.coupling(eta)
    beta = bloch_vector(system0)
    alpha = bloch_vector(reservoir0)
    keep_controls = protocol == "cswap" and not trace_controls
    res_labels = [f"r{j + 1}" for j in range(N)]
    ctrl_labels = [f"c{j + 1}" for j in range(N)] if keep_controls else []
    width = 1 + N + len(ctrl_labels)
    _require(width + (1 if protocol == "cswap" and trace_controls else 0))

    index_map = QubitIndexMap(("s", *res_labels, *ctrl_labels))
    factors = [bloch_to_density(beta)] + [bloch_to_density(alpha)] * N
    factors += [gates.control_state(eta)] * len(ctrl_labels)
    matrix = kron_all(factors)
    sr_positions = list(range(N + 1))

    def sr_entropy(m):
        if keep_controls:
            m = partial_trace(m, sr_positions)
        return von_neumann_entropy(m)

    systems = np.empty((N + 1, 3))
    touched = np.empty((N + 1, 3))
    systems[0] = beta
    touched[0] = alpha
    series = [sr_entropy(matrix)] if entropy else None
    for j in range(N):
        ctrl = ctrl_labels[j] if keep_controls else None
        matrix, index_map = _interact(matrix, index_map, "s", res_labels[j], eta,
                                      protocol, ctrl)
        systems[j + 1] = density_to_bloch(partial_trace(matrix, [0]))
        touched[j + 1] = density_to_bloch(partial_trace(matrix, [j + 1]))
        if entropy:
            series.append(sr_entropy(matrix))

    state = RegisterState(matrix, index_map)
    trace = HomogenizationTrace(
        protocol=protocol,
        eta=float(eta),
        target=alpha,
        systems=systems,
        reservoirs=touched,
        reservoir_final=touched[1:].copy(),
        controls=list(range(N)) if protocol == "cswap" else None,
        entropy=series,
    )
    return state, trace


def joint_entropy_series(system0, reservoir0, N: int, eta: float,
                         protocol: str) -> list[float]:
    """System-plus-reservoir entropy in bits before and after each interaction.

    Entry 0 is the initial product state; controls are traced out.
    """
    _, trace = oracle_single_pass(system0, reservoir0, N, eta, protocol,
                                  trace_controls=True, entropy=True)
    return trace.entropy


def oracle_repeated(systems0: Sequence, reservoir0, N: int, eta: float, protocol: str,
                    trace_controls: bool = True
                    ) -> tuple[RegisterState, list[HomogenizationTrace]]:
    """Exact counterpart of :func:`homogenizer.dynamics.homogenize_repeated`.

    With ``trace_controls=False`` the controlled swap reuses ``N`` persistent
    controls, cyclically reassigned on each pass by
    :func:`homogenizer.dynamics.control_index`.
    """
    protocol = check_protocol(protocol)
    betas = [bloch_vector(v) for v in systems0]
    n = len(betas)
    if n < 1:
        raise ConfigurationError("need at least one system")
    if protocol == "cswap" and n > 1 and N < n:
        raise ConfigurationError(f"cswap reuse needs N >= n, got N={N}, n={n}")
    gates.coupling(eta)
    alpha = bloch_vector(reservoir0)
    keep_controls = protocol == "cswap" and not trace_controls
    sys_labels = [f"s{i + 1}" for i in range(n)]
    res_labels = [f"r{j + 1}" for j in range(N)]
    ctrl_labels = [f"c{j + 1}" for j in range(N)] if keep_controls else []
    width = n + N + len(ctrl_labels)
    _require(width + (1 if protocol == "cswap" and trace_controls else 0))

    index_map = QubitIndexMap((*sys_labels, *res_labels, *ctrl_labels))
    factors = [bloch_to_density(b) for b in betas] + [bloch_to_density(alpha)] * N
    factors += [gates.control_state(eta)] * len(ctrl_labels)
    matrix = kron_all(factors)

    traces = []
    for i, s_label in enumerate(sys_labels):
        s_pos = index_map.position(s_label)
        systems = np.empty((N + 1, 3))
        touched = np.empty((N + 1, 3))
        systems[0] = betas[i]
        touched[0] = alpha
        controls = [] if protocol == "cswap" else None
        for j, r_label in enumerate(res_labels):
            ctrl = None
            if protocol == "cswap":
                ci = control_index(i, j, N)
                controls.append(ci)
                if keep_controls:
                    ctrl = ctrl_labels[ci]
            matrix, index_map = _interact(matrix, index_map, s_label, r_label, eta,
                                          protocol, ctrl)
            systems[j + 1] = density_to_bloch(partial_trace(matrix, [s_pos]))
            touched[j + 1] = density_to_bloch(
                partial_trace(matrix, [index_map.position(r_label)]))
        state = RegisterState(matrix, index_map)
        traces.append(HomogenizationTrace(
            protocol=protocol,
            eta=float(eta),
            target=alpha,
            systems=systems,
            reservoirs=touched,
            reservoir_final=np.array([state.bloch(r) for r in res_labels]).reshape(N, 3),
            controls=controls,
        ))
    return RegisterState(matrix, index_map), traces
