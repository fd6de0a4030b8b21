"""Reduced single-qubit maps for one interaction and their iteration.

A single interaction maps the Bloch vectors ``(s, r)`` of a system and a
reservoir qubit to

    cswap:  s' = c^2 s + s^2 r                    r' = c^2 r + s^2 s
    pswap:  s' = c^2 s + s^2 r + k c s (s x r)    r' = c^2 r + s^2 s - k c s (s x r)

with ``c = cos eta``, ``s = sin eta`` (the angle sine, not the system vector).
The cross-term coefficient ``k`` is not hard-coded: it is extracted once from a
brute-force 4x4 conjugation, see :func:`pswap_cross_coefficient`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np

from . import gates
from .errors import ConfigurationError
from .qcore import (
    I2,
    PAULIS,
    BlochVector,
    apply_unitary,
    bloch_distance,
    bloch_fidelity,
    bloch_to_density,
    bloch_vector,
    density_to_bloch,
    partial_trace,
)

Protocol = Literal["pswap", "cswap"]
PROTOCOLS = ("pswap", "cswap")


def check_protocol(protocol: str) -> str:
    p = str(protocol).lower()
    if p not in PROTOCOLS:
        raise ConfigurationError(f"unknown protocol {protocol!r}; expected pswap or cswap")
    return p


@dataclass(frozen=True)
class InteractionResult:
    system: BlochVector
    reservoir: BlochVector
    control: Optional[BlochVector] = None


@functools.lru_cache(maxsize=None)
def pswap_cross_coefficient() -> float:
    """Coefficient ``k`` of ``c s (s x r)`` in the partial-swap system map.

    Determined by conjugating a fixed generic product state with the partial
    swap and projecting the residual of the system marginal onto ``c s (s x r)``.
    """
    beta = np.array([0.3, -0.5, 0.4])
    alpha = np.array([-0.2, 0.6, 0.35])
    eta = 0.61
    c, s = np.cos(eta), np.sin(eta)
    joint = np.kron(bloch_to_density(beta), bloch_to_density(alpha))
    out = apply_unitary(joint, gates.pswap(eta), [0, 1])
    sys_out = density_to_bloch(partial_trace(out, [0]))
    residual = sys_out - (c * c * beta + s * s * alpha)
    direction = c * s * np.cross(beta, alpha)
    return float(residual @ direction / (direction @ direction))


def cswap_step(system, reservoir, eta: float) -> InteractionResult:
    """Reduced states after one controlled swap with a fresh control.

    The control Bloch vector keeps its z component; its x and y components
    shrink by ``(1 + r.s) / 2``.
    """
    s_vec = bloch_vector(system)
    r_vec = bloch_vector(reservoir)
    c, s = gates.coupling(eta)
    c2, s2 = c * c, s * s
    ctrl = gates.control_bloch(eta)
    shrink = 0.5 * (1.0 + float(r_vec @ s_vec))
    ctrl_out = np.array([ctrl[0] * shrink, ctrl[1] * shrink, ctrl[2]])
    return InteractionResult(
        system=c2 * s_vec + s2 * r_vec,
        reservoir=c2 * r_vec + s2 * s_vec,
        control=ctrl_out,
    )


def pswap_step(system, reservoir, eta: float) -> InteractionResult:
    """Reduced states after one partial swap of two uncorrelated qubits."""
    s_vec = bloch_vector(system)
    r_vec = bloch_vector(reservoir)
    c, s = gates.coupling(eta)
    c2, s2 = c * c, s * s
    cross = pswap_cross_coefficient() * c * s * np.cross(s_vec, r_vec)
    return InteractionResult(
        system=c2 * s_vec + s2 * r_vec + cross,
        reservoir=c2 * r_vec + s2 * s_vec - cross,
    )


def step(system, reservoir, eta: float, protocol: str) -> InteractionResult:
    if check_protocol(protocol) == "cswap":
        return cswap_step(system, reservoir, eta)
    return pswap_step(system, reservoir, eta)


# --- closed-form joint states of one interaction -------------------------

_LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _LEVI_CIVITA[_i, _j, _k] = 1.0
    _LEVI_CIVITA[_i, _k, _j] = -1.0


def _wedge_term(v: np.ndarray) -> np.ndarray:
    """``v . (sigma x 1  ^  1 x sigma) = sum_ijk v_i e_ijk sigma_j (x) sigma_k``."""
    out = np.zeros((4, 4), dtype=complex)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                e = _LEVI_CIVITA[i, j, k]
                if e:
                    out += v[i] * e * np.kron(PAULIS[j], PAULIS[k])
    return out


def _difference_term(v: np.ndarray) -> np.ndarray:
    """``v . (sigma x 1 - 1 x sigma)``."""
    return sum(v[i] * (np.kron(PAULIS[i], I2) - np.kron(I2, PAULIS[i])) for i in range(3))


def cswap_joint_state(beta, alpha, eta: float) -> np.ndarray:
    """System-reservoir state after a controlled swap, control traced out."""
    c, s = gates.coupling(eta)
    rho = bloch_to_density(beta)
    xi = bloch_to_density(alpha)
    return c * c * np.kron(rho, xi) + s * s * np.kron(xi, rho)


def pswap_joint_state(beta, alpha, eta: float, kappa: Optional[float] = None) -> np.ndarray:
    """Two-qubit state after a partial swap.

    The coherent correction is ``k c s / 4 [ (b x a).(sigma x 1 - 1 x sigma)
    - (b - a).(sigma x 1 ^ 1 x sigma) ]``; ``kappa`` defaults to the
    oracle-determined :func:`pswap_cross_coefficient`.
    """
    if kappa is None:
        kappa = pswap_cross_coefficient()
    b = bloch_vector(beta)
    a = bloch_vector(alpha)
    c, s = gates.coupling(eta)
    coherent = _difference_term(np.cross(b, a)) - _wedge_term(b - a)
    return cswap_joint_state(b, a, eta) + kappa * c * s / 4 * coherent


def pswap_joint_state_printed(beta, alpha, eta: float) -> np.ndarray:
    """The tabulated form with both correction terms at ``-c s / 8``, for comparison."""
    b = bloch_vector(beta)
    a = bloch_vector(alpha)
    c, s = gates.coupling(eta)
    correction = _wedge_term(b - a) + _difference_term(np.cross(b, a))
    return cswap_joint_state(b, a, eta) - c * s / 8 * correction


# --- iterated homogenization ----------------------------------------------


@dataclass
class HomogenizationTrace:
    """Per-interaction record of one system passing through a reservoir.

    Row ``k`` of ``systems`` is the system after ``k`` interactions; row ``k`` of
    ``reservoirs`` is the reservoir qubit touched at interaction ``k`` right
    after it (row 0 holds the target, the initial reservoir state).
    """

    protocol: str
    eta: float
    target: BlochVector
    systems: np.ndarray
    reservoirs: np.ndarray
    reservoir_final: Optional[np.ndarray] = None
    controls: Optional[list[int]] = None
    entropy: Optional[list[float]] = None

    @property
    def steps(self) -> int:
        return len(self.systems) - 1

    @property
    def final_system(self) -> BlochVector:
        return self.systems[-1]

    @property
    def fidelity(self) -> np.ndarray:
        return np.array([bloch_fidelity(v, self.target) for v in self.systems])

    @property
    def distance(self) -> np.ndarray:
        return np.array([bloch_distance(v, self.target) for v in self.systems])


@dataclass
class ReservoirState:
    """Bloch vectors of the reservoir qubits and how often each was used."""

    blochs: np.ndarray
    counts: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        self.blochs = np.array(self.blochs, dtype=float)
        if self.blochs.ndim != 2 or self.blochs.shape[1] != 3:
            raise ConfigurationError(f"reservoir must be (N, 3), got {self.blochs.shape}")
        if self.counts is None:
            self.counts = np.zeros(len(self.blochs), dtype=int)

    @classmethod
    def uniform(cls, bloch, size: int) -> "ReservoirState":
        if size < 0:
            raise ConfigurationError(f"reservoir size must be >= 0, got {size}")
        b = bloch_vector(bloch)
        return cls(np.tile(b, (size, 1)).reshape(size, 3))

    def __len__(self) -> int:
        return len(self.blochs)


def control_index(system_index: int, reservoir_index: int, size: int) -> int:
    """Control used when system ``i`` meets reservoir qubit ``j``.

    A cyclic shift per pass: for fewer systems than reservoir qubits no control
    meets the same reservoir qubit twice.
    """
    return (system_index + reservoir_index) % size


def _pass(system, reservoir: ReservoirState, eta: float, protocol: str, target,
          system_index: int = 0) -> HomogenizationTrace:
    stepper = cswap_step if protocol == "cswap" else pswap_step
    size = len(reservoir)
    systems = np.empty((size + 1, 3))
    touched = np.empty((size + 1, 3))
    systems[0] = system
    touched[0] = target
    current = np.asarray(system, dtype=float)
    for j in range(size):
        res = stepper(current, reservoir.blochs[j], eta)
        current = res.system
        reservoir.blochs[j] = res.reservoir
        reservoir.counts[j] += 1
        systems[j + 1] = current
        touched[j + 1] = res.reservoir
    controls = None
    if protocol == "cswap":
        controls = [control_index(system_index, j, size) for j in range(size)]
    return HomogenizationTrace(
        protocol=protocol,
        eta=float(eta),
        target=np.asarray(target, dtype=float).copy(),
        systems=systems,
        reservoirs=touched,
        reservoir_final=reservoir.blochs.copy(),
        controls=controls,
    )


def homogenize_single_pass(system0, reservoir0, N: int, eta: float,
                           protocol: str) -> HomogenizationTrace:
    """Pass one system through ``N`` fresh reservoir qubits in index order."""
    protocol = check_protocol(protocol)
    if N < 0:
        raise ConfigurationError(f"N must be >= 0, got {N}")
    gates.coupling(eta)
    target = bloch_vector(reservoir0)
    reservoir = ReservoirState.uniform(target, int(N))
    return _pass(bloch_vector(system0), reservoir, eta, protocol, target)


def homogenize_repeated(systems0: Sequence, reservoir0, N: int, eta: float,
                        protocol: str) -> list[HomogenizationTrace]:
    """Pass systems one after another through the same, degrading reservoir.

    Each encounter is treated as a product of the current marginals. For the
    controlled swap with traced controls this is exact, because a mixture of
    swaps moves marginals linearly whatever the correlations. For the partial
    swap it is a mean-field approximation once qubits meet a second time.
    """
    protocol = check_protocol(protocol)
    systems0 = [bloch_vector(v) for v in systems0]
    n = len(systems0)
    if n < 1:
        raise ConfigurationError("need at least one system")
    if N < 0:
        raise ConfigurationError(f"N must be >= 0, got {N}")
    if protocol == "cswap" and n > 1 and N < n:
        raise ConfigurationError(
            f"cswap reuse needs N >= n for distinct controls, got N={N}, n={n}"
        )
    gates.coupling(eta)
    target = bloch_vector(reservoir0)
    reservoir = ReservoirState.uniform(target, int(N))
    return [_pass(v, reservoir, eta, protocol, target, i) for i, v in enumerate(systems0)]
