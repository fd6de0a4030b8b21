"""Partial-swap, swap and controlled-swap unitaries plus control preparation."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)

_P0 = np.diag([1.0, 0.0]).astype(complex)
_P1 = np.diag([0.0, 1.0]).astype(complex)


def coupling(eta: float) -> tuple[float, float]:
    """Validate a coupling angle and return ``(cos eta, sin eta)``."""
    eta = float(eta)
    if not (0.0 <= eta <= math.pi / 2) or math.isnan(eta):
        raise DomainError(f"coupling eta={eta!r} outside [0, pi/2]")
    return math.cos(eta), math.sin(eta)


def pswap(eta: float) -> np.ndarray:
    """``cos(eta) I + i sin(eta) SWAP`` on two qubits."""
    c, s = coupling(eta)
    return c * np.eye(4, dtype=complex) + 1j * s * SWAP


def cswap() -> np.ndarray:
    """Fredkin gate with the control on tensor slot 0.

    Swaps slots 1 and 2 when the control reads ``|1>``. No normalising prefactor:
    the gate is real, symmetric and its own inverse.
    """
    return np.kron(_P0, np.eye(4)) + np.kron(_P1, SWAP.real).astype(complex)


def control_bloch(eta: float) -> np.ndarray:
    """Bloch vector ``(sin 2eta, 0, cos 2eta)`` of ``cos eta|0> + sin eta|1>``."""
    coupling(eta)
    return np.array([math.sin(2 * eta), 0.0, math.cos(2 * eta)])


def control_state(eta: float) -> np.ndarray:
    """Pure control state ``|c><c|`` with ``|c> = cos eta|0> + sin eta|1>``."""
    c, s = coupling(eta)
    psi = np.array([c, s], dtype=complex)
    return np.outer(psi, psi.conj())

