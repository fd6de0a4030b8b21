"""Dense state-space utilities for small qubit registers.

States are plain ``numpy`` arrays: density matrices are complex ``(2**k, 2**k)``
arrays and Bloch vectors are real arrays of shape ``(3,)``. Qubit 0 is the most
significant tensor factor, so ``kron(a, b)`` puts ``a`` on position 0.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapacityError,
    DimensionError,
    GateError,
    InvalidStateError,
    QubitIndexError,
)

DEFAULT_MAX_QUBITS = 13
MAX_QUBITS_ENV = "HOMOGENIZER_MAX_QUBITS"

STATE_TOL = 1e-12
PSD_TOL = 1e-10
UNITARY_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

BlochVector = np.ndarray


def max_qubits() -> int:
    """Register capacity, overridable through ``HOMOGENIZER_MAX_QUBITS``."""
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError as exc:
        raise CapacityError(f"{MAX_QUBITS_ENV}={raw!r} is not an integer") from exc
    if value < 1:
        raise CapacityError(f"{MAX_QUBITS_ENV} must be positive, got {value}")
    return value


def num_qubits(m: np.ndarray) -> int:
    """Number of qubits carried by a square matrix of dimension ``2**k``."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    dim = m.shape[0]
    k = dim.bit_length() - 1
    if dim < 1 or 1 << k != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return k


def _check_capacity(k: int) -> None:
    limit = max_qubits()
    if k > limit:
        raise CapacityError(f"register of {k} qubits exceeds the maximum of {limit}")


def bloch_vector(v: Iterable[float]) -> BlochVector:
    """Validate and copy a Bloch vector."""
    b = np.asarray(list(v) if not isinstance(v, np.ndarray) else v, dtype=float)
    if b.shape != (3,):
        raise DimensionError(f"a Bloch vector has 3 components, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise InvalidStateError(f"non-finite Bloch vector {b}")
    norm = float(np.linalg.norm(b))
    if norm > 1 + STATE_TOL:
        raise InvalidStateError(f"Bloch vector norm {norm!r} exceeds 1")
    return b.copy()


def check_state(m: np.ndarray, tol: float = STATE_TOL) -> None:
    """Raise :class:`InvalidStateError` unless ``m`` is a density matrix."""
    num_qubits(m)
    herm = np.max(np.abs(m - m.conj().T))
    if herm > tol:
        raise InvalidStateError(f"matrix is not Hermitian (deviation {herm:.3e})")
    tr = np.trace(m)
    if abs(tr - 1) > tol:
        raise InvalidStateError(f"trace {tr} differs from 1")
    lam = np.linalg.eigvalsh((m + m.conj().T) / 2)
    if lam[0] < -PSD_TOL:
        raise InvalidStateError(f"negative eigenvalue {lam[0]:.3e}")


def bloch_to_density(b: Iterable[float]) -> np.ndarray:
    """Return the single-qubit state ``(1 + b.sigma) / 2``."""
    x, y, z = bloch_vector(b)
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]], dtype=complex)


def density_to_bloch(m: np.ndarray) -> BlochVector:
    """Return ``(Tr(m X), Tr(m Y), Tr(m Z))`` for a 2x2 state."""
    m = np.asarray(m)
    if m.shape != (2, 2):
        raise DimensionError(f"expected a 2x2 matrix, got shape {m.shape}")
    return np.array(
        [2 * m[1, 0].real, 2 * m[1, 0].imag, (m[0, 0] - m[1, 1]).real], dtype=float
    )


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product, refusing registers above the configured capacity."""
    a = np.asarray(a)
    b = np.asarray(b)
    k = num_qubits(a) + num_qubits(b)
    _check_capacity(k)
    return np.kron(a, b)


def kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    if not mats:
        raise DimensionError("kron_all needs at least one factor")
    total = sum(num_qubits(np.asarray(m)) for m in mats)
    _check_capacity(total)
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def partial_trace(m: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Reduce ``m`` to the qubits in ``keep``, preserving their relative order."""
    k = num_qubits(m)
    keep = sorted(set(int(q) for q in keep))
    for q in keep:
        if not 0 <= q < k:
            raise QubitIndexError(f"qubit position {q} outside 0..{k - 1}")
    drop = [q for q in range(k) if q not in keep]
    t = m.reshape((2,) * (2 * k))
    # trace from the highest position down so remaining axis numbers stay valid
    n = k
    for q in reversed(drop):
        t = np.trace(t, axis1=q, axis2=q + n)
        n -= 1
    d = 1 << len(keep)
    return t.reshape(d, d)


def _check_targets(targets: Sequence[int], k: int) -> list[int]:
    targets = [int(t) for t in targets]
    if len(set(targets)) != len(targets):
        raise QubitIndexError(f"repeated target in {targets}")
    for t in targets:
        if not 0 <= t < k:
            raise QubitIndexError(f"target {t} outside 0..{k - 1}")
    return targets


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))) <= tol


def apply_unitary(m: np.ndarray, u: np.ndarray, targets: Sequence[int]) -> np.ndarray:
    """Return ``U m U^dagger`` with ``u`` acting on ``targets`` (in that order).

    ``targets[i]`` receives the i-th tensor factor of ``u``; the other qubits see
    the identity. The full ``2**k`` operator is never built.
    """
    k = num_qubits(m)
    targets = _check_targets(targets, k)
    u = np.asarray(u, dtype=complex)
    nt = len(targets)
    if u.shape != (1 << nt, 1 << nt):
        raise GateError(f"gate of shape {u.shape} does not act on {nt} qubits")
    if not is_unitary(u):
        raise GateError("gate is not unitary")

    ut = u.reshape((2,) * (2 * nt))
    t = m.reshape((2,) * (2 * k))
    # left multiplication on the row indices
    t = np.tensordot(ut, t, axes=(list(range(nt, 2 * nt)), targets))
    t = np.moveaxis(t, list(range(nt)), targets)
    # right multiplication by U^dagger on the column indices
    cols = [k + q for q in targets]
    t = np.tensordot(t, ut.conj(), axes=(cols, list(range(nt, 2 * nt))))
    t = np.moveaxis(t, list(range(2 * k - nt, 2 * k)), cols)
    return t.reshape(1 << k, 1 << k)


def _clamped_eigvals(m: np.ndarray) -> np.ndarray:
    lam = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return np.clip(lam, 0.0, 1.0)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """Squared-Uhlmann fidelity of two qubit states, via their Bloch vectors."""
    return bloch_fidelity(density_to_bloch(a), density_to_bloch(b))


# 1 - |a|^2 below this is rounding noise; its square root would not be
PURE_SLACK = 1e-14


def bloch_fidelity(a: BlochVector, b: BlochVector) -> float:
    """``(1 + a.b + sqrt((1-|a|^2)(1-|b|^2))) / 2``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ma = 1.0 - float(a @ a)
    mb = 1.0 - float(b @ b)
    ma = 0.0 if ma < PURE_SLACK else ma
    mb = 0.0 if mb < PURE_SLACK else mb
    f = 0.5 * (1.0 + float(a @ b) + np.sqrt(ma * mb))
    return float(min(1.0, max(0.0, f)))


def bloch_distance(a: BlochVector, b: BlochVector) -> float:
    """Euclidean distance of Bloch vectors (twice the trace distance)."""
    return float(np.linalg.norm(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))


def von_neumann_entropy(m: np.ndarray, base: float = 2.0) -> float:
    """Entropy of ``m``; bits by default, pass ``base=np.e`` for nats."""
    num_qubits(m)
    lam = _clamped_eigvals(m)
    lam = lam[lam > 0]
    s = -float(np.sum(lam * np.log(lam)))
    return max(0.0, s / np.log(base))


def purity(m: np.ndarray) -> float:
    return float(np.real(np.trace(m @ m)))


@dataclass(frozen=True)
class QubitIndexMap:
    """Ordered logical labels, e.g. ``("s", "r1", "r2", "c1")``, to positions."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise QubitIndexError(f"duplicate qubit labels in {self.labels}")

    def __len__(self) -> int:
        return len(self.labels)

    def position(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise QubitIndexError(f"unknown qubit label {label!r}") from exc

    def positions(self, labels: Iterable[str]) -> list[int]:
        return [self.position(lab) for lab in labels]

    def without(self, labels: Iterable[str]) -> "QubitIndexMap":
        drop = set(labels)
        for lab in drop:
            self.position(lab)
        return QubitIndexMap(tuple(lab for lab in self.labels if lab not in drop))

    def extended(self, *labels: str) -> "QubitIndexMap":
        return QubitIndexMap(self.labels + tuple(labels))
