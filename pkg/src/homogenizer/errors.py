"""Exception hierarchy shared by every module."""


class HomogenizerError(Exception):
    """Base class for all package errors."""


class InvalidStateError(HomogenizerError, ValueError):
    """A matrix or Bloch vector is not a valid quantum state."""


class DimensionError(HomogenizerError, ValueError):
    """Operand shapes are incompatible with the operation."""


class CapacityError(HomogenizerError, ValueError):
    """A register would exceed the configured maximum number of qubits."""


class GateError(HomogenizerError, ValueError):
    """A supplied gate is not unitary or does not fit its targets."""


class QubitIndexError(HomogenizerError, IndexError):
    """A qubit position is out of range or repeated."""


class ConfigurationError(HomogenizerError, ValueError):
    """An experiment or protocol configuration is inconsistent."""


class DomainError(HomogenizerError, ValueError):
    """A bound was evaluated outside its mathematical domain."""
