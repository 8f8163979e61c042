"""
Exceptions raised by the state algebra.
"""


class QuantumStateError(ValueError):
    """Base class for invalid states, operators and subsystem bookkeeping."""


class SubsystemError(QuantumStateError):
    """Duplicate, unknown or overlapping subsystem labels."""


class DimensionError(QuantumStateError):
    """Array sizes do not match the declared subsystem dimensions."""


class BasisError(QuantumStateError):
    """Measurement basis is incomplete or not orthonormal."""
