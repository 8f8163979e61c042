"""
Exceptions raised by the protocol engine.
"""


class ProtocolError(ValueError):
    """Inputs, resources and routing legs do not fit together."""


class CorrectionTableError(ProtocolError):
    """No valid Pauli correction, or an outcome missing from the table."""
