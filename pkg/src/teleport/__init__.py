# Teleportation-based multiplexing and demultiplexing of photon DoFs
from .corrections import CorrectionTable, default_correction_table, derive_correction_table, reconstructs
from .engine import (
    DEMULTIPLEX,
    MULTIPLEX,
    MeasurementMode,
    bell_measurement,
    demultiplex,
    multiplex,
    teleport_dof,
)
from .errors import CorrectionTableError, ProtocolError
from .layout import MAX_DOFS, ProtocolLayout, TeleportLeg
from .noise import CARRIER_SITES, DEFAULT_SITES, LostPolicy, NoiseConfig, NoiseSite
from .runner import EntanglementResult, entanglement_generation, run_protocol
from .trace import BsmRecord, ErasureEvent, ProtocolTrace

__all__ = [
    "BsmRecord",
    "CARRIER_SITES",
    "CorrectionTable",
    "CorrectionTableError",
    "DEFAULT_SITES",
    "DEMULTIPLEX",
    "EntanglementResult",
    "ErasureEvent",
    "LostPolicy",
    "MAX_DOFS",
    "MULTIPLEX",
    "MeasurementMode",
    "NoiseConfig",
    "NoiseSite",
    "ProtocolError",
    "ProtocolLayout",
    "ProtocolTrace",
    "TeleportLeg",
    "bell_measurement",
    "default_correction_table",
    "demultiplex",
    "derive_correction_table",
    "entanglement_generation",
    "multiplex",
    "reconstructs",
    "run_protocol",
    "teleport_dof",
]
