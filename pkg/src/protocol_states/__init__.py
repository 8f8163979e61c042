# Named states and gates of the multiplexing protocol
from .bell import (
    BELL_KINDS,
    BellKind,
    bell_state,
    decode_product_index,
    encode_product_index,
    hyper_bell_basis,
    product_bell_basis,
)
from .gates import (
    Correction,
    metasurface_operator,
    metasurface_state,
    oam_index,
    pauli_operator,
)
from .resource import (
    BellPairing,
    ResourceSpec,
    Spectator,
    build_resource,
    receiver_spec,
    transmitter_spec,
)

__all__ = [
    "BELL_KINDS",
    "BellKind",
    "BellPairing",
    "Correction",
    "ResourceSpec",
    "Spectator",
    "bell_state",
    "build_resource",
    "decode_product_index",
    "encode_product_index",
    "hyper_bell_basis",
    "metasurface_operator",
    "metasurface_state",
    "oam_index",
    "pauli_operator",
    "product_bell_basis",
    "receiver_spec",
    "transmitter_spec",
]
