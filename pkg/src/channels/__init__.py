# Channel algebra, erasure models and capacity analysis
from .capacity import (
    FlagDecomposition,
    InputFamily,
    coherent_information,
    coherent_information_by_flag,
    coherent_information_max,
    erasure_capacity_formula,
    maximally_entangled_input,
    schmidt_family,
)
from .erasure import (
    ErasureParams,
    carrier_erasure_channel,
    erasure_channel,
    erasure_degrading_map,
    independent_erasure_channel,
)
from .kraus import (
    ChannelError,
    KrausChannel,
    complementary_channel,
    compose,
    identity_channel,
    product_channel,
    stinespring_isometry,
)

__all__ = [
    "ChannelError",
    "ErasureParams",
    "FlagDecomposition",
    "InputFamily",
    "KrausChannel",
    "carrier_erasure_channel",
    "coherent_information",
    "coherent_information_by_flag",
    "coherent_information_max",
    "complementary_channel",
    "compose",
    "erasure_capacity_formula",
    "erasure_channel",
    "erasure_degrading_map",
    "identity_channel",
    "independent_erasure_channel",
    "maximally_entangled_input",
    "product_channel",
    "schmidt_family",
    "stinespring_isometry",
]
