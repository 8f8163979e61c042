# Labeled quantum states and the linear algebra on them
from .errors import BasisError, DimensionError, QuantumStateError, SubsystemError
from .labels import Dof, SubsystemLabel, generic, oam, sam
from .operations import (
    MeasurementResult,
    apply_kraus,
    apply_operator,
    basis_state,
    condition_on,
    entanglement_entropy,
    fidelity,
    haar_random_state,
    haar_random_unitary,
    maximally_mixed,
    measure_in_basis,
    outcome_probabilities,
    partial_trace,
    relabel,
    tensor_all,
    tensor_product,
    von_neumann_entropy,
)
from .states import DensityMatrix, Operator, StateVector

__all__ = [
    "BasisError",
    "DensityMatrix",
    "DimensionError",
    "Dof",
    "MeasurementResult",
    "Operator",
    "QuantumStateError",
    "StateVector",
    "SubsystemError",
    "SubsystemLabel",
    "apply_kraus",
    "apply_operator",
    "basis_state",
    "condition_on",
    "entanglement_entropy",
    "fidelity",
    "generic",
    "haar_random_state",
    "haar_random_unitary",
    "maximally_mixed",
    "measure_in_basis",
    "oam",
    "outcome_probabilities",
    "partial_trace",
    "relabel",
    "sam",
    "tensor_all",
    "tensor_product",
    "von_neumann_entropy",
]
