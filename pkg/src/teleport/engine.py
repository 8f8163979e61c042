"""
Teleportation engine - Bell measurement with Pauli correction, and the
multiplex / demultiplex stages built from it.
"""
import logging
from enum import Enum
from typing import Sequence

import numpy as np

from src.protocol_states import (
    BELL_KINDS,
    BellKind,
    decode_product_index,
    encode_product_index,
    product_bell_basis,
)
from src.quantum_core import (
    StateVector,
    SubsystemLabel,
    apply_operator,
    measure_in_basis,
    tensor_product,
)

from .corrections import CorrectionTable
from .errors import ProtocolError
from .layout import TeleportLeg
from .trace import ProtocolTrace

logger = logging.getLogger(__name__)

MULTIPLEX = "multiplex"
DEMULTIPLEX = "demultiplex"


class MeasurementMode(str, Enum):
    """Sequential per-DoF Bell measurements, or one joint product-Bell measurement."""

    SEQUENTIAL = "sequential"
    JOINT = "joint"


def bell_measurement(
    state: StateVector,
    pair: tuple[SubsystemLabel, SubsystemLabel],
    rng: np.random.Generator | None,
    *,
    outcome: BellKind | None = None,
) -> tuple[BellKind, StateVector]:
    """
    Measure ``pair`` in the Bell basis and trace it out.

    Args:
        state: Joint state containing both labels
        pair: The two measured qubits (left, right)
        rng: Random generator used to sample the outcome
        outcome: Force this outcome instead of sampling

    Returns:
        Tuple of (measured Bell kind, post-measurement state)
    """
    forced = None if outcome is None else BELL_KINDS.index(BellKind(outcome))
    index, post, _ = measure_in_basis(state, product_bell_basis([pair]), rng, outcome=forced)
    return BELL_KINDS[index], post


def teleport_dof(
    state: StateVector,
    source: SubsystemLabel,
    resource_near: SubsystemLabel,
    resource_far: SubsystemLabel,
    table: CorrectionTable,
    rng: np.random.Generator | None,
    *,
    resource_kind: BellKind = BellKind.PSI_MINUS,
    outcome: BellKind | None = None,
) -> tuple[StateVector, BellKind]:
    """
    Teleport ``source`` onto ``resource_far`` using the pair (near, far).

    Returns:
        Tuple of (state with the source moved to ``resource_far``, measured Bell kind)

    Raises:
        CorrectionTableError: The table has no entry for the measured outcome
    """
    measured, post = bell_measurement(state, (source, resource_near), rng, outcome=outcome)
    correction = table.lookup(resource_kind, measured)
    return apply_operator(post, correction.operator, [resource_far]), measured


def _present(state: StateVector, labels: Sequence[SubsystemLabel]) -> bool:
    keys = {label.key for label in state.subsystems}
    return all(label.key in keys for label in labels)


def _check_legs(
    legs: Sequence[TeleportLeg],
    state: StateVector,
    resource: StateVector,
) -> None:
    if not legs:
        raise ProtocolError("At least one teleportation leg is required")
    for leg in legs:
        if not _present(state, [leg.source]):
            raise ProtocolError(f"Input state has no subsystem {leg.source}")
        if not _present(resource, [leg.near, leg.far]):
            raise ProtocolError(f"Resource has no pair {leg.near} - {leg.far}")
        if not (leg.source.dof == leg.near.dof == leg.far.dof) or leg.source.index != leg.far.index:
            raise ProtocolError(f"DoF mismatch on leg {leg.source} -> {leg.far}")


def _run_legs(
    state: StateVector,
    legs: Sequence[TeleportLeg],
    table: CorrectionTable,
    rng: np.random.Generator | None,
    stage: str,
    outcomes: Sequence[BellKind] | None,
    measurement: MeasurementMode,
) -> tuple[StateVector, ProtocolTrace]:
    if outcomes is not None and len(outcomes) != len(legs):
        raise ProtocolError(f"Expected {len(legs)} forced outcomes, got {len(outcomes)}")

    trace = ProtocolTrace()
    if MeasurementMode(measurement) is MeasurementMode.SEQUENTIAL:
        for i, leg in enumerate(legs):
            state, measured = teleport_dof(
                state,
                leg.source,
                leg.near,
                leg.far,
                table,
                rng,
                resource_kind=leg.resource_kind,
                outcome=None if outcomes is None else outcomes[i],
            )
            trace.record_bsm(stage, leg.dof_name, measured, table.lookup(leg.resource_kind, measured))
        return state, trace

    # Joint: one 4**n-outcome measurement, then per-DoF corrections
    basis = product_bell_basis([(leg.source, leg.near) for leg in legs])
    forced = None if outcomes is None else encode_product_index([BellKind(k) for k in outcomes])
    index, state, _ = measure_in_basis(state, basis, rng, outcome=forced)
    for leg, measured in zip(legs, decode_product_index(index, len(legs))):
        correction = table.lookup(leg.resource_kind, measured)
        state = apply_operator(state, correction.operator, [leg.far])
        trace.record_bsm(stage, leg.dof_name, measured, correction)
    return state, trace


def multiplex(
    inputs: StateVector,
    resource: StateVector,
    legs: Sequence[TeleportLeg],
    table: CorrectionTable,
    rng: np.random.Generator | None,
    *,
    outcomes: Sequence[BellKind] | None = None,
    measurement: MeasurementMode = MeasurementMode.SEQUENTIAL,
) -> tuple[StateVector, ProtocolTrace]:
    """
    Teleport each leg's source DoF onto a single carrier photon.

    Args:
        inputs: State holding the source DoFs (possibly entangled with other subsystems)
        resource: One Bell pair per leg, all far ends on the carrier photon
        legs: Routing, one leg per DoF
        table: Correction table
        rng: Random generator for the Bell outcomes
        outcomes: Forced Bell outcomes, one per leg
        measurement: Sequential or joint Bell measurement

    Returns:
        Tuple of (state with the carrier holding the inputs, partial trace)

    Raises:
        ProtocolError: Resource and inputs do not match the legs
    """
    _check_legs(legs, inputs, resource)
    if len({leg.far.photon for leg in legs}) != 1:
        raise ProtocolError("Multiplexing needs every far end on the same carrier photon")

    state, trace = _run_legs(
        tensor_product(inputs, resource), legs, table, rng, MULTIPLEX, outcomes, measurement
    )
    logger.debug(f"Multiplexed {len(legs)} DoFs onto photon {legs[0].far.photon}")
    return state, trace


def demultiplex(
    carrier_state: StateVector,
    resource: StateVector,
    legs: Sequence[TeleportLeg],
    table: CorrectionTable,
    rng: np.random.Generator | None,
    *,
    outcomes: Sequence[BellKind] | None = None,
    measurement: MeasurementMode = MeasurementMode.SEQUENTIAL,
) -> tuple[StateVector, ProtocolTrace]:
    """
    Teleport the carrier's DoFs onto separate output photons.

    The resource holds one Bell pair per leg, near ends on a single anchor
    photon and far ends on distinct output photons.

    Raises:
        ProtocolError: Resource and carrier do not match the legs
    """
    _check_legs(legs, carrier_state, resource)
    if len({leg.near.photon for leg in legs}) != 1:
        raise ProtocolError("Demultiplexing needs every near end on the same anchor photon")
    if len({leg.far.photon for leg in legs}) != len(legs):
        raise ProtocolError("Demultiplexing needs a distinct output photon per DoF")

    state, trace = _run_legs(
        tensor_product(carrier_state, resource), legs, table, rng, DEMULTIPLEX, outcomes, measurement
    )
    logger.debug(f"Demultiplexed {len(legs)} DoFs onto {[leg.far.photon for leg in legs]}")
    return state, trace
