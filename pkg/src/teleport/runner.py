"""
End-to-end protocol runs: multiplex onto the carrier, lossy transmission,
demultiplex onto the output photons, then score the reconstruction.

Erasure is simulated as classical branching: one Bernoulli draw per noise
site (per output photon after demultiplexing). A lost carrier ends the run.
"""
import logging
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from src.protocol_states import BellKind, bell_state, build_resource
from src.quantum_core import (
    DensityMatrix,
    StateVector,
    SubsystemLabel,
    entanglement_entropy,
    fidelity,
    maximally_mixed,
    oam,
    partial_trace,
    relabel,
    sam,
    tensor_all,
    tensor_product,
)

from .corrections import CorrectionTable, default_correction_table
from .engine import DEMULTIPLEX, MULTIPLEX, MeasurementMode, demultiplex, multiplex
from .errors import ProtocolError
from .layout import ProtocolLayout
from .noise import CARRIER_SITES, LostPolicy, NoiseConfig, NoiseSite
from .trace import ProtocolTrace

logger = logging.getLogger(__name__)


@dataclass
class _Outcome:
    """Raw result of one run before scoring."""

    trace: ProtocolTrace
    state: StateVector | None  # over outputs + extras; None when the carrier was lost
    extras: tuple[SubsystemLabel, ...]
    reduced_extras: DensityMatrix | None = None
    lost_outputs: list[int] = field(default_factory=list)


def _erased(noise: NoiseConfig, rng: np.random.Generator) -> bool:
    return bool(rng.random() < noise.epsilon)


def _simulate(
    inputs: StateVector,
    layout: ProtocolLayout,
    noise: NoiseConfig,
    rng: np.random.Generator,
    table: CorrectionTable,
    measurement: MeasurementMode,
    outcomes: Mapping[str, Sequence[BellKind]] | None,
) -> _Outcome:
    input_keys = {label.key for label in layout.inputs}
    extras = tuple(label for label in inputs.subsystems if label.key not in input_keys)
    outcomes = outcomes or {}
    trace = ProtocolTrace()

    transmitter = build_resource(layout.transmitter_spec())
    state, partial = multiplex(
        inputs,
        transmitter,
        layout.multiplex_legs,
        table,
        rng,
        outcomes=outcomes.get(MULTIPLEX),
        measurement=measurement,
    )
    trace.extend(partial)

    # The carrier leaves the transmitter and crosses the channel as one photon
    for site in CARRIER_SITES:
        if site not in noise.sites:
            continue
        lost = _erased(noise, rng)
        trace.record_erasure(site, layout.carrier_photon, lost)
        if lost:
            logger.debug(f"Carrier erased at {site.value}")
            reduced = partial_trace(state, extras) if extras else None
            return _Outcome(trace, None, extras, reduced_extras=reduced)

    receiver = build_resource(layout.receiver_spec())
    state, partial = demultiplex(
        state,
        receiver,
        layout.demultiplex_legs,
        table,
        rng,
        outcomes=outcomes.get(DEMULTIPLEX),
        measurement=measurement,
    )
    trace.extend(partial)

    lost_outputs = []
    if NoiseSite.AFTER_DEMULTIPLEX in noise.sites:
        for i, photon in enumerate(layout.output_photons):
            lost = _erased(noise, rng)
            trace.record_erasure(NoiseSite.AFTER_DEMULTIPLEX, photon, lost)
            if lost:
                lost_outputs.append(i)

    return _Outcome(trace, state, extras, lost_outputs=lost_outputs)


def _reconstruct(
    outcome: _Outcome,
    layout: ProtocolLayout,
    policy: LostPolicy,
) -> DensityMatrix | None:
    """Reconstructed state over the input labels plus extras, or None when the run is discarded."""
    if outcome.trace.lost and policy is LostPolicy.CONDITIONAL:
        return None

    if outcome.state is None:
        blank = maximally_mixed(layout.inputs)
        if outcome.reduced_extras is None:
            return blank
        return tensor_product(blank, outcome.reduced_extras)

    kept = [label for i, label in enumerate(layout.outputs) if i not in outcome.lost_outputs]
    reduced = partial_trace(outcome.state, kept + list(outcome.extras))
    if outcome.lost_outputs:
        blank = maximally_mixed([layout.outputs[i] for i in outcome.lost_outputs])
        reduced = tensor_product(reduced, blank)
    return relabel(reduced, dict(zip(layout.outputs, layout.inputs)))


def _prepare_input(
    input_state: StateVector | np.ndarray,
    n_dofs: int | None,
) -> tuple[StateVector, ProtocolLayout]:
    if isinstance(input_state, StateVector):
        layout = ProtocolLayout.infer(input_state) if n_dofs is None else ProtocolLayout.for_dofs(n_dofs)
        return input_state, layout

    amplitudes = np.asarray(input_state, dtype=complex).reshape(-1)
    inferred = int(round(np.log2(amplitudes.size))) if amplitudes.size > 1 else 0
    if 2**inferred != amplitudes.size:
        raise ProtocolError(f"Input needs 2**n amplitudes, got {amplitudes.size}")
    if n_dofs is not None and n_dofs != inferred:
        raise ProtocolError(f"Input has {inferred} qubits but n_dofs = {n_dofs}")
    layout = ProtocolLayout.for_dofs(inferred)
    return StateVector(amplitudes, layout.inputs), layout


def run_protocol(
    input_state: StateVector | np.ndarray,
    noise: NoiseConfig,
    rng: np.random.Generator,
    *,
    table: CorrectionTable | None = None,
    measurement: MeasurementMode = MeasurementMode.SEQUENTIAL,
    outcomes: Mapping[str, Sequence[BellKind]] | None = None,
    n_dofs: int | None = None,
) -> ProtocolTrace:
    """
    Send an n-qubit state through multiplex, the noisy channel and demultiplex.

    Args:
        input_state: 2**n amplitudes (placed on the input DoFs P1..Pn) or a
            StateVector holding the input labels plus any reference subsystems
        noise: Erasure probability, sites and lost-run policy
        rng: Random generator for Bell outcomes and erasure draws
        table: Correction table (derived on first use when omitted)
        measurement: Sequential or joint Bell measurements
        outcomes: Forced Bell outcomes keyed by stage ("multiplex", "demultiplex")
        n_dofs: Number of DoFs, inferred from the input when omitted

    Returns:
        Trace with the fidelity of the reconstruction to the input
        (None when a lost run is discarded under conditional scoring)
    """
    inputs, layout = _prepare_input(input_state, n_dofs)
    if table is None:
        table = default_correction_table()

    outcome = _simulate(inputs, layout, noise, rng, table, MeasurementMode(measurement), outcomes)
    reconstruction = _reconstruct(outcome, layout, noise.lost_policy)

    trace = outcome.trace
    if reconstruction is not None:
        trace.final_fidelity = fidelity(inputs, reconstruction)
        trace.reconstruction = reconstruction
    logger.debug(
        f"Run finished: outcomes={[r.outcome.value for r in trace.bsm_outcomes]}, "
        f"lost={trace.lost}, fidelity={trace.final_fidelity}"
    )
    return trace


@dataclass
class EntanglementResult:
    """Output of the pair-generation run."""

    state: DensityMatrix | None
    trace: ProtocolTrace
    pair_fidelities: dict[str, float] = field(default_factory=dict)
    pair_entropies: dict[str, float] = field(default_factory=dict)


def entanglement_generation(
    noise: NoiseConfig,
    rng: np.random.Generator,
    *,
    pair_kind: BellKind = BellKind.PHI_PLUS,
    table: CorrectionTable | None = None,
    measurement: MeasurementMode = MeasurementMode.SEQUENTIAL,
    outcomes: Mapping[str, Sequence[BellKind]] | None = None,
) -> EntanglementResult:
    """
    Generate two entangled pairs with one carrier photon.

    P1 and P3 share a SAM Bell pair, P2 and P4 an OAM Bell pair. Multiplexing
    P1 and P2 onto C and demultiplexing onto E and F swaps the entanglement, so
    the outputs are the pairs (E_SAM, P3_SAM) and (F_OAM, P4_OAM).

    Returns:
        Output state over E, F, P3, P4 with per-pair Bell fidelity and entropy
        (empty when a lost run is discarded under conditional scoring)
    """
    layout = ProtocolLayout.for_dofs(2)
    p1, p2 = layout.inputs
    e, f = layout.outputs
    p3, p4 = sam("P3"), oam("P4")
    pairs = {"SAM": (e, p3), "OAM": (f, p4)}

    initial = tensor_all([bell_state(pair_kind, p1, p3), bell_state(pair_kind, p2, p4)])
    if table is None:
        table = default_correction_table()

    outcome = _simulate(initial, layout, noise, rng, table, MeasurementMode(measurement), outcomes)
    reconstruction = _reconstruct(outcome, layout, noise.lost_policy)
    trace = outcome.trace
    if reconstruction is None:
        return EntanglementResult(None, trace)

    trace.final_fidelity = fidelity(initial, reconstruction)
    trace.reconstruction = reconstruction
    state = relabel(reconstruction, {p1: e, p2: f})

    result = EntanglementResult(state, trace)
    for name, (out, partner) in pairs.items():
        expected = bell_state(pair_kind, out, partner)
        pair = partial_trace(state, [out, partner])
        result.pair_fidelities[name] = fidelity(expected, pair)
        result.pair_entropies[name] = entanglement_entropy(pair, [out])
    logger.info(f"Pair generation: fidelities={result.pair_fidelities}")
    return result
