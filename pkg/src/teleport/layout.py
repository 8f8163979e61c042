"""
Protocol layout - the photon cast and teleportation legs for n degrees of freedom.

For two DoFs the cast is P1 (SAM) and P2 (OAM) as inputs, A and B as the
transmitter's near photons, C as the carrier, D as the receiver anchor and
E, F as outputs. Extra DoFs are generic qubits on photons A3.., O3...
"""
from dataclasses import dataclass
from functools import cached_property

from src.protocol_states import (
    BellKind,
    BellPairing,
    ResourceSpec,
    receiver_spec,
    transmitter_spec,
)
from src.quantum_core import Dof, StateVector, SubsystemLabel, generic, oam, sam

CARRIER = "C"
ANCHOR = "D"
MAX_DOFS = 8


@dataclass(frozen=True)
class TeleportLeg:
    """One DoF routed from ``source`` to ``far`` through the pair (near, far)."""

    source: SubsystemLabel
    near: SubsystemLabel
    far: SubsystemLabel
    resource_kind: BellKind = BellKind.PSI_MINUS

    @property
    def dof_name(self) -> str:
        if self.far.dof is Dof.GENERIC:
            return f"G{self.far.index}"
        return self.far.dof.value


def _dof_label(photon: str, i: int) -> SubsystemLabel:
    if i == 0:
        return sam(photon)
    if i == 1:
        return oam(photon)
    return generic(photon, i - 2)


@dataclass(frozen=True)
class ProtocolLayout:
    """Photon names and routing for multiplexing ``n_dofs`` qubits onto one carrier."""

    n_dofs: int = 2
    resource_kind: BellKind = BellKind.PSI_MINUS

    def __post_init__(self):
        if not 1 <= self.n_dofs <= MAX_DOFS:
            raise ValueError(f"n_dofs must be between 1 and {MAX_DOFS}, got {self.n_dofs}")

    @classmethod
    def for_dofs(cls, n_dofs: int, resource_kind: BellKind = BellKind.PSI_MINUS) -> "ProtocolLayout":
        return cls(n_dofs, BellKind(resource_kind))

    @classmethod
    def infer(cls, state: StateVector) -> "ProtocolLayout":
        """Largest layout whose input labels are all present in ``state``."""
        keys = {label.key for label in state.subsystems}
        n_dofs = 0
        while n_dofs < MAX_DOFS and all(
            label.key in keys for label in cls(n_dofs + 1).inputs
        ):
            n_dofs += 1
        if n_dofs == 0:
            raise ValueError(f"No protocol input labels found in {state!r}")
        return cls(n_dofs)

    @cached_property
    def inputs(self) -> tuple[SubsystemLabel, ...]:
        return tuple(_dof_label(f"P{i + 1}", i) for i in range(self.n_dofs))

    @cached_property
    def near(self) -> tuple[SubsystemLabel, ...]:
        names = ["A", "B"] + [f"A{i + 1}" for i in range(2, self.n_dofs)]
        return tuple(_dof_label(names[i], i) for i in range(self.n_dofs))

    @cached_property
    def carrier(self) -> tuple[SubsystemLabel, ...]:
        return tuple(_dof_label(CARRIER, i) for i in range(self.n_dofs))

    @cached_property
    def anchor(self) -> tuple[SubsystemLabel, ...]:
        return tuple(_dof_label(ANCHOR, i) for i in range(self.n_dofs))

    @cached_property
    def outputs(self) -> tuple[SubsystemLabel, ...]:
        names = ["E", "F"] + [f"O{i + 1}" for i in range(2, self.n_dofs)]
        return tuple(_dof_label(names[i], i) for i in range(self.n_dofs))

    @property
    def carrier_photon(self) -> str:
        return CARRIER

    @property
    def output_photons(self) -> tuple[str, ...]:
        return tuple(label.photon for label in self.outputs)

    @cached_property
    def multiplex_legs(self) -> tuple[TeleportLeg, ...]:
        return tuple(
            TeleportLeg(src, near, far, self.resource_kind)
            for src, near, far in zip(self.inputs, self.near, self.carrier)
        )

    @cached_property
    def demultiplex_legs(self) -> tuple[TeleportLeg, ...]:
        return tuple(
            TeleportLeg(src, near, far, self.resource_kind)
            for src, near, far in zip(self.carrier, self.anchor, self.outputs)
        )

    def transmitter_spec(self) -> ResourceSpec:
        if self.n_dofs == 2:
            return transmitter_spec(self.resource_kind)
        return ResourceSpec(
            pairings=tuple(
                BellPairing(near, far, self.resource_kind)
                for near, far in zip(self.near, self.carrier)
            )
        )

    def receiver_spec(self) -> ResourceSpec:
        if self.n_dofs == 2:
            return receiver_spec(self.resource_kind)
        return ResourceSpec(
            pairings=tuple(
                BellPairing(near, far, self.resource_kind)
                for near, far in zip(self.anchor, self.outputs)
            )
        )
