"""
Resource states - Bell pairs plus fixed spectator kets, such as the
transmitter's three-photon hyperentangled state and its receiver mirror.
"""
from dataclasses import dataclass

from src.quantum_core import (
    StateVector,
    SubsystemError,
    SubsystemLabel,
    basis_state,
    oam,
    sam,
    tensor_all,
)

from .bell import BellKind, bell_state


@dataclass(frozen=True)
class BellPairing:
    """Bell pair between two subsystems sharing one DoF."""

    left: SubsystemLabel
    right: SubsystemLabel
    kind: BellKind = BellKind.PSI_MINUS

    @property
    def dof(self):
        return self.left.dof


@dataclass(frozen=True)
class Spectator:
    """Subsystem held in a fixed computational basis ket."""

    label: SubsystemLabel
    index: int = 0


@dataclass(frozen=True)
class ResourceSpec:
    """Declarative description of a resource state."""

    pairings: tuple[BellPairing, ...] = ()
    spectators: tuple[Spectator, ...] = ()

    def __post_init__(self):
        keys = [p.left.key for p in self.pairings] + [p.right.key for p in self.pairings]
        keys += [s.label.key for s in self.spectators]
        if len(set(keys)) != len(keys):
            raise SubsystemError("Each label may appear in at most one pairing or spectator")
        for pairing in self.pairings:
            if pairing.left.dof != pairing.right.dof:
                raise SubsystemError(f"Pairing {pairing.left} - {pairing.right} mixes DoFs")
        for spectator in self.spectators:
            if not 0 <= spectator.index < spectator.label.dimension:
                raise SubsystemError(f"Spectator ket {spectator.index} out of range for {spectator.label}")
        if not keys:
            raise SubsystemError("Resource spec is empty")


def build_resource(spec: ResourceSpec) -> StateVector:
    """Tensor product of the spec's Bell pairs and spectator kets."""
    parts = [bell_state(p.kind, p.left, p.right) for p in spec.pairings]
    parts += [basis_state([s.label], [s.index]) for s in spec.spectators]
    return tensor_all(parts)


def transmitter_spec(kind: BellKind = BellKind.PSI_MINUS) -> ResourceSpec:
    """
    Photons A, B and C: A and C entangled in SAM, B and C in OAM.

    With the default Psi- pairs this is the normalized transmitter state; the
    spin of B and the OAM of A are spectators fixed to |0>.
    """
    return ResourceSpec(
        pairings=(
            BellPairing(sam("A"), sam("C"), kind),
            BellPairing(oam("B"), oam("C"), kind),
        ),
        spectators=(Spectator(sam("B")), Spectator(oam("A"))),
    )


def receiver_spec(kind: BellKind = BellKind.PSI_MINUS) -> ResourceSpec:
    """Photons D, E and F: D-E Bell pair in SAM, D-F Bell pair in OAM."""
    return ResourceSpec(
        pairings=(
            BellPairing(sam("D"), sam("E"), kind),
            BellPairing(oam("D"), oam("F"), kind),
        ),
    )
