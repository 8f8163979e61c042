"""
Subsystem labels - one (photon, degree of freedom) slot of a joint state.
"""
from dataclasses import dataclass, replace
from enum import Enum


class Dof(str, Enum):
    """Degree of freedom carried by a subsystem."""

    SAM = "SAM"
    OAM = "OAM"
    GENERIC = "GENERIC"


@dataclass(frozen=True)
class SubsystemLabel:
    """Identifies one subsystem of a joint state.

    Two labels refer to the same slot when their ``key`` matches; the
    dimension can change (an erasure channel adds a flag level) while the
    key stays the same.
    """

    photon: str
    dof: Dof
    dimension: int = 2
    index: int = 0

    def __post_init__(self):
        if not self.photon:
            raise ValueError("Photon name must be non-empty")
        if self.dimension < 2:
            raise ValueError(
                f"Subsystem {self.photon}_{self.dof.value} needs dimension >= 2, "
                f"got {self.dimension}"
            )
        if self.index < 0:
            raise ValueError("Generic DoF index must be non-negative")

    @property
    def key(self) -> tuple[str, str, int]:
        """Identity used for ordering and lookups."""
        return (self.photon, self.dof.value, self.index)

    def with_dimension(self, dimension: int) -> "SubsystemLabel":
        return replace(self, dimension=dimension)

    def __str__(self) -> str:
        if self.dof is Dof.GENERIC:
            return f"{self.photon}_G{self.index}"
        return f"{self.photon}_{self.dof.value}"


def sam(photon: str) -> SubsystemLabel:
    return SubsystemLabel(photon, Dof.SAM)


def oam(photon: str, dimension: int = 2) -> SubsystemLabel:
    return SubsystemLabel(photon, Dof.OAM, dimension)


def generic(photon: str, index: int = 0, dimension: int = 2) -> SubsystemLabel:
    return SubsystemLabel(photon, Dof.GENERIC, dimension, index)
