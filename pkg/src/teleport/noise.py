"""
Noise configuration - where erasure acts and how lost runs are scored.
"""
from dataclasses import dataclass
from enum import Enum


class NoiseSite(str, Enum):
    """Protocol stage after which erasure may occur."""

    AFTER_MULTIPLEX = "after-multiplex"
    AFTER_TRANSMISSION = "after-transmission"
    AFTER_DEMULTIPLEX = "after-demultiplex"


CARRIER_SITES = (NoiseSite.AFTER_MULTIPLEX, NoiseSite.AFTER_TRANSMISSION)
DEFAULT_SITES: tuple[NoiseSite, ...] = tuple(NoiseSite)


class LostPolicy(str, Enum):
    """Scoring of a run in which a photon was erased."""

    MAXIMALLY_MIXED = "maximally-mixed"
    CONDITIONAL = "conditional"


@dataclass(frozen=True)
class NoiseConfig:
    """Erasure probability per site, the active sites and the lost-run policy."""

    epsilon: float = 0.0
    sites: tuple[NoiseSite, ...] = DEFAULT_SITES
    lost_policy: LostPolicy = LostPolicy.MAXIMALLY_MIXED

    def __post_init__(self):
        sites = tuple(NoiseSite(site) for site in self.sites)
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "lost_policy", LostPolicy(self.lost_policy))

        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if len(set(sites)) != len(sites):
            raise ValueError("Noise sites must not repeat")
        if self.epsilon > 0 and not sites:
            raise ValueError("At least one noise site is required when epsilon > 0")

    @classmethod
    def noiseless(cls) -> "NoiseConfig":
        return cls(epsilon=0.0)
