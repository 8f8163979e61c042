"""
Protocol trace - what happened during one run: Bell outcomes, corrections,
erasure events and the resulting fidelity.
"""
import json
from dataclasses import dataclass, field

from src.protocol_states import BellKind, Correction
from src.quantum_core import DensityMatrix

from .errors import ProtocolError
from .noise import NoiseSite


@dataclass(frozen=True)
class BsmRecord:
    stage: str
    dof: str
    outcome: BellKind


@dataclass(frozen=True)
class ErasureEvent:
    site: NoiseSite
    photon: str
    occurred: bool


@dataclass
class ProtocolTrace:
    """Record of one protocol run."""

    bsm_outcomes: list[BsmRecord] = field(default_factory=list)
    corrections: list[Correction] = field(default_factory=list)
    erasure_events: list[ErasureEvent] = field(default_factory=list)
    final_fidelity: float | None = None

    # Reconstructed state, kept for reporting only
    reconstruction: DensityMatrix | None = field(default=None, repr=False, compare=False)

    def record_bsm(self, stage: str, dof: str, outcome: BellKind, correction: Correction) -> None:
        if any(r.stage == stage and r.dof == dof for r in self.bsm_outcomes):
            raise ProtocolError(f"Second Bell measurement recorded for {stage}/{dof}")
        self.bsm_outcomes.append(BsmRecord(stage, dof, outcome))
        self.corrections.append(correction)

    def record_erasure(self, site: NoiseSite, photon: str, occurred: bool) -> None:
        self.erasure_events.append(ErasureEvent(site, photon, occurred))

    def extend(self, other: "ProtocolTrace") -> None:
        for record, correction in zip(other.bsm_outcomes, other.corrections):
            self.record_bsm(record.stage, record.dof, record.outcome, correction)
        self.erasure_events.extend(other.erasure_events)

    @property
    def lost(self) -> bool:
        """Whether any photon was erased in this run."""
        return any(event.occurred for event in self.erasure_events)

    def to_dict(self) -> dict:
        return {
            "bsm_outcomes": [
                {"stage": r.stage, "dof": r.dof, "outcome": r.outcome.value}
                for r in self.bsm_outcomes
            ],
            "corrections": [c.value for c in self.corrections],
            "erasure_events": [
                {"site": e.site.value, "photon": e.photon, "occurred": e.occurred}
                for e in self.erasure_events
            ],
            "final_fidelity": self.final_fidelity,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())
