"""
Correction table - maps (resource Bell kind, measured Bell kind) to the Pauli
correction that restores the teleported qubit.

Entries are derived by brute force rather than written down, so any sign
convention for the resource state is handled.
"""
import logging
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import numpy as np

from src.protocol_states import BELL_KINDS, BellKind, Correction, bell_state, product_bell_basis
from src.quantum_core import (
    StateVector,
    apply_operator,
    fidelity,
    generic,
    measure_in_basis,
    relabel,
    tensor_product,
)

from .errors import CorrectionTableError

logger = logging.getLogger(__name__)

FIDELITY_ATOL = 1e-9

_SOURCE = generic("S")
_NEAR = generic("N")
_FAR = generic("T")

# |0>, |1>, |+>, |+i> - enough to pin a single-qubit map up to a global phase
_PROBES = [
    np.array([1, 0]),
    np.array([0, 1]),
    np.array([1, 1]) / np.sqrt(2),
    np.array([1, 1j]) / np.sqrt(2),
]


def reconstructs(resource: BellKind, outcome: BellKind, correction: Correction) -> bool:
    """Whether ``correction`` restores every probe state after ``outcome`` on a ``resource`` pair."""
    basis = product_bell_basis([(_SOURCE, _NEAR)])
    for amplitudes in _PROBES:
        probe = StateVector(amplitudes, [_SOURCE])
        joint = tensor_product(probe, bell_state(resource, _NEAR, _FAR))
        _, post, _ = measure_in_basis(joint, basis, None, outcome=BELL_KINDS.index(outcome))
        post = apply_operator(post, correction.operator, [_FAR])
        if fidelity(probe, relabel(post, {_FAR: _SOURCE})) < 1 - FIDELITY_ATOL:
            return False
    return True


class CorrectionTable:
    """Verified (resource, outcome) -> correction mapping."""

    def __init__(self, entries: Mapping[tuple[BellKind, BellKind], Correction]):
        """
        Args:
            entries: Correction for each (resource kind, measured kind)

        Raises:
            CorrectionTableError: An entry fails to reconstruct the source state
        """
        for (resource, outcome), correction in entries.items():
            if not reconstructs(resource, outcome, correction):
                raise CorrectionTableError(
                    f"Correction {correction.value} does not undo outcome "
                    f"{outcome.value} on a {resource.value} resource"
                )
        self._entries = dict(entries)

    def lookup(self, resource: BellKind, outcome: BellKind) -> Correction:
        try:
            return self._entries[(resource, outcome)]
        except KeyError:
            raise CorrectionTableError(
                f"No correction for outcome {outcome.value} on a {resource.value} resource"
            ) from None

    def __contains__(self, key: tuple[BellKind, BellKind]) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[tuple[BellKind, BellKind]]:
        return iter(self._entries)

    def items(self):
        return self._entries.items()


def derive_correction_table(resources: Iterable[BellKind] = BELL_KINDS) -> CorrectionTable:
    """
    Pick, for every resource kind and outcome, the first of I, X, Z, XZ that reconstructs.

    Raises:
        CorrectionTableError: Some (resource, outcome) has no working Pauli correction
    """
    entries = {}
    for resource in resources:
        for outcome in BELL_KINDS:
            for correction in Correction:
                if reconstructs(resource, outcome, correction):
                    entries[(resource, outcome)] = correction
                    break
            else:
                raise CorrectionTableError(
                    f"No Pauli correction reconstructs outcome {outcome.value} "
                    f"on a {resource.value} resource"
                )
    logger.info(f"Derived correction table with {len(entries)} entries")
    return CorrectionTable(entries)


@lru_cache(maxsize=1)
def default_correction_table() -> CorrectionTable:
    return derive_correction_table()
