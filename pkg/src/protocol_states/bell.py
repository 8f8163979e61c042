"""
Bell states and the product (hyperentangled) Bell bases built from them.
"""
import itertools
from enum import Enum
from typing import Sequence

import numpy as np

from src.quantum_core import (
    DimensionError,
    StateVector,
    SubsystemError,
    SubsystemLabel,
    tensor_all,
)

_SQRT_HALF = 1 / np.sqrt(2)


class BellKind(str, Enum):
    """The four Bell states, amplitudes ordered |00>, |01>, |10>, |11>."""

    PHI_PLUS = "PhiPlus"
    PHI_MINUS = "PhiMinus"
    PSI_PLUS = "PsiPlus"
    PSI_MINUS = "PsiMinus"

    @property
    def amplitudes(self) -> np.ndarray:
        return _AMPLITUDES[self]


_AMPLITUDES = {
    BellKind.PHI_PLUS: _SQRT_HALF * np.array([1, 0, 0, 1], dtype=complex),
    BellKind.PHI_MINUS: _SQRT_HALF * np.array([1, 0, 0, -1], dtype=complex),
    BellKind.PSI_PLUS: _SQRT_HALF * np.array([0, 1, 1, 0], dtype=complex),
    BellKind.PSI_MINUS: _SQRT_HALF * np.array([0, 1, -1, 0], dtype=complex),
}

BELL_KINDS: tuple[BellKind, ...] = tuple(BellKind)


def bell_state(kind: BellKind, left: SubsystemLabel, right: SubsystemLabel) -> StateVector:
    """
    Bell state on the pair (left, right).

    Raises:
        DimensionError: Either label is not a qubit
    """
    if left.dimension != 2 or right.dimension != 2:
        raise DimensionError(f"Bell states need qubits, got {left} and {right}")
    return StateVector(kind.amplitudes, [left, right])


def product_bell_basis(
    pairs: Sequence[tuple[SubsystemLabel, SubsystemLabel]],
) -> list[StateVector]:
    """
    All products of Bell states over ``pairs``, 4**len(pairs) elements.

    Element order is row-major over the pairs: the index of the combination
    (k_1, ..., k_n) is sum_i k_i * 4**(n - 1 - i) with k_i the position in ``BELL_KINDS``.
    """
    labels = [label for pair in pairs for label in pair]
    if len({label.key for label in labels}) != len(labels):
        raise SubsystemError("Bell basis pairs must be disjoint")

    basis = []
    for kinds in itertools.product(BELL_KINDS, repeat=len(pairs)):
        basis.append(tensor_all([bell_state(k, l, r) for k, (l, r) in zip(kinds, pairs)]))
    return basis


def hyper_bell_basis(
    sam_pair: tuple[SubsystemLabel, SubsystemLabel],
    oam_pair: tuple[SubsystemLabel, SubsystemLabel],
) -> list[StateVector]:
    """The 16 hyperentangled Bell states Bell_i(SAM pair) x Bell_j(OAM pair), index 4*i + j."""
    return product_bell_basis([sam_pair, oam_pair])


def decode_product_index(index: int, n_pairs: int) -> tuple[BellKind, ...]:
    """Inverse of the ``product_bell_basis`` ordering."""
    digits = np.unravel_index(index, (4,) * n_pairs)
    return tuple(BELL_KINDS[int(d)] for d in digits)


def encode_product_index(kinds: Sequence[BellKind]) -> int:
    """Position of a Bell-kind combination in ``product_bell_basis``."""
    return int(np.ravel_multi_index(tuple(BELL_KINDS.index(k) for k in kinds), (4,) * len(kinds)))
