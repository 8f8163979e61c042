"""
Single-qubit Pauli gates, teleportation corrections and the metasurface
(spin-flip plus OAM shift) unitary.
"""
from enum import Enum

import numpy as np

from src.quantum_core import (
    DimensionError,
    Operator,
    StateVector,
    apply_operator,
    basis_state,
    oam,
    sam,
)

_PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# Qubit encodings: SAM sigma+ -> 0, sigma- -> 1; OAM +1 -> 0, -1 -> 1 (two-level ladder)
SIGMA_PLUS = 0
SIGMA_MINUS = 1


def pauli_operator(which: str) -> Operator:
    """Pauli matrix I, X, Y or Z."""
    which = which.upper()
    if which not in _PAULI_MATRICES:
        raise ValueError(f"Unknown Pauli operator: {which}")
    return Operator(_PAULI_MATRICES[which], (2,), unitary=True, name=which)


class Correction(str, Enum):
    """Pauli correction applied to the far end of a teleportation pair."""

    I = "I"
    X = "X"
    Z = "Z"
    XZ = "XZ"

    @property
    def operator(self) -> Operator:
        if self is Correction.XZ:
            return pauli_operator("X") @ pauli_operator("Z")
        return pauli_operator(self.value)


def oam_index(l: int, l_dim: int) -> int:
    """Position of topological charge ``l`` on the truncated cyclic ladder."""
    if l_dim == 2:
        if l not in (1, -1):
            raise ValueError("Two-level OAM space holds only l = +1 and l = -1")
        return 0 if l == 1 else 1
    half = (l_dim - 1) // 2
    if not -half <= l <= l_dim - 1 - half:
        raise ValueError(f"l = {l} is outside the {l_dim}-level ladder")
    return l % l_dim


def metasurface_operator(delta_l: int = 1, l_dim: int = 2) -> Operator:
    """
    |sigma+, l> -> |sigma-, l + delta_l> and |sigma-, l> -> |sigma+, l - delta_l>
    on SAM x OAM, with cyclic wrap on the truncated OAM ladder.

    Raises:
        ValueError: l_dim < 2, delta_l < 1 or delta_l >= l_dim
    """
    if l_dim < 2:
        raise ValueError("OAM space needs at least two levels")
    if delta_l < 1:
        raise ValueError("delta_l must be positive")
    if delta_l >= l_dim:
        raise ValueError(f"delta_l = {delta_l} does not fit a {l_dim}-level OAM space")

    matrix = np.zeros((2 * l_dim, 2 * l_dim), dtype=complex)
    for i in range(l_dim):
        matrix[SIGMA_MINUS * l_dim + (i + delta_l) % l_dim, SIGMA_PLUS * l_dim + i] = 1.0
        matrix[SIGMA_PLUS * l_dim + (i - delta_l) % l_dim, SIGMA_MINUS * l_dim + i] = 1.0

    return Operator(matrix, (2, l_dim), unitary=True, name=f"GPM(dl={delta_l})")


def metasurface_state(photon: str, l_dim: int = 3, delta_l: int = 1) -> StateVector:
    """Photon sent in (|sigma+> + |sigma->)/sqrt(2) with l = 0 through the metasurface."""
    if l_dim < 3:
        raise DimensionError("l = 0 needs an OAM ladder of at least three levels")
    spin, charge = sam(photon), oam(photon, l_dim)
    zero = oam_index(0, l_dim)
    plus = basis_state([spin, charge], [SIGMA_PLUS, zero])
    minus = basis_state([spin, charge], [SIGMA_MINUS, zero])
    incoming = StateVector(plus.amplitudes + minus.amplitudes, plus.subsystems, normalize=True)
    return apply_operator(incoming, metasurface_operator(delta_l, l_dim), [spin, charge])
