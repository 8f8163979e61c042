"""
State containers - immutable state vectors, density matrices and operators
over labeled subsystems.

Subsystems are always stored in canonical order (sorted by label key), so two
states built in a different order compare equal.
"""
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, QuantumStateError, SubsystemError
from .labels import SubsystemLabel

NORM_ATOL = 1e-10
HERMITIAN_ATOL = 1e-10
PSD_ATOL = 1e-10
UNITARY_ATOL = 1e-12


def check_unique(labels: Iterable[SubsystemLabel]) -> tuple[SubsystemLabel, ...]:
    """Return labels as a tuple, rejecting repeated (photon, dof) slots."""
    labels = tuple(labels)
    seen: set[tuple] = set()
    for label in labels:
        if label.key in seen:
            raise SubsystemError(f"Duplicate subsystem label: {label}")
        seen.add(label.key)
    return labels


def _canonical_permutation(labels: Sequence[SubsystemLabel]) -> list[int]:
    return sorted(range(len(labels)), key=lambda i: labels[i].key)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class StateVector:
    """Pure state over an ordered list of subsystems."""

    __slots__ = ("amplitudes", "subsystems")

    def __init__(
        self,
        amplitudes,
        subsystems: Iterable[SubsystemLabel],
        *,
        normalize: bool = False,
    ):
        """
        Build a state vector.

        Args:
            amplitudes: Flat amplitude list in the order of ``subsystems``
            subsystems: Labels of the tensor factors
            normalize: Rescale to unit norm instead of validating it

        Raises:
            DimensionError: Length does not match the subsystem dimensions
            QuantumStateError: Amplitudes are not normalized
        """
        labels = check_unique(subsystems)
        dims = [label.dimension for label in labels]
        amps = np.array(amplitudes, dtype=complex).reshape(-1)

        if amps.size != math.prod(dims):
            raise DimensionError(
                f"Expected {math.prod(dims)} amplitudes for dims {dims}, got {amps.size}"
            )

        norm = float(np.linalg.norm(amps))
        if normalize:
            if norm == 0.0:
                raise QuantumStateError("Cannot normalize a zero vector")
            amps = amps / norm
        elif abs(norm * norm - 1.0) > NORM_ATOL:
            raise QuantumStateError(f"State is not normalized (norm^2 = {norm * norm:.3e})")

        perm = _canonical_permutation(labels)
        if perm != list(range(len(labels))):
            amps = amps.reshape(dims).transpose(perm).reshape(-1)
            labels = tuple(labels[i] for i in perm)

        self.amplitudes = _frozen(amps)
        self.subsystems = labels

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(label.dimension for label in self.subsystems)

    @property
    def dimension(self) -> int:
        return self.amplitudes.size

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per subsystem."""
        return self.amplitudes.reshape(self.dims)

    def to_density(self) -> "DensityMatrix":
        psi = self.amplitudes
        return DensityMatrix(np.outer(psi, psi.conj()), self.subsystems, check=False)

    def __repr__(self) -> str:
        names = ", ".join(str(label) for label in self.subsystems)
        return f"StateVector([{names}], dim={self.dimension})"


class DensityMatrix:
    """Mixed state over an ordered list of subsystems."""

    __slots__ = ("matrix", "subsystems")

    def __init__(
        self,
        matrix,
        subsystems: Iterable[SubsystemLabel],
        *,
        check: bool = True,
    ):
        """
        Build a density matrix.

        Args:
            matrix: Square matrix in the order of ``subsystems``
            subsystems: Labels of the tensor factors
            check: Validate hermiticity, trace and positivity

        Raises:
            DimensionError: Shape does not match the subsystem dimensions
            QuantumStateError: Matrix is not a valid density operator
        """
        labels = check_unique(subsystems)
        dims = [label.dimension for label in labels]
        total = math.prod(dims)
        rho = np.array(matrix, dtype=complex)

        if rho.shape != (total, total):
            raise DimensionError(f"Expected a {total}x{total} matrix for dims {dims}, got {rho.shape}")

        if check:
            _validate_density(rho)

        perm = _canonical_permutation(labels)
        if perm != list(range(len(labels))):
            n = len(labels)
            rho = (
                rho.reshape(dims + dims)
                .transpose(perm + [n + p for p in perm])
                .reshape(total, total)
            )
            labels = tuple(labels[i] for i in perm)

        self.matrix = _frozen(rho)
        self.subsystems = labels

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(label.dimension for label in self.subsystems)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def __repr__(self) -> str:
        names = ", ".join(str(label) for label in self.subsystems)
        return f"DensityMatrix([{names}], dim={self.dimension})"


def _validate_density(rho: np.ndarray) -> None:
    if np.max(np.abs(rho - rho.conj().T), initial=0.0) > HERMITIAN_ATOL:
        raise QuantumStateError("Density matrix is not Hermitian")
    trace = np.trace(rho)
    if abs(trace - 1.0) > NORM_ATOL:
        raise QuantumStateError(f"Density matrix trace is {trace.real:.12g}, expected 1")
    min_eig = float(np.min(np.linalg.eigvalsh(rho)))
    if min_eig < -PSD_ATOL:
        raise QuantumStateError(f"Density matrix is not positive (min eigenvalue {min_eig:.3e})")


class Operator:
    """Square matrix acting on a fixed list of subsystem dimensions."""

    __slots__ = ("matrix", "dims", "unitary", "name")

    def __init__(
        self,
        matrix,
        dims: Sequence[int],
        *,
        unitary: bool = False,
        name: str = "",
    ):
        """
        Build an operator.

        Args:
            matrix: Square matrix over the product of ``dims``
            dims: Dimensions of the subsystems the operator acts on, in order
            unitary: Declare (and verify) that the matrix is unitary
            name: Display name
        """
        mat = np.array(matrix, dtype=complex)
        dims = tuple(int(d) for d in dims)
        total = math.prod(dims)

        if mat.shape != (total, total):
            raise DimensionError(f"Operator shape {mat.shape} does not match dims {dims}")
        if unitary:
            deviation = np.max(np.abs(mat.conj().T @ mat - np.eye(total)), initial=0.0)
            if deviation > UNITARY_ATOL:
                raise QuantumStateError(f"Operator {name or ''} is not unitary (deviation {deviation:.3e})")

        self.matrix = _frozen(mat)
        self.dims = dims
        self.unitary = unitary
        self.name = name

    def __matmul__(self, other: "Operator") -> "Operator":
        if self.dims != other.dims:
            raise DimensionError("Cannot multiply operators with different dims")
        return Operator(
            self.matrix @ other.matrix,
            self.dims,
            unitary=self.unitary and other.unitary,
            name=f"{self.name}{other.name}",
        )

    def __repr__(self) -> str:
        return f"Operator({self.name or '?'}, dims={self.dims})"
