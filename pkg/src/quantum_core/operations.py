"""
Operations on labeled states: composition, reduction, entropy, fidelity,
operator and Kraus application, Haar sampling and projective measurement.

All functions are pure; randomness comes only from the ``numpy.random.Generator``
passed in by the caller.
"""
import math
from typing import NamedTuple, Protocol, Sequence

import numpy as np
from scipy.stats import entropy as shannon_entropy
from scipy.stats import unitary_group

from .errors import BasisError, DimensionError, QuantumStateError, SubsystemError
from .labels import Dof, SubsystemLabel
from .states import PSD_ATOL, DensityMatrix, Operator, StateVector, check_unique

BASIS_ATOL = 1e-10

State = StateVector | DensityMatrix


class SupportsKraus(Protocol):
    """Anything exposing a Kraus decomposition (see ``src.channels.kraus``)."""

    kraus_ops: tuple[np.ndarray, ...]
    d_in: int
    d_out: int


class MeasurementResult(NamedTuple):
    index: int
    state: State
    probability: float


def _axes(state: State, targets: Sequence[SubsystemLabel]) -> list[int]:
    """Positions of ``targets`` in ``state``, checking presence and dimensions."""
    positions = {label.key: i for i, label in enumerate(state.subsystems)}
    axes = []
    for target in targets:
        if target.key not in positions:
            raise SubsystemError(f"Subsystem {target} not present in {state!r}")
        axis = positions[target.key]
        if state.subsystems[axis].dimension != target.dimension:
            raise DimensionError(
                f"Subsystem {target} has dimension {state.subsystems[axis].dimension}, "
                f"expected {target.dimension}"
            )
        axes.append(axis)
    if len(set(axes)) != len(axes):
        raise SubsystemError("Target list repeats a subsystem")
    return axes


def _split(state: State, axes: list[int]) -> tuple[list[int], int, int]:
    """Remaining axes plus the flattened sizes of target and remaining blocks."""
    rest = [i for i in range(len(state.subsystems)) if i not in axes]
    d_t = math.prod(state.dims[i] for i in axes)
    d_r = math.prod(state.dims[i] for i in rest)
    return rest, d_t, d_r


def _vector_blocks(psi: StateVector, axes: list[int]) -> tuple[np.ndarray, list[int]]:
    """Amplitudes as a (targets, rest) matrix."""
    rest, d_t, d_r = _split(psi, axes)
    return psi.tensor().transpose(axes + rest).reshape(d_t, d_r), rest


def _density_blocks(rho: DensityMatrix, axes: list[int]) -> tuple[np.ndarray, list[int]]:
    """Density tensor as a (targets, rest, targets, rest) array."""
    n = len(rho.subsystems)
    rest, d_t, d_r = _split(rho, axes)
    perm = axes + rest + [n + i for i in axes] + [n + i for i in rest]
    tensor = rho.matrix.reshape(rho.dims + rho.dims).transpose(perm)
    return tensor.reshape(d_t, d_r, d_t, d_r), rest


def tensor_product(a: State, b: State) -> State:
    """
    Compose two states of the same kind.

    Raises:
        SubsystemError: The label sets overlap
    """
    labels = check_unique(a.subsystems + b.subsystems)
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes), labels, normalize=True)
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(np.kron(a.matrix, b.matrix), labels, check=False)
    raise TypeError("tensor_product needs two states of the same kind")


def tensor_all(states: Sequence[State]) -> State:
    result = states[0]
    for state in states[1:]:
        result = tensor_product(result, state)
    return result


def partial_trace(state: State, keep: Sequence[SubsystemLabel]) -> DensityMatrix:
    """Reduced density matrix on ``keep``."""
    axes = _axes(state, keep)
    kept = [state.subsystems[i] for i in axes]

    if isinstance(state, StateVector):
        block, _ = _vector_blocks(state, axes)
        return DensityMatrix(block @ block.conj().T, kept, check=False)

    blocks, _ = _density_blocks(state, axes)
    return DensityMatrix(np.einsum("arbr->ab", blocks), kept, check=False)


def relabel(state: State, mapping: dict[SubsystemLabel, SubsystemLabel]) -> State:
    """Rename subsystems; renamed slots must keep their dimension."""
    by_key = {old.key: new for old, new in mapping.items()}
    labels = []
    for label in state.subsystems:
        new = by_key.pop(label.key, label)
        if new.dimension != label.dimension:
            raise DimensionError(f"Cannot relabel {label} to {new}: dimension differs")
        labels.append(new)
    if by_key:
        missing = ", ".join(str(k) for k in by_key)
        raise SubsystemError(f"Relabel source not present: {missing}")

    if isinstance(state, StateVector):
        return StateVector(state.amplitudes, labels)
    return DensityMatrix(state.matrix, labels, check=False)


def von_neumann_entropy(state: State) -> float:
    """Entropy in bits; eigenvalues within the PSD tolerance below zero count as zero."""
    if isinstance(state, StateVector):
        return 0.0
    eigenvalues = np.linalg.eigvalsh(state.matrix)
    if eigenvalues.min(initial=0.0) < -PSD_ATOL:
        raise QuantumStateError("Entropy of a non-positive matrix")
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    return max(0.0, float(shannon_entropy(eigenvalues, base=2)))


def entanglement_entropy(state: State, part: Sequence[SubsystemLabel]) -> float:
    """Entropy of the reduced state on ``part``."""
    return von_neumann_entropy(partial_trace(state, part))


def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    eigenvalues, vectors = np.linalg.eigh(matrix)
    roots = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return (vectors * roots) @ vectors.conj().T


def fidelity(rho: State, sigma: State) -> float:
    """
    Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.

    Pure arguments use the overlap form <psi|sigma|psi>.

    Raises:
        DimensionError: The two states have different subsystem structure
    """
    if [l.key for l in rho.subsystems] != [l.key for l in sigma.subsystems] or rho.dims != sigma.dims:
        raise DimensionError(f"Cannot compare {rho!r} with {sigma!r}")

    if isinstance(rho, StateVector) and isinstance(sigma, StateVector):
        value = abs(np.vdot(rho.amplitudes, sigma.amplitudes)) ** 2
    elif isinstance(rho, StateVector) or isinstance(sigma, StateVector):
        psi, mixed = (rho, sigma) if isinstance(rho, StateVector) else (sigma, rho)
        value = np.real(np.vdot(psi.amplitudes, mixed.matrix @ psi.amplitudes))
    else:
        root = _psd_sqrt(rho.matrix)
        inner = np.linalg.eigvalsh(root @ sigma.matrix @ root)
        value = np.sum(np.sqrt(np.clip(inner, 0.0, None))) ** 2

    return float(np.clip(value, 0.0, 1.0))


def apply_operator(
    state: State,
    op: Operator,
    targets: Sequence[SubsystemLabel],
) -> State:
    """
    Apply ``op`` to ``targets`` (identity elsewhere).

    Raises:
        SubsystemError: A target is missing or repeated
        DimensionError: Target dimensions differ from the operator dims
    """
    if not targets:
        raise SubsystemError(f"No targets given for {op!r}")
    axes = _axes(state, targets)
    if tuple(state.dims[i] for i in axes) != op.dims:
        raise DimensionError(f"{op!r} cannot act on {[str(t) for t in targets]}")

    if isinstance(state, StateVector):
        block, rest = _vector_blocks(state, axes)
        labels = [state.subsystems[i] for i in axes + rest]
        return StateVector(op.matrix @ block, labels, normalize=op.unitary)

    blocks, rest = _density_blocks(state, axes)
    out = np.einsum("ai,irjs,bj->arbs", op.matrix, blocks, op.matrix.conj())
    labels = [state.subsystems[i] for i in axes + rest]
    size = out.shape[0] * out.shape[1]
    return DensityMatrix(out.reshape(size, size), labels, check=False)


def apply_kraus(
    state: State,
    channel: SupportsKraus,
    targets: Sequence[SubsystemLabel],
    *,
    output_label: SubsystemLabel | None = None,
) -> DensityMatrix:
    """
    Apply a channel in Kraus form: rho -> sum_i K_i rho K_i^dagger on ``targets``.

    When the output dimension differs from the input (erasure adds a flag
    level) a single target keeps its key with the new dimension; several
    targets are merged into ``output_label`` (default: a generic slot on the
    first target's photon).
    """
    rho = state.to_density() if isinstance(state, StateVector) else state
    axes = _axes(rho, targets)
    d_t = math.prod(rho.dims[i] for i in axes)
    if d_t != channel.d_in:
        raise DimensionError(f"Channel input dimension {channel.d_in} does not match targets ({d_t})")

    blocks, rest = _density_blocks(rho, axes)
    kraus = np.stack(channel.kraus_ops)
    out = np.einsum("kai,irjs,kbj->arbs", kraus, blocks, kraus.conj())

    target_labels = [rho.subsystems[i] for i in axes]
    if channel.d_out == channel.d_in:
        new_labels = target_labels
    elif output_label is not None:
        new_labels = [output_label.with_dimension(channel.d_out)]
    elif len(target_labels) == 1:
        new_labels = [target_labels[0].with_dimension(channel.d_out)]
    else:
        new_labels = [SubsystemLabel(target_labels[0].photon, Dof.GENERIC, channel.d_out)]

    labels = new_labels + [rho.subsystems[i] for i in rest]
    size = out.shape[0] * out.shape[1]
    return DensityMatrix(out.reshape(size, size), labels, check=False)


def condition_on(
    state: State,
    projector: np.ndarray,
    targets: Sequence[SubsystemLabel],
) -> tuple[float, DensityMatrix | None]:
    """
    Project ``targets`` onto a subspace and renormalize.

    Returns:
        Tuple of (probability, conditional state or None when the branch is empty)
    """
    rho = state.to_density() if isinstance(state, StateVector) else state
    axes = _axes(rho, targets)
    blocks, rest = _density_blocks(rho, axes)
    out = np.einsum("ai,irjs,bj->arbs", projector, blocks, projector.conj())
    size = out.shape[0] * out.shape[1]
    matrix = out.reshape(size, size)
    probability = float(np.real(np.trace(matrix)))
    if probability <= PSD_ATOL:
        return 0.0, None
    labels = [rho.subsystems[i] for i in axes + rest]
    return probability, DensityMatrix(matrix / probability, labels, check=False)


def basis_state(subsystems: Sequence[SubsystemLabel], indices: Sequence[int]) -> StateVector:
    """Computational basis ket |i1 i2 ...> on ``subsystems``."""
    subsystems = tuple(subsystems)
    if len(indices) != len(subsystems):
        raise DimensionError("One index per subsystem is required")
    for label, i in zip(subsystems, indices):
        if not 0 <= i < label.dimension:
            raise DimensionError(f"Index {i} out of range for {label}")
    dims = [label.dimension for label in subsystems]
    amps = np.zeros(math.prod(dims), dtype=complex)
    amps[np.ravel_multi_index(tuple(indices), dims) if dims else 0] = 1.0
    return StateVector(amps, subsystems)


def maximally_mixed(subsystems: Sequence[SubsystemLabel]) -> DensityMatrix:
    total = math.prod(label.dimension for label in subsystems)
    return DensityMatrix(np.eye(total) / total, subsystems, check=False)


def haar_random_state(subsystems: Sequence[SubsystemLabel], rng: np.random.Generator) -> StateVector:
    """Pure state drawn from the unitarily invariant measure (normalized complex Gaussian)."""
    total = math.prod(label.dimension for label in subsystems)
    amps = (rng.standard_normal(total) + 1j * rng.standard_normal(total)) / np.sqrt(2)
    return StateVector(amps, subsystems, normalize=True)


def haar_random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(dim, random_state=rng)


def _basis_matrix(basis: Sequence[StateVector]) -> tuple[np.ndarray, tuple[SubsystemLabel, ...]]:
    if not basis:
        raise BasisError("Measurement basis is empty")
    targets = basis[0].subsystems
    if any(b.subsystems != targets for b in basis):
        raise BasisError("Basis vectors live on different subsystems")

    vectors = np.stack([b.amplitudes for b in basis])
    if len(basis) != vectors.shape[1]:
        raise BasisError(f"Basis has {len(basis)} vectors for a {vectors.shape[1]}-dim space")
    gram = vectors.conj() @ vectors.T
    if np.max(np.abs(gram - np.eye(len(basis)))) > BASIS_ATOL:
        raise BasisError("Basis is not orthonormal")
    return vectors, targets


def outcome_probabilities(state: State, basis: Sequence[StateVector]) -> np.ndarray:
    """Born probabilities of every basis outcome."""
    vectors, targets = _basis_matrix(basis)
    axes = _axes(state, targets)
    if isinstance(state, StateVector):
        block, _ = _vector_blocks(state, axes)
        return np.sum(np.abs(vectors.conj() @ block) ** 2, axis=1)
    blocks, _ = _density_blocks(state, axes)
    return np.real(np.einsum("ki,irjr,kj->k", vectors.conj(), blocks, vectors))


def measure_in_basis(
    state: State,
    basis: Sequence[StateVector],
    rng: np.random.Generator | None,
    *,
    outcome: int | None = None,
) -> MeasurementResult:
    """
    Projective measurement of the basis subsystems.

    Args:
        state: State to measure
        basis: Complete orthonormal basis on the measured subsystems
        rng: Random generator used to sample the outcome (unused when forced)
        outcome: Force this outcome instead of sampling (must have nonzero probability)

    Returns:
        (outcome index, renormalized post-measurement state without the
        measured subsystems, outcome probability)

    Raises:
        BasisError: Basis is incomplete or not orthonormal
    """
    vectors, targets = _basis_matrix(basis)
    axes = _axes(state, targets)
    probs = np.clip(outcome_probabilities(state, basis), 0.0, None)

    if outcome is None:
        if rng is None:
            raise ValueError("A random generator is required to sample an outcome")
        index = int(rng.choice(len(probs), p=probs / probs.sum()))
    else:
        index = int(outcome)
        if not 0 <= index < len(probs):
            raise BasisError(f"Outcome {index} out of range")
        if probs[index] <= BASIS_ATOL:
            raise BasisError(f"Forced outcome {index} has zero probability")

    probability = float(probs[index])
    rest = [state.subsystems[i] for i in range(len(state.subsystems)) if i not in axes]

    if isinstance(state, StateVector):
        block, _ = _vector_blocks(state, axes)
        post = vectors[index].conj() @ block
        return MeasurementResult(index, StateVector(post, rest, normalize=True), probability)

    blocks, _ = _density_blocks(state, axes)
    post = np.einsum("i,irjs,j->rs", vectors[index].conj(), blocks, vectors[index])
    return MeasurementResult(index, DensityMatrix(post / probability, rest, check=False), probability)
