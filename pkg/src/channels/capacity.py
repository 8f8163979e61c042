"""
Coherent information and quantum capacity of channels.

Inputs are pure states over two labels: the channel input A and the
reference A1 that stays with the sender.
"""
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize
from scipy.special import softmax

from src.quantum_core import (
    DimensionError,
    StateVector,
    SubsystemLabel,
    apply_kraus,
    condition_on,
    generic,
    partial_trace,
    von_neumann_entropy,
)

from .kraus import ChannelError, KrausChannel

logger = logging.getLogger(__name__)

CHANNEL_INPUT = "A"
REFERENCE = "A1"


def maximally_entangled_input(dim: int) -> StateVector:
    """sum_k |k>_A |k>_A1 / sqrt(dim)."""
    a, a1 = generic(CHANNEL_INPUT, dimension=dim), generic(REFERENCE, dimension=dim)
    return StateVector(np.eye(dim).reshape(-1) / np.sqrt(dim), [a, a1])


def _channel_input(state: StateVector, channel: KrausChannel, label: SubsystemLabel | None) -> SubsystemLabel:
    if len(state.subsystems) != 2:
        raise DimensionError(f"Expected a bipartite input, got {state!r}")
    label = label or state.subsystems[0]
    if label.dimension != channel.d_in:
        raise DimensionError(
            f"{channel.description} takes dimension {channel.d_in}, input {label} has {label.dimension}"
        )
    return label


def coherent_information(
    channel: KrausChannel,
    state: StateVector,
    channel_input: SubsystemLabel | None = None,
) -> float:
    """
    I_c = H(B) - H(B A1) for the channel acting on one half of a pure bipartite state.

    Args:
        channel: Channel applied to ``channel_input``
        state: Pure state over (A, A1)
        channel_input: The subsystem sent through the channel (default: first in order)

    Returns:
        Coherent information in bits, possibly negative

    Raises:
        DimensionError: Input is not bipartite or does not match the channel
    """
    label = _channel_input(state, channel, channel_input)
    omega = apply_kraus(state, channel, [label])
    output = label.with_dimension(channel.d_out)
    return von_neumann_entropy(partial_trace(omega, [output])) - von_neumann_entropy(omega)


@dataclass(frozen=True)
class FlagDecomposition:
    """Coherent information split on the erasure indicator Z."""

    p_kept: float
    p_erased: float
    h_b_given_z: float
    h_ba_given_z: float

    @property
    def coherent_information(self) -> float:
        return self.h_b_given_z - self.h_ba_given_z


def coherent_information_by_flag(
    channel: KrausChannel,
    state: StateVector,
    channel_input: SubsystemLabel | None = None,
) -> FlagDecomposition:
    """
    Coherent information of an erasure-type channel through the erasure indicator.

    The last output level is taken as the flag. The flag is readable from the
    output, so H(B) = H(Z) + H(B|Z) and H(BA1) = H(Z) + H(BA1|Z); the
    classical-quantum branches are found by projecting the output onto the
    data and flag subspaces.

    Raises:
        ChannelError: The channel does not add exactly one output level
    """
    if channel.d_out != channel.d_in + 1:
        raise ChannelError(f"{channel.description} has no single erasure flag level")

    label = _channel_input(state, channel, channel_input)
    omega = apply_kraus(state, channel, [label])
    output = label.with_dimension(channel.d_out)

    flag = np.zeros((channel.d_out, channel.d_out))
    flag[-1, -1] = 1.0
    data = np.eye(channel.d_out) - flag

    probabilities, h_b, h_ba = [], 0.0, 0.0
    for projector in (data, flag):
        p, branch = condition_on(omega, projector, [output])
        probabilities.append(p)
        if branch is not None:
            h_b += p * von_neumann_entropy(partial_trace(branch, [output]))
            h_ba += p * von_neumann_entropy(branch)

    return FlagDecomposition(probabilities[0], probabilities[1], h_b, h_ba)


@dataclass(frozen=True)
class InputFamily:
    """Parametrized family of pure bipartite inputs with starting points for the search."""

    name: str
    n_params: int
    build: Callable[[np.ndarray], StateVector]
    starts: tuple[np.ndarray, ...]


def schmidt_family(dim: int, basis: np.ndarray | None = None, *, n_random: int = 4, seed: int = 0) -> InputFamily:
    """
    States sum_k sqrt(lambda_k) U|k>_A |k>_A1 with lambda = softmax(params).

    Starts at the maximally entangled input (all params zero), at a product
    input and at a few random interpolations between them.
    """
    unitary = np.eye(dim) if basis is None else np.asarray(basis, dtype=complex)
    if unitary.shape != (dim, dim):
        raise DimensionError(f"Basis must be {dim}x{dim}")
    a, a1 = generic(CHANNEL_INPUT, dimension=dim), generic(REFERENCE, dimension=dim)

    def build(params: np.ndarray) -> StateVector:
        weights = np.sqrt(softmax(params))
        return StateVector((unitary * weights).reshape(-1), [a, a1], normalize=True)

    rng = np.random.default_rng(seed)
    product = np.zeros(dim)
    product[0] = 40.0
    starts = [np.zeros(dim), product]
    starts += [rng.uniform(0.0, 1.0) * product + rng.normal(0.0, 1.0, dim) for _ in range(n_random)]
    return InputFamily(f"schmidt({dim})", dim, build, tuple(starts))


def coherent_information_max(
    channel: KrausChannel,
    family: InputFamily | None = None,
    budget: int = 200,
) -> float:
    """
    Best coherent information found over an input family.

    Every start is evaluated, then the best one is refined with Nelder-Mead
    under ``budget`` function evaluations. Not a certified optimum; exact for
    degradable channels whose optimum is the maximally entangled input.

    Raises:
        ValueError: The family has no starting points
    """
    family = family or schmidt_family(channel.d_in)
    if not family.starts:
        raise ValueError(f"Input family {family.name} is empty")

    def objective(params: np.ndarray) -> float:
        return -coherent_information(channel, family.build(params))

    values = [-objective(start) for start in family.starts]
    best_index = int(np.argmax(values))
    best = values[best_index]

    if budget > 0:
        result = minimize(
            objective,
            family.starts[best_index],
            method="Nelder-Mead",
            options={"maxfev": budget, "xatol": 1e-10, "fatol": 1e-12},
        )
        best = max(best, -float(result.fun))

    logger.debug(f"Max coherent information of {channel.description}: {best:.6f}")
    return best


def erasure_capacity_formula(epsilon: float, n_dofs: int) -> float:
    """
    Quantum capacity of one photon carrying ``n_dofs`` qubits through erasure: max(0, n(1 - 2 eps)).

    Raises:
        ValueError: epsilon outside [0, 1] or n_dofs < 1
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    if int(n_dofs) != n_dofs or n_dofs < 1:
        raise ValueError(f"n_dofs must be a positive integer, got {n_dofs}")
    return max(0.0, n_dofs * (1.0 - 2.0 * epsilon))
