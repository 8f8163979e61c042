"""
Erasure channels - the photon either arrives intact or is replaced by an
orthogonal flag level |e>.

Two models are kept apart: joint-carrier erasure (one event erases every
qubit the photon carries) and independent erasure (one event per qubit).
"""
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .kraus import KrausChannel, product_channel


@dataclass(frozen=True)
class ErasureParams:
    """Erasure probability and input dimension; the output adds one flag level."""

    epsilon: float
    input_dim: int = 2

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if self.input_dim < 2:
            raise ValueError(f"input_dim must be at least 2, got {self.input_dim}")

    @property
    def output_dim(self) -> int:
        return self.input_dim + 1

    @property
    def flag(self) -> int:
        """Index of the erasure level in the output space."""
        return self.input_dim


def erasure_channel(params: ErasureParams) -> KrausChannel:
    """Kraus set {sqrt(1-eps) E, sqrt(eps) |e><i|}, with E embedding the input into the output."""
    d, eps = params.input_dim, params.epsilon
    embed = np.eye(d + 1, d)
    ops = [np.sqrt(1 - eps) * embed]
    for i in range(d):
        erase = np.zeros((d + 1, d))
        erase[params.flag, i] = np.sqrt(eps)
        ops.append(erase)
    return KrausChannel(ops, description=f"erasure(eps={eps:g}, d={d})")


def carrier_erasure_channel(n_dofs: int, epsilon: float) -> KrausChannel:
    """Loss of one photon carrying ``n_dofs`` qubits: a single erasure on 2**n levels."""
    if n_dofs < 1:
        raise ValueError(f"n_dofs must be at least 1, got {n_dofs}")
    return erasure_channel(ErasureParams(epsilon, 2**n_dofs))


def independent_erasure_channel(n_dofs: int, epsilon: float) -> KrausChannel:
    """Each of ``n_dofs`` qubits erased on its own: the product of single-qubit erasures."""
    if n_dofs < 1:
        raise ValueError(f"n_dofs must be at least 1, got {n_dofs}")
    single = erasure_channel(ErasureParams(epsilon, 2))
    return reduce(product_channel, [single] * n_dofs)


def erasure_degrading_map(params: ErasureParams) -> KrausChannel:
    """
    Map D on the erasure output with D o erasure(eps) = erasure(1 - eps).

    D erases the data levels with probability (1 - 2 eps) / (1 - eps) and
    leaves the flag untouched. Exists for eps <= 1/2 only.

    Raises:
        ValueError: eps > 1/2
    """
    eps, d = params.epsilon, params.input_dim
    if eps > 0.5:
        raise ValueError(f"Erasure channel is not degradable for eps = {eps} > 1/2")

    delta = (1 - 2 * eps) / (1 - eps)
    data = np.diag([1.0] * d + [0.0])
    ops = [np.sqrt(1 - delta) * data]
    for i in range(d):
        erase = np.zeros((d + 1, d + 1))
        erase[params.flag, i] = np.sqrt(delta)
        ops.append(erase)
    keep_flag = np.zeros((d + 1, d + 1))
    keep_flag[params.flag, params.flag] = 1.0
    ops.append(keep_flag)
    return KrausChannel(ops, description=f"degrading(eps={eps:g}, d={d})")
