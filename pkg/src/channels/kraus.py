"""
Quantum channels in Kraus form and their algebra: identity, tensor product,
serial composition, Stinespring isometry and complementary channel.
"""
import logging
from typing import Sequence

import numpy as np

logger = logging.getLogger(__name__)

COMPLETENESS_ATOL = 1e-10


class ChannelError(ValueError):
    """Kraus operators do not form a trace-preserving channel."""


class KrausChannel:
    """
    Completely positive trace-preserving map rho -> sum_i K_i rho K_i^dagger.

    Every operator has shape (d_out, d_in) and sum_i K_i^dagger K_i = I.
    """

    __slots__ = ("kraus_ops", "d_in", "d_out", "description")

    def __init__(self, kraus_ops: Sequence[np.ndarray], description: str = ""):
        """
        Args:
            kraus_ops: Kraus operators, each of shape (d_out, d_in)
            description: Human-readable name used in reports

        Raises:
            ChannelError: Empty set, mismatched shapes or incomplete set
        """
        ops = [np.array(k, dtype=complex) for k in kraus_ops]
        if not ops:
            raise ChannelError("A channel needs at least one Kraus operator")
        shape = ops[0].shape
        if len(shape) != 2 or any(k.shape != shape for k in ops):
            raise ChannelError(f"Kraus operators must share one 2-D shape, first is {shape}")

        completeness = sum(k.conj().T @ k for k in ops)
        deviation = float(np.max(np.abs(completeness - np.eye(shape[1]))))
        if deviation > COMPLETENESS_ATOL:
            raise ChannelError(f"Kraus set is not trace preserving (deviation {deviation:.3e})")

        for k in ops:
            k.setflags(write=False)
        self.kraus_ops = tuple(ops)
        self.d_out, self.d_in = shape
        self.description = description or f"channel({self.d_in}->{self.d_out})"

    def __len__(self) -> int:
        return len(self.kraus_ops)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Channel action on a bare density matrix."""
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.d_in, self.d_in):
            raise ChannelError(f"{self.description} expects a {self.d_in}x{self.d_in} input")
        return sum(k @ rho @ k.conj().T for k in self.kraus_ops)

    def __repr__(self) -> str:
        return f"KrausChannel({self.description}, ops={len(self)})"


def identity_channel(dim: int) -> KrausChannel:
    return KrausChannel([np.eye(dim)], description=f"id({dim})")


def product_channel(a: KrausChannel, b: KrausChannel) -> KrausChannel:
    """Channel a (x) b with Kraus set {K_i (x) L_j}."""
    ops = [np.kron(k, l) for k in a.kraus_ops for l in b.kraus_ops]
    return KrausChannel(ops, description=f"{a.description} x {b.description}")


def compose(first: KrausChannel, second: KrausChannel) -> KrausChannel:
    """
    Serial composition: apply ``first``, then ``second``.

    Raises:
        ChannelError: Output of ``first`` does not fit the input of ``second``
    """
    if first.d_out != second.d_in:
        raise ChannelError(
            f"Cannot feed {first.description} (out {first.d_out}) into "
            f"{second.description} (in {second.d_in})"
        )
    ops = [l @ k for k in first.kraus_ops for l in second.kraus_ops]
    # Drop exact zeros so repeated composition stays small
    ops = [op for op in ops if np.any(op)]
    return KrausChannel(ops, description=f"{second.description} o {first.description}")


def stinespring_isometry(channel: KrausChannel) -> np.ndarray:
    """
    Isometry V = sum_i K_i (x) |i>_E from the input to output (x) environment.

    Rows are indexed b * r + i, with b the output level and i the environment level.
    """
    stacked = np.stack(channel.kraus_ops)
    r = stacked.shape[0]
    return stacked.transpose(1, 0, 2).reshape(channel.d_out * r, channel.d_in)


def complementary_channel(channel: KrausChannel) -> KrausChannel:
    """Channel to the environment of the Stinespring dilation; (F_b)_{ia} = (K_i)_{ba}."""
    stacked = np.stack(channel.kraus_ops).transpose(1, 0, 2)
    return KrausChannel(list(stacked), description=f"complement of {channel.description}")
