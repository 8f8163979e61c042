"""
Capacity table - closed-form erasure capacity next to the numerically
computed coherent information of the joint-carrier erasure channel.
"""
import json
import logging
from dataclasses import asdict, dataclass
from typing import Sequence

import pandas as pd

from src.channels import (
    carrier_erasure_channel,
    coherent_information,
    erasure_capacity_formula,
    maximally_entangled_input,
)

from .sweep import CSV_FLOAT_FORMAT

logger = logging.getLogger(__name__)

CAPACITY_COLUMNS = ["epsilon", "n", "analytic", "numeric", "abs_diff"]


@dataclass(frozen=True)
class CapacityRow:
    epsilon: float
    n: int
    analytic: float
    numeric: float  # raw coherent information, negative above eps = 1/2
    abs_diff: float  # |analytic - max(0, numeric)|


def capacity_row(epsilon: float, n_dofs: int) -> CapacityRow:
    analytic = erasure_capacity_formula(epsilon, n_dofs)
    numeric = coherent_information(
        carrier_erasure_channel(n_dofs, epsilon),
        maximally_entangled_input(2**n_dofs),
    )
    return CapacityRow(epsilon, n_dofs, analytic, numeric, abs(analytic - max(0.0, numeric)))


@dataclass(frozen=True)
class CapacityTable:
    rows: tuple[CapacityRow, ...]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(r) for r in self.rows], columns=CAPACITY_COLUMNS)

    def to_csv(self) -> str:
        return self.to_frame().to_csv(float_format=CSV_FLOAT_FORMAT, index=False, lineterminator="\n")

    def to_json(self) -> str:
        return json.dumps([asdict(r) for r in self.rows], indent=2) + "\n"


def run_capacity_table(epsilons: Sequence[float], n_list: Sequence[int]) -> CapacityTable:
    """One row per (epsilon, n), epsilon-major."""
    rows = tuple(capacity_row(eps, n) for eps in epsilons for n in n_list)
    worst = max((row.abs_diff for row in rows), default=0.0)
    logger.info(f"Capacity table: {len(rows)} rows, largest deviation {worst:.3e}")
    return CapacityTable(rows)
