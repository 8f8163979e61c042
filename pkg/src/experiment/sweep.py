"""
Monte-Carlo fidelity sweep over the erasure probability.

Every trial draws from its own generator seeded by (seed, point, trial), so
results do not depend on how points are spread over workers.
"""
import json
import logging
import math
from dataclasses import asdict, dataclass

import numpy as np
import pandas as pd

from src import __version__
from src.quantum_core import haar_random_state
from src.teleport import NoiseConfig, ProtocolLayout, default_correction_table, run_protocol

from .config import ExperimentConfig, epsilon_grid
from .workers import run_indexed

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["epsilon", "mean_fidelity", "std_error", "trials"]
CSV_FLOAT_FORMAT = "%.12g"


def trial_rng(seed: int, point_index: int, trial_index: int) -> np.random.Generator:
    return np.random.default_rng([seed, point_index, trial_index])


@dataclass(frozen=True)
class SweepPoint:
    """Aggregated fidelity at one error rate."""

    epsilon: float
    mean_fidelity: float
    std_error: float
    trials: int


def aggregate(epsilon: float, fidelities: list[float]) -> SweepPoint:
    """
    Mean and standard error (sample std / sqrt(n)) of the scored trials.

    One trial gives a standard error of 0; no trials gives NaN for both.
    """
    n = len(fidelities)
    if n == 0:
        logger.warning(f"No scored trials at epsilon={epsilon}; reporting NaN")
        return SweepPoint(epsilon, math.nan, math.nan, 0)
    values = np.asarray(fidelities, dtype=float)
    std_error = float(np.std(values, ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return SweepPoint(epsilon, float(np.mean(values)), std_error, n)


def run_point(task: tuple[ExperimentConfig, int, float]) -> SweepPoint:
    """All trials at one grid point."""
    config, point_index, epsilon = task
    noise = NoiseConfig(epsilon, config.noise_sites, config.lost_policy)
    layout = ProtocolLayout.for_dofs(config.n_dofs)
    table = default_correction_table()

    fidelities = []
    for trial_index in range(config.trials_per_point):
        rng = trial_rng(config.seed, point_index, trial_index)
        state = haar_random_state(layout.inputs, rng)
        trace = run_protocol(state, noise, rng, table=table, measurement=config.measurement)
        if trace.final_fidelity is not None:
            fidelities.append(trace.final_fidelity)

    point = aggregate(epsilon, fidelities)
    logger.info(f"epsilon={epsilon:g}: mean fidelity {point.mean_fidelity:.6f} over {point.trials} trials")
    return point


def _json_number(value: float) -> float | None:
    return None if isinstance(value, float) and math.isnan(value) else value


@dataclass(frozen=True)
class SweepResult:
    """One record per grid point plus the config and software version that produced them."""

    points: tuple[SweepPoint, ...]
    config: ExperimentConfig
    version: str = __version__

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(p) for p in self.points], columns=SWEEP_COLUMNS)

    def to_csv(self) -> str:
        return self.to_frame().to_csv(float_format=CSV_FLOAT_FORMAT, index=False, lineterminator="\n")

    def to_json(self) -> str:
        results = [{k: _json_number(v) for k, v in asdict(p).items()} for p in self.points]
        payload = {"config": self.config.to_dict(), "results": results, "version": self.version}
        return json.dumps(payload, indent=2) + "\n"


def run_fidelity_sweep(config: ExperimentConfig, workers: int | None = None) -> SweepResult:
    """
    Average protocol fidelity over Haar-random inputs at every grid point.

    Args:
        config: Grid, trial count, noise model and seed
        workers: Worker processes (default: ``config.workers``)

    Returns:
        Sweep result, identical for any worker count
    """
    grid = epsilon_grid(config)
    tasks = [(config, index, epsilon) for index, epsilon in enumerate(grid)]
    points = run_indexed(run_point, tasks, workers or config.workers)
    return SweepResult(tuple(points), config)
