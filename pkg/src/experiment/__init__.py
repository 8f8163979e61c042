# Experiment runner: configuration, sweeps, capacity tables and the CLI
from .capacity_table import CapacityRow, CapacityTable, run_capacity_table
from .config import ConfigError, ExperimentConfig, epsilon_grid, parse_config, to_text
from .sweep import SweepPoint, SweepResult, run_fidelity_sweep

__all__ = [
    "CapacityRow",
    "CapacityTable",
    "ConfigError",
    "ExperimentConfig",
    "SweepPoint",
    "SweepResult",
    "epsilon_grid",
    "parse_config",
    "run_capacity_table",
    "run_fidelity_sweep",
    "to_text",
]
