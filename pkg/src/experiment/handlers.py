"""
Command handlers - one function per CLI subcommand. Each returns the text to
emit; writing it out is left to the entry point.
"""
import json
import logging

import numpy as np

from src.quantum_core import DensityMatrix, haar_random_state
from src.teleport import (
    NoiseConfig,
    ProtocolLayout,
    ProtocolTrace,
    entanglement_generation,
    run_protocol,
)

from .capacity_table import run_capacity_table
from .config import ExperimentConfig, epsilon_grid
from .sweep import run_fidelity_sweep

logger = logging.getLogger(__name__)

TELEPORT_DEMO_EPSILON = 0.2
ENTGEN_DEMO_EPSILON = 0.0


def _matrix_text(rho: DensityMatrix) -> str:
    return np.array2string(rho.matrix, precision=3, suppress_small=True, max_line_width=160)


def _trace_lines(trace: ProtocolTrace) -> list[str]:
    lines = ["Измерения Белла:"]
    for record, correction in zip(trace.bsm_outcomes, trace.corrections):
        lines.append(f"  {record.stage}/{record.dof}: {record.outcome.value} → {correction.value}")
    lines.append("Потери фотонов:")
    if not trace.erasure_events:
        lines.append("  (шум отключен)")
    for event in trace.erasure_events:
        mark = "❌ потерян" if event.occurred else "✅ дошел"
        lines.append(f"  {event.site.value} [{event.photon}]: {mark}")
    return lines


def cmd_sweep(config: ExperimentConfig) -> str:
    """Handle the ``sweep`` command."""
    logger.info(f"Running sweep: {config.epsilon_steps} points x {config.trials_per_point} trials")
    result = run_fidelity_sweep(config)
    return result.to_json() if config.output_format == "json" else result.to_csv()


def cmd_capacity(config: ExperimentConfig) -> str:
    """Handle the ``capacity`` command."""
    table = run_capacity_table(epsilon_grid(config), config.capacity_dofs)
    return table.to_json() if config.output_format == "json" else table.to_csv()


def cmd_teleport_demo(config: ExperimentConfig, epsilon: float | None = None) -> str:
    """Handle the ``teleport-demo`` command: one Haar-random input through the noisy protocol."""
    epsilon = TELEPORT_DEMO_EPSILON if epsilon is None else epsilon
    noise = NoiseConfig(epsilon, config.noise_sites, config.lost_policy)
    layout = ProtocolLayout.for_dofs(config.n_dofs)

    rng = np.random.default_rng(config.seed)
    state = haar_random_state(layout.inputs, rng)
    trace = run_protocol(state, noise, rng, measurement=config.measurement)

    if config.output_format == "json":
        payload = {"epsilon": epsilon, "seed": config.seed, "n_dofs": config.n_dofs, **trace.to_dict()}
        return json.dumps(payload, indent=2) + "\n"

    lines = [
        f"🔬 Телепортация: n = {config.n_dofs}, ε = {epsilon:g}, seed = {config.seed}",
        "",
        *_trace_lines(trace),
        "",
        "Исходное состояние (матрица плотности):",
        _matrix_text(state.to_density()),
    ]
    if trace.reconstruction is None:
        lines += ["", "⚠️ Прогон отброшен: фотон потерян, учитываются только успешные прогоны"]
    else:
        lines += [
            "Восстановленное состояние (матрица плотности):",
            _matrix_text(trace.reconstruction),
            "",
            f"📊 Точность: {trace.final_fidelity:.6f}",
        ]
    return "\n".join(lines) + "\n"


def cmd_entgen_demo(config: ExperimentConfig, epsilon: float | None = None) -> str:
    """Handle the ``entgen-demo`` command: two Bell pairs created with one carrier photon."""
    epsilon = ENTGEN_DEMO_EPSILON if epsilon is None else epsilon
    noise = NoiseConfig(epsilon, config.noise_sites, config.lost_policy)
    rng = np.random.default_rng(config.seed)
    result = entanglement_generation(noise, rng, measurement=config.measurement)

    if config.output_format == "json":
        payload = {
            "epsilon": epsilon,
            "seed": config.seed,
            "pair_fidelities": result.pair_fidelities,
            "pair_entropies": result.pair_entropies,
            **result.trace.to_dict(),
        }
        return json.dumps(payload, indent=2) + "\n"

    pairs = {"SAM": "E_SAM – P3_SAM", "OAM": "F_OAM – P4_OAM"}
    lines = [
        f"🔗 Генерация запутанных пар: ε = {epsilon:g}, seed = {config.seed}",
        "",
        *_trace_lines(result.trace),
        "",
    ]
    if result.state is None:
        lines.append("⚠️ Прогон отброшен: фотон потерян")
    else:
        for dof, name in pairs.items():
            lines.append(
                f"  {name}: точность {result.pair_fidelities[dof]:.6f}, "
                f"энтропия {result.pair_entropies[dof]:.6f} бит"
            )
    return "\n".join(lines) + "\n"
