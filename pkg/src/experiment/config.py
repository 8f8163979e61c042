"""
Experiment configuration - flat ``key = value`` files, one pair per line,
``#`` starts a comment. Absent keys take their defaults.
"""
import logging
from dataclasses import asdict, dataclass, fields, replace
from enum import Enum
from typing import Any, Callable

import numpy as np

from src.teleport import DEFAULT_SITES, MAX_DOFS, LostPolicy, MeasurementMode, NoiseSite

from .validators import MAX_SEED, validate_choice, validate_int, validate_list, validate_probability, validate_seed

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("csv", "json")
MAX_CAPACITY_DOFS = 6


class ConfigError(ValueError):
    """Invalid configuration, pointing at the offending key and line when known."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        self.message = message
        self.key = key
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.key is not None:
            where.append(self.key)
        prefix = ": ".join(where)
        return f"{prefix}: {self.message}" if prefix else self.message


@dataclass(frozen=True)
class ExperimentConfig:
    """Settings of one sweep, capacity table or demo run."""

    seed: int = 0
    trials_per_point: int = 70
    epsilon_min: float = 0.0
    epsilon_max: float = 0.5
    epsilon_steps: int = 11
    n_dofs: int = 2
    noise_sites: tuple[NoiseSite, ...] = DEFAULT_SITES
    lost_policy: LostPolicy = LostPolicy.MAXIMALLY_MIXED
    measurement: MeasurementMode = MeasurementMode.SEQUENTIAL
    capacity_dofs: tuple[int, ...] = (1, 2, 3)
    workers: int = 1
    output_path: str | None = None
    output_format: str = "csv"

    def __post_init__(self):
        object.__setattr__(self, "noise_sites", tuple(NoiseSite(s) for s in self.noise_sites))
        object.__setattr__(self, "lost_policy", LostPolicy(self.lost_policy))
        object.__setattr__(self, "measurement", MeasurementMode(self.measurement))
        object.__setattr__(self, "capacity_dofs", tuple(int(n) for n in self.capacity_dofs))

        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigError("must lie in [0, 2**64)", "seed")
        if self.trials_per_point < 1:
            raise ConfigError("must be at least 1", "trials_per_point")
        if not 0.0 <= self.epsilon_min <= 1.0:
            raise ConfigError("must lie in [0, 1]", "epsilon_min")
        if not 0.0 <= self.epsilon_max <= 1.0:
            raise ConfigError("must lie in [0, 1]", "epsilon_max")
        if self.epsilon_min > self.epsilon_max:
            raise ConfigError("must not exceed epsilon_max", "epsilon_min")
        if self.epsilon_steps < 1:
            raise ConfigError("must be at least 1", "epsilon_steps")
        if not 1 <= self.n_dofs <= MAX_DOFS:
            raise ConfigError(f"must lie in [1, {MAX_DOFS}]", "n_dofs")
        if len(set(self.noise_sites)) != len(self.noise_sites):
            raise ConfigError("must not repeat a site", "noise_sites")
        if not self.noise_sites and self.epsilon_max > 0:
            raise ConfigError("needs at least one site when epsilon_max > 0", "noise_sites")
        if not self.capacity_dofs or any(not 1 <= n <= MAX_CAPACITY_DOFS for n in self.capacity_dofs):
            raise ConfigError(f"needs values in [1, {MAX_CAPACITY_DOFS}]", "capacity_dofs")
        if self.workers < 1:
            raise ConfigError("must be at least 1", "workers")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"must be one of {', '.join(OUTPUT_FORMATS)}", "output_format")

    def with_overrides(self, **overrides: Any) -> "ExperimentConfig":
        """Copy with the non-None overrides applied (command-line flags win over the file)."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> dict:
        """JSON-friendly view with enums as their string values."""
        data = asdict(self)
        for key, value in data.items():
            if isinstance(value, Enum):
                data[key] = value.value
            elif isinstance(value, tuple):
                data[key] = [v.value if isinstance(v, Enum) else v for v in value]
        return data


def _parse_output_path(raw: str) -> tuple[bool, str | None]:
    value = raw.strip()
    return bool(value), value or None


def _parse_format(raw: str) -> tuple[bool, str | None]:
    value = raw.strip().lower()
    return (True, value) if value in OUTPUT_FORMATS else (False, None)


_PARSERS: dict[str, tuple[Callable[[str], tuple[bool, Any]], str]] = {
    "seed": (validate_seed, "an integer in [0, 2**64)"),
    "trials_per_point": (lambda raw: validate_int(raw, 1), "a positive integer"),
    "epsilon_min": (validate_probability, "a number in [0, 1]"),
    "epsilon_max": (validate_probability, "a number in [0, 1]"),
    "epsilon_steps": (lambda raw: validate_int(raw, 1), "a positive integer"),
    "n_dofs": (lambda raw: validate_int(raw, 1, MAX_DOFS), f"an integer in [1, {MAX_DOFS}]"),
    "noise_sites": (
        lambda raw: validate_list(raw, lambda part: validate_choice(part, NoiseSite)),
        "a comma list of " + ", ".join(s.value for s in NoiseSite),
    ),
    "lost_policy": (
        lambda raw: validate_choice(raw, LostPolicy),
        " or ".join(p.value for p in LostPolicy),
    ),
    "measurement": (
        lambda raw: validate_choice(raw, MeasurementMode),
        " or ".join(m.value for m in MeasurementMode),
    ),
    "capacity_dofs": (
        lambda raw: validate_list(raw, lambda part: validate_int(part, 1, MAX_CAPACITY_DOFS)),
        f"a comma list of integers in [1, {MAX_CAPACITY_DOFS}]",
    ),
    "workers": (lambda raw: validate_int(raw, 1), "a positive integer"),
    "output_path": (_parse_output_path, "a file path"),
    "output_format": (_parse_format, " or ".join(OUTPUT_FORMATS)),
}


def parse_config(text: str, base: ExperimentConfig | None = None) -> ExperimentConfig:
    """
    Parse configuration text.

    Args:
        text: Contents of a ``key = value`` file
        base: Values for absent keys (default: built-in defaults)

    Returns:
        Validated config with defaults for absent keys

    Raises:
        ConfigError: Unknown key, repeated key, malformed or out-of-range value
    """
    values: dict[str, Any] = {}
    lines: dict[str, int] = {}

    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=number)

        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigError("unknown key", key, number)
        if key in values:
            raise ConfigError(f"repeats line {lines[key]}", key, number)

        parse, expected = _PARSERS[key]
        ok, value = parse(raw)
        if not ok:
            raise ConfigError(f"expected {expected}, got {raw!r}", key, number)
        values[key] = value
        lines[key] = number

    try:
        config = replace(base or ExperimentConfig(), **values)
    except ConfigError as e:
        raise ConfigError(e.message, e.key, lines.get(e.key)) from None

    logger.debug(f"Parsed config: {config}")
    return config


def _format_value(value: Any) -> str:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, tuple):
        return ", ".join(_format_value(v) for v in value)
    return repr(value) if isinstance(value, float) else str(value)


def to_text(config: ExperimentConfig) -> str:
    """Serialize to the ``key = value`` grammar; ``parse_config`` reads it back unchanged."""
    lines = []
    for f in fields(config):
        value = getattr(config, f.name)
        if value is None:
            continue
        lines.append(f"{f.name} = {_format_value(value)}")
    return "\n".join(lines) + "\n"


def epsilon_grid(config: ExperimentConfig) -> list[float]:
    """Evenly spaced error rates from epsilon_min to epsilon_max, rounded to 12 decimals."""
    if config.epsilon_steps == 1:
        return [config.epsilon_min]
    grid = np.round(np.linspace(config.epsilon_min, config.epsilon_max, config.epsilon_steps), 12)
    return [float(eps) for eps in grid]
