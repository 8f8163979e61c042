"""
Experiment CLI - Entry point.

Runs the fidelity sweep, the capacity table and the protocol demos:

    python -m src.experiment.main sweep --seed 42 --trials 70 --out fig.csv
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from src import __version__
from src.shared.config import Settings, get_settings

from .config import OUTPUT_FORMATS, ExperimentConfig, parse_config
from .handlers import cmd_capacity, cmd_entgen_demo, cmd_sweep, cmd_teleport_demo

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    """Bad command line or configuration."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _probability(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {raw!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {raw}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="Path to a key = value config file")
    common.add_argument("--seed", type=int, help="Master seed")
    common.add_argument("--trials", type=int, help="Trials per sweep point")
    common.add_argument("--out", help="Output file (default: stdout)")
    common.add_argument("--format", choices=OUTPUT_FORMATS, help="Output format")
    common.add_argument("--workers", type=int, help="Worker processes for the sweep")
    common.add_argument("--epsilon", type=_probability, help="Error rate for the demos")

    parser = _Parser(prog="hypermux", description="Hyperentanglement multiplexing simulator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("sweep", parents=[common], help="Fidelity vs. error rate")
    commands.add_parser("capacity", parents=[common], help="Analytic vs. numeric capacity")
    commands.add_parser("teleport-demo", parents=[common], help="One noisy protocol run")
    commands.add_parser("entgen-demo", parents=[common], help="Two Bell pairs from one carrier")
    return parser


def load_config(args: argparse.Namespace, settings: Settings) -> ExperimentConfig:
    """
    Defaults, then environment settings, then the config file, then command-line flags.

    Raises:
        UsageError: The config file cannot be read
        ConfigError: A value is invalid
    """
    config = ExperimentConfig(workers=settings.workers)
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as e:
            raise UsageError(f"Cannot read config {args.config}: {e}") from None
        config = parse_config(text, base=config)

    return config.with_overrides(
        seed=args.seed,
        trials_per_point=args.trials,
        output_path=args.out,
        output_format=args.format,
        workers=args.workers,
    )


def _emit(text: str, output_path: str | None) -> None:
    if output_path is None:
        sys.stdout.write(text)
        return
    Path(output_path).write_text(text, encoding="utf-8", newline="\n")
    logger.info(f"Wrote {output_path}")
    print(f"💾 Результаты сохранены в {output_path}", file=sys.stderr)


def cli_main(argv: Sequence[str] | None = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        0 on success, 1 on a usage or config error, 2 on a runtime failure
    """
    parser = build_parser()
    try:
        settings = get_settings()
        args = parser.parse_args(argv)
        config = load_config(args, settings)
    except SystemExit as e:
        return int(e.code or 0)
    except (UsageError, ValueError) as e:
        parser.print_usage(sys.stderr)
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=settings.log_level_value,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        if args.command == "sweep":
            text = cmd_sweep(config)
        elif args.command == "capacity":
            text = cmd_capacity(config)
        elif args.command == "teleport-demo":
            text = cmd_teleport_demo(config, args.epsilon)
        else:
            text = cmd_entgen_demo(config, args.epsilon)
        _emit(text, config.output_path)
    except Exception as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"❌ Ошибка: {e}", file=sys.stderr)
        return EXIT_RUNTIME

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(cli_main())
