import argparse
import logging
import sys

from pydantic import ValidationError

from src.commands import bench_command, classify_command, gen_command, infer_command, transform_command
from src.config.settings import Settings
from src.services.solver_service import BACKENDS
from src.utils.exceptions import GrammarError

settings = Settings()

COMMANDS = (gen_command, infer_command, transform_command, classify_command, bench_command)


def shared_options() -> argparse.ArgumentParser:
    """Flags every subcommand accepts; defaults come from Settings"""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--seed", type=int, default=0, help="seed for every random choice (default: 0)")
    parser.add_argument(
        "--timeout", type=float, default=settings.SOLVE_TIMEOUT, help="seconds per solver call"
    )
    parser.add_argument(
        "--path-budget", type=int, default=settings.PATH_BUDGET, help="maximum physical paths per word"
    )
    parser.add_argument("--solver", choices=BACKENDS, default=settings.SOLVER_BACKEND, help="SAT backend")
    parser.add_argument("--solver-path", default=settings.SAT_SOLVER_PATH, help="external solver executable")
    parser.add_argument("--solver-args", default=settings.SAT_SOLVER_ARGS, help="extra external solver arguments")
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=settings.LOG_LEVEL.upper(),
        help="logging level",
    )
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="app.py", description=settings.PROJECT_NAME)
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [shared_options()]
    for command in COMMANDS:
        command.register(subparsers, parents)
    return parser


def configure_logging(level: str) -> None:
    # Configure logging
    logging.basicConfig(
        filename=settings.LOG_FILE or None,
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # usage errors exit 2, --help exits 0
        return e.code if isinstance(e.code, int) else 2

    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except GrammarError as e:
        logging.error("%s failed at %s: %s", args.command, e.stage, e)
        print(f"error [{e.stage}]: {e}", file=sys.stderr)
    except ValidationError as e:
        logging.error("%s: invalid input: %s", args.command, e)
        print(f"error [input]: {e.errors()[0]['msg']}", file=sys.stderr)
    except ValueError as e:
        logging.error("%s: invalid input: %s", args.command, e)
        print(f"error [input]: {e}", file=sys.stderr)
    except OSError as e:
        logging.error("%s: %s", args.command, e)
        print(f"error [io]: {e}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
