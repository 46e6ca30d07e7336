import sys
from pathlib import Path

from src.services.solver_service import SolverService


def build_solver(args) -> SolverService:
    """Solver backend from the shared flags"""
    return SolverService(backend=args.solver, solver_path=args.solver_path, solver_args=args.solver_args)


def write_output(text: str, path=None) -> None:
    """Write to `path`, or to stdout when no path is given"""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")
