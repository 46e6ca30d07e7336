import logging
import sys

from src.commands.common import build_solver
from src.config.database import make_session_factory
from src.config.settings import Settings
from src.repository.experiment_repository import ExperimentRepository
from src.repository.plan_repository import PlanRepository
from src.services.evaluation_service import EvaluationService, write_report
from src.services.inference_service import InferenceService


def register(subparsers, parents):
    parser = subparsers.add_parser(
        "bench", parents=parents, help="run an experiment plan and write CSV reports"
    )
    parser.add_argument("--plan", required=True, help="experiment plan file; its seed and timeout apply")
    parser.add_argument("--output-dir", default="reports", help="directory for the CSV reports")
    parser.add_argument("--jobs", type=int, default=Settings.BENCH_JOBS, help="workers for the weight grid")
    parser.add_argument("--database", default=Settings.DATABASE_URL, help="run-store URL")
    parser.add_argument("--no-store", action="store_true", help="skip the run store and its inference cache")
    parser.set_defaults(handler=run)
    return parser


def run(args) -> int:
    """
    Inference per (dataset, split, model), then the weight x classifier grid.
    Exits 1 when any inference found no automaton; the reports are written anyway.
    """
    plan = PlanRepository().load_plan(args.plan)
    inference = InferenceService(build_solver(args))

    session = None
    repository = None
    if not args.no_store:
        session = make_session_factory(args.database)()
        repository = ExperimentRepository(session)
    try:
        service = EvaluationService(inference, repository, jobs=args.jobs, path_budget=args.path_budget)
        report = service.run_experiment(plan)
    finally:
        if session is not None:
            session.close()

    written = write_report(report, args.output_dir)
    logging.info("wrote %d report files to %s", len(written), args.output_dir)
    for dataset, split, model in report.failed:
        print(f"no automaton: {dataset} split {split} model {model}", file=sys.stderr)
    return 1 if report.failed else 0
