import logging
from pathlib import Path

from src.commands.common import build_solver, write_output
from src.config.settings import Settings
from src.repository.automaton_repository import format_nfa
from src.repository.corpus_repository import CorpusRepository
from src.schemas.encoding_schema import ModelKind
from src.schemas.inference_schema import InferenceRequest, InferenceStatus, ModelVariant
from src.schemas.splitting_schema import IlsConfig, SplitStrategy
from src.services.corpus_service import corpus_to_sample
from src.services.inference_service import InferenceService
from src.utils.exceptions import GrammarError


def register(subparsers, parents):
    parser = subparsers.add_parser("infer", parents=parents, help="infer a 3-sort NFA consistent with a corpus")
    parser.add_argument("--corpus", required=True, help="labeled corpus file")
    parser.add_argument(
        "--model", default="P", choices=[s.value for s in SplitStrategy], help="splitting strategy (default: P)"
    )
    parser.add_argument("--kplus2", action="store_true", help="use the (k+2)-state encoding")
    size = parser.add_mutually_exclusive_group(required=True)
    size.add_argument("--k", type=int, help="number of states to try")
    size.add_argument("--min-k", action="store_true", help="search the smallest k up to --k-max")
    parser.add_argument("--k-max", type=int, default=10, help="upper bound for --min-k (default: 10)")
    parser.add_argument(
        "--ils-iterations", type=int, default=Settings.ILS_MAX_ITERATIONS, help="iterations of ILS strategies"
    )
    parser.add_argument("--output", help="automaton file (default: stdout)")
    parser.add_argument("--reduced-output", help="reduced k-state automaton file, for --kplus2")
    parser.add_argument("--stats", help="JSON-lines file with one record per solver call")
    parser.set_defaults(handler=run)
    return parser


def run(args) -> int:
    """
    Infer with a fixed k or search the minimal k; writes the automaton and per-call statistics
    """
    corpus = CorpusRepository().load_corpus(args.corpus)
    model = ModelVariant(
        strategy=SplitStrategy(args.model), kind=ModelKind.KPLUS2 if args.kplus2 else ModelKind.K
    )
    request = InferenceRequest(
        sample=corpus_to_sample(corpus),
        model=model,
        k=args.k,
        k_max=args.k_max if args.min_k else None,
        timeout=args.timeout,
        ils=IlsConfig(max_iterations=args.ils_iterations, seed=args.seed),
    )
    result = InferenceService(build_solver(args)).infer(request)

    if args.stats:
        lines = "".join(attempt.model_dump_json() + "\n" for attempt in result.attempts)
        Path(args.stats).write_text(lines, encoding="utf-8")

    if result.status != InferenceStatus.FOUND:
        bound = f"k={args.k}" if args.k is not None else f"k<={args.k_max}"
        raise GrammarError(f"{model.name}: {result.status.value} with {bound}", stage="infer")

    write_output(format_nfa(result.classification_nfa), args.output)
    if args.reduced_output and model.kind == ModelKind.KPLUS2:
        write_output(format_nfa(result.nfa), args.reduced_output)
    elif args.reduced_output:
        logging.warning("--reduced-output ignored for %s", model.name)
    return 0
