from src.commands.common import write_output
from src.repository.automaton_repository import AutomatonRepository, format_pnfa
from src.repository.corpus_repository import CorpusRepository
from src.schemas.frequency_schema import WEIGHT_NAMES, WeightConfig
from src.services.corpus_service import corpus_to_sample
from src.services.frequency_service import FrequencyService

_DESCRIPTIONS = {
    "f_pp": "positive-word final state, accepting path",
    "f_pq": "positive-word final state, inconclusive path",
    "f_nn": "negative-word final state, rejecting path",
    "f_nq": "negative-word final state, inconclusive path",
    "d_pp": "positive-word transition, accepting path",
    "d_pq": "positive-word transition, inconclusive path",
    "d_nn": "negative-word transition, rejecting path",
    "d_nq": "negative-word transition, inconclusive path",
}


def register(subparsers, parents):
    parser = subparsers.add_parser(
        "transform", parents=parents, help="turn an automaton into a probabilistic one using corpus frequencies"
    )
    parser.add_argument("--automaton", required=True, help="automaton file")
    parser.add_argument("--corpus", required=True, help="training corpus the frequencies are counted on")
    weights = parser.add_argument_group("weights", "ω weight per final/transition, polarity and sort")
    for name in WEIGHT_NAMES:
        weights.add_argument(
            f"--w-{name.replace('_', '-')}",
            type=float,
            default=1.0,
            metavar="W",
            help=f"weight of the {_DESCRIPTIONS[name]} counts (default: 1.0)",
        )
    parser.add_argument("--output", help="probabilistic automaton file (default: stdout)")
    parser.set_defaults(handler=run)
    return parser


def run(args) -> int:
    nfa = AutomatonRepository().load_nfa(args.automaton)
    sample = corpus_to_sample(CorpusRepository().load_corpus(args.corpus))
    weights = WeightConfig(**{name: getattr(args, f"w_{name}") for name in WEIGHT_NAMES})
    pnfa = FrequencyService(weights, args.path_budget).transform(nfa, sample)
    write_output(format_pnfa(pnfa), args.output)
    return 0
