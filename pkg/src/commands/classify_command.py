from src.commands.common import write_output
from src.repository.automaton_repository import AutomatonRepository, format_number
from src.repository.corpus_repository import CorpusRepository
from src.schemas.classifier_schema import ClassifierKind, TieRule
from src.services.classifier_service import ClassifierService, decide


def register(subparsers, parents):
    parser = subparsers.add_parser("classify", parents=parents, help="classify words with a probabilistic automaton")
    parser.add_argument("--automaton", required=True, help="probabilistic automaton file")
    parser.add_argument("--words", required=True, help="one word per line")
    parser.add_argument(
        "--classifier", default="mm", choices=[c.value for c in ClassifierKind], help="scoring rule (default: mm)"
    )
    parser.add_argument(
        "--tie", default="neg", choices=[t.value for t in TieRule], help="decision on equal scores (default: neg)"
    )
    parser.add_argument("--output", help="TSV file (default: stdout)")
    parser.set_defaults(handler=run)
    return parser


def run(args) -> int:
    """
    One TSV row per word: word, positive score, negative score, decision
    """
    pnfa = AutomatonRepository().load_pnfa(args.automaton)
    classifier = ClassifierService(pnfa, ClassifierKind(args.classifier), TieRule(args.tie), args.path_budget)
    rows = []
    for word in CorpusRepository().load_words(args.words):
        scores = classifier.scores(word)
        decision = decide(scores, classifier.tie)
        rows.append(f"{word}\t{format_number(scores.positive)}\t{format_number(scores.negative)}\t{decision.value}\n")
    write_output("".join(rows), args.output)
    return 0
