import logging

from src.commands.common import write_output
from src.schemas.corpus_schema import PRESETS, RegexpBenchmarkSpec
from src.services.benchmark_service import generate_regexp_benchmark
from src.services.corpus_service import format_corpus


def register(subparsers, parents):
    parser = subparsers.add_parser(
        "gen", parents=parents, help="generate a regular-expression benchmark corpus"
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--pattern", help="regular expression of the positive language")
    source.add_argument("--preset", choices=sorted(PRESETS), help="built-in benchmark pattern")
    parser.add_argument("--total", type=int, default=200, help="number of words, half of them positive")
    parser.add_argument("--min-len", type=int, default=1, help="shortest positive word")
    parser.add_argument("--max-len", type=int, default=15, help="longest positive word")
    parser.add_argument("--output", help="corpus file (default: stdout)")
    parser.set_defaults(handler=run)
    return parser


def run(args) -> int:
    """
    Sample positives uniformly from the language and shuffle them into negatives
    """
    pattern = args.pattern if args.pattern is not None else PRESETS[args.preset]
    spec = RegexpBenchmarkSpec(
        pattern=pattern, total=args.total, min_len=args.min_len, max_len=args.max_len, seed=args.seed
    )
    corpus = generate_regexp_benchmark(spec)
    write_output(format_corpus(corpus), args.output)
    logging.info("generated %d words for %s", len(corpus.entries), pattern)
    return 0
