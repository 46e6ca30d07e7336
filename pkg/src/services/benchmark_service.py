import logging
import random
import re
from typing import Dict, List, Tuple

from pyformlang.regular_expression import PythonRegex

from src.schemas.corpus_schema import LabeledCorpus, RegexpBenchmarkSpec
from src.services.corpus_service import build_corpus
from src.utils.exceptions import LanguageTooSmall, NegativeGenerationStalled

SHUFFLE_RETRIES = 1000


class LanguageCounter:
    """Minimal DFA of a pattern with per-length word counts.

    counts[L][q] is the number of words of length L leading from state q
    to a final state; words are ranked lexicographically within a length.
    """

    def __init__(self, pattern: str, max_len: int):
        dfa = PythonRegex(pattern).to_epsilon_nfa().to_deterministic().minimize()
        self.start = dfa.start_state
        self.finals = set(dfa.final_states)
        self.delta: Dict = {}
        for state, moves in dfa.to_dict().items():
            for symbol, target in moves.items():
                if isinstance(target, (set, frozenset)):
                    target = next(iter(target))
                self.delta.setdefault(state, []).append((str(symbol.value), target))
        for moves in self.delta.values():
            moves.sort(key=lambda move: move[0])

        states = set(self.delta) | self.finals | {t for moves in self.delta.values() for _, t in moves}
        if self.start is not None:
            states.add(self.start)
        self.counts: List[Dict] = [{q: int(q in self.finals) for q in states}]
        for _ in range(max_len):
            previous = self.counts[-1]
            self.counts.append(
                {q: sum(previous[t] for _, t in self.delta.get(q, ())) for q in states}
            )

    def count(self, length: int) -> int:
        if self.start is None:
            return 0
        return self.counts[length].get(self.start, 0)

    def word_at(self, length: int, rank: int) -> str:
        """The rank-th word (0-based) of the given length"""
        state, letters = self.start, []
        for remaining in range(length, 0, -1):
            for symbol, target in self.delta.get(state, ()):
                block = self.counts[remaining - 1][target]
                if rank < block:
                    letters.append(symbol)
                    state = target
                    break
                rank -= block
        return "".join(letters)


class BenchmarkService:
    """Seeded corpus generation; every draw comes from one rng, so a seed fixes the corpus"""

    def __init__(self, spec: RegexpBenchmarkSpec):
        self.spec = spec
        self.rng = random.Random(spec.seed)

    def generate(self) -> LabeledCorpus:
        positives = self.sample_positives()
        negatives = self.shuffle_negatives(positives)
        logging.info("generated %d positives and %d negatives", len(positives), len(negatives))
        return build_corpus([(True, w) for w in positives] + [(False, w) for w in negatives])

    def sample_positives(self) -> List[str]:
        """total/2 distinct words drawn uniformly from the length-bounded language"""
        spec = self.spec
        counter = LanguageCounter(spec.pattern, spec.max_len)
        lengths: List[Tuple[int, int]] = [
            (length, counter.count(length)) for length in range(spec.min_len, spec.max_len + 1)
        ]
        size = sum(c for _, c in lengths)
        wanted = spec.total // 2
        logging.info("pattern %s has %d words of length %d..%d", spec.pattern, size, spec.min_len, spec.max_len)
        if size < wanted:
            raise LanguageTooSmall(f"language has {size} words, {wanted} positives needed")

        words = []
        for index in self.rng.sample(range(size), wanted):
            for length, block in lengths:
                if index < block:
                    words.append(counter.word_at(length, index))
                    break
                index -= block
        return words

    def shuffle_negatives(self, positives: List[str]) -> List[str]:
        """One non-matching anagram of a random positive per positive"""
        if not any(len(set(w)) >= 2 for w in positives):
            raise LanguageTooSmall("no positive word has a distinct permutation")
        compiled = re.compile(self.spec.pattern)
        taken = set(positives)
        negatives = []
        for _ in positives:
            for _attempt in range(SHUFFLE_RETRIES):
                letters = list(self.rng.choice(positives))
                self.rng.shuffle(letters)
                candidate = "".join(letters)
                if candidate not in taken and not compiled.fullmatch(candidate):
                    break
            else:
                raise NegativeGenerationStalled(
                    f"no new non-matching shuffle after {SHUFFLE_RETRIES} attempts"
                )
            taken.add(candidate)
            negatives.append(candidate)
        return negatives


def generate_regexp_benchmark(spec: RegexpBenchmarkSpec) -> LabeledCorpus:
    """Seeded positive/negative corpus for a regular expression"""
    return BenchmarkService(spec).generate()
