import logging
from typing import FrozenSet, Tuple

from src.schemas.automaton_schema import Nfa3, PhysicalPath, Sample, Verdict, Word
from src.utils.exceptions import PathBudgetExceeded

DEFAULT_PATH_BUDGET = 100_000


def enumerate_paths(nfa: Nfa3, word: Word, budget: int = DEFAULT_PATH_BUDGET) -> Tuple[PhysicalPath, ...]:
    """All physical paths of `word` from q1, in breadth-first order.

    The empty word has exactly one path, the empty one ending at q1.
    """
    frontier = [((), 1)]
    for symbol in word:
        expanded = []
        for path, state in frontier:
            for target in nfa.successors(state, symbol):
                expanded.append((path + ((state, symbol, target),), target))
        if len(expanded) > budget:
            raise PathBudgetExceeded(
                f"word of length {len(word)} has more than {budget} physical paths"
            )
        frontier = expanded
        if not frontier:
            break
    return tuple(path for path, _ in frontier)


def reachable_states(nfa: Nfa3, word: Word) -> FrozenSet[int]:
    """States where some path of `word` ends"""
    current = {1}
    for symbol in word:
        current = {j for q in current for j in nfa.successors(q, symbol)}
        if not current:
            break
    return frozenset(current)


def classify_word_3sort(nfa: Nfa3, word: Word) -> Verdict:
    ends = reachable_states(nfa, word)
    accepted = bool(ends & nfa.accepting)
    rejected = bool(ends & nfa.rejecting)
    if accepted and rejected:
        return Verdict.BOTH
    if accepted:
        return Verdict.ACCEPTED
    if rejected:
        return Verdict.REJECTED
    return Verdict.INCONCLUSIVE


def is_consistent(nfa: Nfa3, sample: Sample) -> bool:
    """Every positive is accepted only and every negative rejected only"""
    if not set(sample.alphabet) <= set(nfa.alphabet):
        return False
    # sample ids are remapped when the alphabets are ordered differently
    remap = [nfa.alphabet.index(c) for c in sample.alphabet]
    for words, expected in ((sample.positives, Verdict.ACCEPTED), (sample.negatives, Verdict.REJECTED)):
        for word in words:
            verdict = classify_word_3sort(nfa, tuple(remap[s] for s in word))
            if verdict != expected:
                logging.debug("word %s is %s, expected %s", sample.decode(word), verdict.value, expected.value)
                return False
    return True
