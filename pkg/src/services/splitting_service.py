import logging
import math
import random
from collections import Counter
from typing import Callable, Dict, List, Optional, Sequence

from src.schemas.automaton_schema import Sample, Word
from src.schemas.splitting_schema import IlsConfig, IlsInit, SplitStrategy, Splitting


def split_all_prefix(sample: Sample) -> Splitting:
    return Splitting(cuts={w: len(w) for w in sample.words})


def split_all_suffix(sample: Sample) -> Splitting:
    return Splitting(cuts={w: 0 for w in sample.words})


def _greedy_cover(words: Sequence[Word], parts: Callable[[Word], List[Word]]) -> Dict[Word, Word]:
    """Assign every word to a selected part, ranking parts by |part|·|words having it|.

    Ties: higher cost, then longer, then lexicographically smaller.
    """
    owners: Dict[Word, List[Word]] = {}
    for w in words:
        for part in parts(w):
            owners.setdefault(part, []).append(w)
    ranked = sorted(owners, key=lambda p: (-len(p) * len(owners[p]), -len(p), p))

    chosen: Dict[Word, Word] = {}
    for part in ranked:
        uncovered = [w for w in owners[part] if w not in chosen]
        if uncovered:
            for w in uncovered:
                chosen[w] = part
        if len(chosen) == len(words):
            break
    return chosen


def split_best_suffix(sample: Sample) -> Splitting:
    """Greedy covering by high-cost suffixes; prefixes complete the words"""
    chosen = _greedy_cover(sample.words, lambda w: [w[i:] for i in range(len(w))])
    return Splitting(cuts={w: len(w) - len(v) for w, v in chosen.items()})


def split_best_prefix(sample: Sample) -> Splitting:
    chosen = _greedy_cover(sample.words, lambda w: [w[:i] for i in range(1, len(w) + 1)])
    return Splitting(cuts={w: len(u) for w, u in chosen.items()})


def fitness(splitting: Splitting, k: int) -> int:
    """|Pref(S_u)| + k·|Suf(S_v)|, counting non-empty prefixes and suffixes"""
    prefixes = {u[:i] for u in splitting.used_prefixes for i in range(1, len(u) + 1)}
    suffixes = {v[i:] for v in splitting.used_suffixes for i in range(len(v))}
    return len(prefixes) + k * len(suffixes)


class _SplitState:
    """Cut points with multiset counters of the prefixes/suffixes they induce"""

    def __init__(self, words: Sequence[Word], cuts: Sequence[int], k: int):
        self.words = words
        self.k = k
        self.cuts = list(cuts)
        self.prefixes: Counter = Counter()
        self.suffixes: Counter = Counter()
        for w, c in zip(words, self.cuts):
            self.prefixes.update(w[:i] for i in range(1, c + 1))
            self.suffixes.update(w[i:] for i in range(c, len(w)))

    @property
    def fitness(self) -> int:
        return len(self.prefixes) + self.k * len(self.suffixes)

    @staticmethod
    def _drop(counter: Counter, key: Word) -> None:
        counter[key] -= 1
        if not counter[key]:
            del counter[key]

    def move(self, index: int, cut: int) -> None:
        w, c = self.words[index], self.cuts[index]
        while c < cut:
            # w[c] leaves the suffix side and joins the prefix side
            self._drop(self.suffixes, w[c:])
            c += 1
            self.prefixes[w[:c]] += 1
        while c > cut:
            self._drop(self.prefixes, w[:c])
            c -= 1
            self.suffixes[w[c:]] += 1
        self.cuts[index] = cut


def _local_pass(state: _SplitState) -> None:
    """Shift each cut by ±1, keeping moves that do not increase fitness"""
    for index, w in enumerate(state.words):
        for step in (-1, 1):
            old, new = state.cuts[index], state.cuts[index] + step
            if not 0 <= new <= len(w):
                continue
            before = state.fitness
            state.move(index, new)
            if state.fitness > before:
                state.move(index, old)


def ils_optimize(sample: Sample, k: int, config: IlsConfig) -> Splitting:
    """Iterated local search over split points minimising `fitness`"""
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = random.Random(config.seed)
    words = list(sample.words)

    if config.init == IlsInit.BEST_PREFIX:
        initial = split_best_prefix(sample)
        cuts = [initial.cuts[w] for w in words]
    elif config.init == IlsInit.BEST_SUFFIX:
        initial = split_best_suffix(sample)
        cuts = [initial.cuts[w] for w in words]
    else:
        cuts = [rng.randint(0, len(w)) for w in words]

    strength = config.perturbation_strength or max(1, math.ceil(len(words) / 10))
    current = _SplitState(words, cuts, k)
    best_cuts, best_fitness = list(current.cuts), current.fitness
    logging.debug("ILS start: fitness %d", best_fitness)

    for iteration in range(config.max_iterations):
        _local_pass(current)
        if current.fitness < best_fitness:
            best_cuts, best_fitness = list(current.cuts), current.fitness
            logging.debug("ILS iteration %d: fitness %d", iteration, best_fitness)
        # kick from the best splitting found so far
        current = _SplitState(words, best_cuts, k)
        for index in rng.sample(range(len(words)), min(strength, len(words))):
            current.move(index, rng.randint(0, len(words[index])))

    logging.info("ILS finished with fitness %d after %d iterations", best_fitness, config.max_iterations)
    return Splitting(cuts=dict(zip(words, best_cuts)))


_ILS_INIT = {
    SplitStrategy.ILS_RAND: IlsInit.RANDOM,
    SplitStrategy.ILS_P: IlsInit.BEST_PREFIX,
    SplitStrategy.ILS_S: IlsInit.BEST_SUFFIX,
}


def compute_splitting(
    strategy: SplitStrategy, sample: Sample, k: int, ils: Optional[IlsConfig] = None
) -> Splitting:
    """Splitting for a model strategy; ILS strategies depend on k"""
    if strategy == SplitStrategy.P:
        return split_all_prefix(sample)
    if strategy == SplitStrategy.S:
        return split_all_suffix(sample)
    if strategy == SplitStrategy.PSTAR:
        return split_best_prefix(sample)
    if strategy == SplitStrategy.SSTAR:
        return split_best_suffix(sample)
    config = (ils or IlsConfig()).model_copy(update={"init": _ILS_INIT[strategy]})
    return ils_optimize(sample, k, config)
