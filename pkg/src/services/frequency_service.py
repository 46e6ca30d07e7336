import logging
from typing import Optional

import numpy as np

from src.schemas.automaton_schema import Nfa3, PhysicalPath, Sample, Transition
from src.schemas.frequency_schema import FrequencyTables, ProbabilisticNfa, WeightConfig, WeightedFrequencyNfa
from src.utils.exceptions import PathBudgetExceeded


def occ(path: PhysicalPath, transition: Transition) -> int:
    """Occurrences of `transition` along `path`; 0 for the empty path"""
    return sum(1 for step in path if step == transition)


def _sort_masks(nfa: Nfa3):
    accepting = nfa.state_mask(nfa.accepting)
    rejecting = nfa.state_mask(nfa.rejecting)
    return accepting, rejecting, ~(accepting | rejecting)


def _forward(tensor: np.ndarray, word):
    """f[t][q]: number of paths of word[:t] from q1 ending at q"""
    forward = [np.zeros(tensor.shape[1], dtype=object)]
    forward[0][0] = 1
    for s in word:
        forward.append(forward[-1].dot(tensor[s]))
    return forward


def _count_word(tensor: np.ndarray, word, forward, target: np.ndarray, finals: np.ndarray, transitions: np.ndarray) -> None:
    """Add the paths of `word` ending in `target` to the state and transition counts.

    Backward counts b[t][q] are the continuations of word[t:] from q into `target`.
    """
    backward = [target.astype(object)]
    for s in reversed(word):
        backward.append(tensor[s].dot(backward[-1]))
    backward.reverse()

    finals += np.where(target, forward[-1], 0)
    for t, s in enumerate(word, 1):
        transitions[s] += np.outer(forward[t - 1], backward[t]) * tensor[s]


def compute_frequencies(nfa: Nfa3, sample: Sample, budget: Optional[int] = None) -> FrequencyTables:
    """φ tables: path counts per end state and transition occurrences per polarity and sort.

    Sample words are matched to the automaton by their characters; words using
    a symbol the automaton lacks have no path and count nothing. With a
    `budget`, a word with more physical paths than that is an error.
    """
    k, n = nfa.k, len(nfa.alphabet)
    tensor = nfa.transition_tensor().astype(object)
    accepting, rejecting, whatever = _sort_masks(nfa)
    tables = {name: np.zeros(k, dtype=object) for name in ("f_pp", "f_pq", "f_nn", "f_nq")}
    tables.update({name: np.zeros((n, k, k), dtype=object) for name in ("d_pp", "d_pq", "d_nn", "d_nq")})

    for words, polarity, own in ((sample.positives, "p", accepting), (sample.negatives, "n", rejecting)):
        for word in words:
            mapped = nfa.intern(sample.decode(word))
            if mapped is None:
                continue
            forward = _forward(tensor, mapped)
            if budget is not None and forward[-1].sum() > budget:
                raise PathBudgetExceeded(f"word '{sample.decode(word)}' has more than {budget} physical paths")
            for sort, target in ((polarity, own), ("q", whatever)):
                _count_word(
                    tensor, mapped, forward, target, tables[f"f_{polarity}{sort}"], tables[f"d_{polarity}{sort}"]
                )

    logging.debug("frequencies over %d words, %d states", sample.size, k)
    return FrequencyTables(**{name: table.astype(np.float64) for name, table in tables.items()})


def build_wffa(nfa: Nfa3, sample: Sample, weights: WeightConfig, tables: FrequencyTables = None) -> WeightedFrequencyNfa:
    """Weighted-frequency automaton Ω = ω·φ; precomputed `tables` may be passed in"""
    if tables is None:
        tables = compute_frequencies(nfa, sample)
    w = weights
    # φ tables are zero outside their sort, so the sort cases collapse to sums
    return WeightedFrequencyNfa(
        nfa=nfa,
        weights=weights,
        tables=tables,
        omega_f_pos=w.f_pp * tables.f_pp + w.f_pq * tables.f_pq,
        omega_f_neg=w.f_nn * tables.f_nn + w.f_nq * tables.f_nq,
        omega_d_pos=w.d_pp * tables.d_pp + w.d_pq * tables.d_pq,
        omega_d_neg=w.d_nn * tables.d_nn + w.d_nq * tables.d_nq,
    )


def _normalize(final: np.ndarray, trans: np.ndarray):
    mass = final + trans.sum(axis=(0, 2))
    live = mass > 0
    gamma_f = np.divide(final, mass, out=np.zeros_like(final), where=live)
    gamma_d = np.divide(trans, mass[None, :, None], out=np.zeros_like(trans), where=live[None, :, None])
    return gamma_f, gamma_d


def to_probabilistic(wffa: WeightedFrequencyNfa) -> ProbabilisticNfa:
    """Per-state normalisation; states without mass get all-zero probabilities"""
    gamma_f_pos, gamma_d_pos = _normalize(wffa.omega_f_pos, wffa.omega_d_pos)
    gamma_f_neg, gamma_d_neg = _normalize(wffa.omega_f_neg, wffa.omega_d_neg)
    return ProbabilisticNfa(
        nfa=wffa.nfa,
        gamma_f_pos=gamma_f_pos,
        gamma_f_neg=gamma_f_neg,
        gamma_d_pos=gamma_d_pos,
        gamma_d_neg=gamma_d_neg,
    )


class FrequencyService:
    """Frequency counting and normalisation under one weight assignment"""

    def __init__(self, weights: WeightConfig = None, path_budget: Optional[int] = None):
        self.weights = weights if weights is not None else WeightConfig()
        self.path_budget = path_budget

    def frequencies(self, nfa: Nfa3, sample: Sample) -> FrequencyTables:
        return compute_frequencies(nfa, sample, self.path_budget)

    def transform(self, nfa: Nfa3, sample: Sample, tables: FrequencyTables = None) -> ProbabilisticNfa:
        """Probabilistic automaton of `nfa`; `tables` spares a recount when the weights vary over one sample"""
        if tables is None:
            tables = self.frequencies(nfa, sample)
        wffa = build_wffa(nfa, sample, self.weights, tables)
        logging.debug("weights %s over %d states", wffa.weights.as_tuple(), nfa.k)
        return to_probabilistic(wffa)
