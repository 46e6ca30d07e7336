from typing import List, Optional, Sequence

import numpy as np

from src.schemas.automaton_schema import Word
from src.schemas.classifier_schema import ClassifierKind, Decision, ScorePair, TieRule
from src.schemas.frequency_schema import ProbabilisticNfa
from src.utils.exceptions import PathBudgetExceeded


def _path_counts(structure: np.ndarray, word: Word):
    """Forward path counts per prefix length, as floats"""
    k = structure.shape[1]
    forward = [np.zeros(k)]
    forward[0][0] = 1.0
    for s in word:
        forward.append(forward[-1] @ structure[s])
    return forward


def _product_score(structure, gamma_f, gamma_d, word, forward, kind) -> float:
    k = structure.shape[1]
    value = np.zeros(k)
    value[0] = 1.0
    for s in word:
        if kind == ClassifierKind.MM:
            value = (value[:, None] * gamma_d[s]).max(axis=0)
        else:
            value = value @ gamma_d[s]
    ends = value * gamma_f
    if kind == ClassifierKind.MM:
        return float(ends.max())
    return float(ends.sum() / forward[-1].sum())


def _sum_score(structure, gamma_f, gamma_d, word, forward, kind) -> float:
    m = len(word)
    reachable = forward[-1] > 0
    if kind == ClassifierKind.SM:
        k = structure.shape[1]
        best = np.full(k, -np.inf)
        best[0] = 0.0
        for s in word:
            candidates = best[:, None] + gamma_d[s]
            candidates[structure[s] == 0] = -np.inf
            best = candidates.max(axis=0)
        return float((best[reachable] + gamma_f[reachable]).max() / (m + 1))

    # total of per-path sums, via counts of continuations from each state
    backward = [np.ones(structure.shape[1])]
    for s in reversed(word):
        backward.append(structure[s] @ backward[-1])
    backward.reverse()
    total = float(forward[-1] @ gamma_f)
    for t, s in enumerate(word, 1):
        total += float(forward[t - 1] @ (structure[s] * gamma_d[s]) @ backward[t])
    return total / (forward[-1].sum() * (m + 1))


def _structure(pnfa: ProbabilisticNfa) -> np.ndarray:
    return pnfa.nfa.transition_tensor().astype(np.float64)


def _score(pnfa: ProbabilisticNfa, structure: np.ndarray, word: Word, kind: ClassifierKind, budget: Optional[int]) -> ScorePair:
    forward = _path_counts(structure, word)
    paths = int(round(forward[-1].sum()))
    if budget is not None and paths > budget:
        raise PathBudgetExceeded(f"{paths} physical paths exceed the budget of {budget}")
    if paths == 0:
        return ScorePair(positive=0.0, negative=0.0, path_count=0)
    scorer = _product_score if kind in (ClassifierKind.MM, ClassifierKind.MA) else _sum_score
    positive = scorer(structure, pnfa.gamma_f_pos, pnfa.gamma_d_pos, word, forward, kind)
    negative = scorer(structure, pnfa.gamma_f_neg, pnfa.gamma_d_neg, word, forward, kind)
    return ScorePair(positive=min(positive, 1.0), negative=min(negative, 1.0), path_count=paths)


def score(pnfa: ProbabilisticNfa, word: Word, kind: ClassifierKind, budget: Optional[int] = None) -> ScorePair:
    """Positive and negative scores of `word` over all its physical paths"""
    return _score(pnfa, _structure(pnfa), word, kind, budget)


def score_text(pnfa: ProbabilisticNfa, text: str, kind: ClassifierKind, budget: Optional[int] = None) -> ScorePair:
    """Score a string; unknown symbols mean no path"""
    word = pnfa.nfa.intern(text)
    if word is None:
        return ScorePair()
    return score(pnfa, word, kind, budget)


def decide(scores: ScorePair, tie: TieRule = TieRule.NEG) -> Decision:
    """The greater score wins"""
    if scores.positive > scores.negative:
        return Decision.POSITIVE
    if scores.negative > scores.positive:
        return Decision.NEGATIVE
    return Decision.POSITIVE if tie == TieRule.POS else Decision.NEGATIVE


class ClassifierService:
    """One scoring rule and tie rule applied to many words of one automaton"""

    def __init__(
        self,
        pnfa: ProbabilisticNfa,
        kind: ClassifierKind,
        tie: TieRule = TieRule.NEG,
        path_budget: Optional[int] = None,
    ):
        self.pnfa = pnfa
        self.kind = kind
        self.tie = tie
        self.path_budget = path_budget
        self._structure = _structure(pnfa)

    def scores(self, text: str) -> ScorePair:
        word = self.pnfa.nfa.intern(text)
        if word is None:
            return ScorePair()
        return _score(self.pnfa, self._structure, word, self.kind, self.path_budget)

    def classify(self, text: str) -> Decision:
        return decide(self.scores(text), self.tie)

    def classify_all(self, texts: Sequence[str]) -> List[Decision]:
        return [self.classify(text) for text in texts]
