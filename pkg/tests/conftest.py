import numpy as np
import pytest

from src.schemas.automaton_schema import Nfa3, Sample
from src.schemas.frequency_schema import ProbabilisticNfa
from src.services.corpus_service import build_corpus, corpus_to_sample
from src.services.solver_service import SolverService


def make_sample(positives=(), negatives=(), alphabet=None) -> Sample:
    """Sample from plain strings; the alphabet defaults to the sorted symbols used"""
    if alphabet is None:
        alphabet = sorted({c for w in list(positives) + list(negatives) for c in w})
    index = {c: i for i, c in enumerate(alphabet)}
    return Sample(
        alphabet=tuple(alphabet),
        positives=tuple(tuple(index[c] for c in w) for w in positives),
        negatives=tuple(tuple(index[c] for c in w) for w in negatives),
    )


def make_nfa(k, alphabet, transitions, accepting=(), rejecting=()) -> Nfa3:
    """Nfa3 from (i, char, j) triples"""
    index = {c: i for i, c in enumerate(alphabet)}
    return Nfa3(
        k=k,
        alphabet=tuple(alphabet),
        accepting=frozenset(accepting),
        rejecting=frozenset(rejecting),
        transitions=frozenset((i, index[c], j) for i, c, j in transitions),
    )


@pytest.fixture
def solver():
    return SolverService("cdcl")


@pytest.fixture
def a_vs_b():
    """S+ = {a}, S- = {b}: needs two states"""
    return make_sample(["a"], ["b"])


@pytest.fixture
def small_corpus():
    return build_corpus([(True, "ab"), (True, "aab"), (False, "ba"), (False, "bb"), (True, "abab"), (False, "b")])


@pytest.fixture
def small_sample(small_corpus):
    return corpus_to_sample(small_corpus)


@pytest.fixture
def two_path_pnfa():
    """Six states, two physical paths for "abb": 1-a-2-b-3-b-4 and 1-a-2-b-5-b-6"""
    nfa = make_nfa(
        6,
        "ab",
        [(1, "a", 2), (2, "b", 3), (2, "b", 5), (3, "b", 4), (5, "b", 6), (4, "a", 4), (6, "a", 6)],
        accepting={4},
        rejecting={6},
    )
    a, b = 0, 1
    f_pos = np.array([0.8, 0.35, 0.65, 0.6, 0.45, 0.9])
    f_neg = np.array([0.4, 0.0, 0.35, 0.4, 0.5, 0.75])
    d_pos = np.zeros((2, 6, 6))
    d_neg = np.zeros((2, 6, 6))
    for (s, i, j), (p, q) in {
        (a, 1, 2): (0.2, 0.6),
        (b, 2, 3): (0.5, 0.5),
        (b, 2, 5): (0.15, 0.5),
        (b, 3, 4): (0.35, 0.65),
        (b, 5, 6): (0.55, 0.5),
        (a, 4, 4): (0.4, 0.6),
        (a, 6, 6): (0.1, 0.25),
    }.items():
        d_pos[s, i - 1, j - 1] = p
        d_neg[s, i - 1, j - 1] = q
    return ProbabilisticNfa(nfa=nfa, gamma_f_pos=f_pos, gamma_f_neg=f_neg, gamma_d_pos=d_pos, gamma_d_neg=d_neg)
