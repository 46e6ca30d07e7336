import pytest
from pydantic import ValidationError

from src.schemas.automaton_schema import Nfa3, Verdict
from src.services.automaton_service import classify_word_3sort, enumerate_paths, is_consistent, reachable_states
from src.utils.exceptions import PathBudgetExceeded
from tests.conftest import make_nfa, make_sample


def test_enumerate_paths_branches():
    nfa = make_nfa(2, "a", [(1, "a", 1), (1, "a", 2)])
    assert set(enumerate_paths(nfa, (0,))) == {((1, 0, 1),), ((1, 0, 2),)}


def test_empty_word_has_the_empty_path():
    nfa = make_nfa(1, "a", [])
    assert enumerate_paths(nfa, ()) == ((),)
    assert reachable_states(nfa, ()) == {1}


def test_no_transition_no_path():
    nfa = make_nfa(2, "ab", [(1, "b", 2)])
    assert enumerate_paths(nfa, (0,)) == ()


def test_path_count_grows_with_nondeterminism():
    nfa = make_nfa(2, "a", [(1, "a", 1), (1, "a", 2), (2, "a", 1), (2, "a", 2)])
    assert len(enumerate_paths(nfa, (0,) * 5)) == 2 ** 5


def test_path_budget_is_reported():
    nfa = make_nfa(2, "a", [(1, "a", 1), (1, "a", 2), (2, "a", 1), (2, "a", 2)])
    with pytest.raises(PathBudgetExceeded):
        enumerate_paths(nfa, (0,) * 12, budget=1000)


@pytest.mark.parametrize(
    "transitions, accepting, rejecting, word, expected",
    [
        ([(1, "a", 2)], {2}, set(), "a", Verdict.ACCEPTED),
        ([(1, "a", 2)], {2}, set(), "b", Verdict.INCONCLUSIVE),
        ([(1, "a", 2), (1, "a", 3)], {2}, {3}, "a", Verdict.BOTH),
        ([(1, "b", 3)], {2}, {3}, "b", Verdict.REJECTED),
        ([(1, "a", 1)], set(), set(), "aa", Verdict.INCONCLUSIVE),
    ],
)
def test_classify_word(transitions, accepting, rejecting, word, expected):
    nfa = make_nfa(3, "ab", transitions, accepting, rejecting)
    assert classify_word_3sort(nfa, nfa.intern(word)) == expected


def test_consistency():
    nfa = make_nfa(2, "ab", [(1, "a", 2)], accepting={2})
    assert is_consistent(nfa, make_sample(["a"], [], alphabet="ab"))
    assert not is_consistent(nfa, make_sample([], ["a"], alphabet="ab"))


def test_two_states_separate_a_from_b():
    nfa = make_nfa(2, "ab", [(1, "a", 2), (1, "b", 1)], accepting={2}, rejecting={1})
    assert is_consistent(nfa, make_sample(["a"], ["b"]))


def test_consistency_remaps_alphabets():
    # the sample knows only "b", interned as 0; the automaton has it as 1
    nfa = make_nfa(2, "ab", [(1, "b", 2)], accepting={2})
    assert is_consistent(nfa, make_sample(["b"], []))
    assert not is_consistent(nfa, make_sample(["c"], []))


def test_nfa_rejects_overlapping_finals():
    with pytest.raises(ValidationError):
        Nfa3(k=2, alphabet=("a",), accepting={1}, rejecting={1})


def test_nfa_rejects_out_of_range_transition():
    with pytest.raises(ValidationError):
        Nfa3(k=1, alphabet=("a",), transitions={(1, 0, 2)})


def test_nfa_equality_ignores_cached_tensor():
    first = make_nfa(2, "a", [(1, "a", 2)], accepting={2})
    second = make_nfa(2, "a", [(1, "a", 2)], accepting={2})
    first.transition_tensor()
    assert first == second
    assert len({first, second}) == 1
