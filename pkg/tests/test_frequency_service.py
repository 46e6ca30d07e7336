import random

import numpy as np
import pytest
from pydantic import ValidationError

from src.schemas.frequency_schema import NORMALIZATION_TOLERANCE, WEIGHT_NAMES, WeightConfig
from src.services.frequency_service import FrequencyService, build_wffa, compute_frequencies, occ, to_probabilistic
from src.utils.exceptions import PathBudgetExceeded
from tests.conftest import make_nfa, make_sample
from tests.oracles import path_frequencies


def _random_nfa(rng, k, alphabet="ab"):
    transitions = [
        (i, c, j) for i in range(1, k + 1) for c in alphabet for j in range(1, k + 1) if rng.random() < 0.4
    ]
    sorts = [rng.choice("arq") for _ in range(k)]
    return make_nfa(
        k,
        alphabet,
        transitions,
        accepting={q for q, c in enumerate(sorts, 1) if c == "a"},
        rejecting={q for q, c in enumerate(sorts, 1) if c == "r"},
    )


def test_occ():
    assert occ((), (1, 0, 1)) == 0
    assert occ(((1, 0, 1), (1, 0, 1)), (1, 0, 1)) == 2
    assert occ(((1, 0, 2), (2, 1, 1)), (1, 1, 2)) == 0


def test_single_accepting_path():
    nfa = make_nfa(2, "a", [(1, "a", 2)], accepting={2})
    tables = compute_frequencies(nfa, make_sample(["a"], []))
    assert tables.f_pp.tolist() == [0, 1]
    assert tables.d_pp[0, 0, 1] == 1
    for name in WEIGHT_NAMES:
        if name not in ("f_pp", "d_pp"):
            assert not getattr(tables, name).any()


def test_looping_word_counts_every_path():
    nfa = make_nfa(2, "a", [(1, "a", 1), (1, "a", 2)], accepting={2})
    tables = compute_frequencies(nfa, make_sample(["aa"], []))
    assert tables.f_pp.tolist() == [0, 1]
    assert tables.f_pq.tolist() == [1, 0]
    assert tables.d_pp[0, 0, 0] == 1
    assert tables.d_pp[0, 0, 1] == 1
    assert tables.d_pq[0, 0, 0] == 2


@pytest.mark.parametrize("seed", range(30))
def test_dynamic_programming_matches_path_enumeration(seed):
    rng = random.Random(seed)
    nfa = _random_nfa(rng, rng.randint(1, 4))
    words = {"".join(rng.choice("ab") for _ in range(rng.randint(1, 5))) for _ in range(8)}
    words = sorted(words)
    cut = rng.randint(0, len(words))
    sample = make_sample(words[:cut], words[cut:], alphabet="ab")
    tables = compute_frequencies(nfa, sample)
    expected = path_frequencies(nfa, sample)
    for name in WEIGHT_NAMES:
        assert np.array_equal(getattr(tables, name), expected[name]), name


def test_unknown_symbols_count_nothing():
    nfa = make_nfa(1, "a", [(1, "a", 1)], accepting={1})
    tables = compute_frequencies(nfa, make_sample(["ab"], [], alphabet="ab"))
    assert not tables.f_pp.any() and not tables.d_pp.any()


def test_path_budget():
    nfa = make_nfa(2, "a", [(1, "a", 1), (1, "a", 2), (2, "a", 1), (2, "a", 2)])
    sample = make_sample(["a" * 10], [])
    with pytest.raises(PathBudgetExceeded):
        compute_frequencies(nfa, sample, budget=100)
    assert compute_frequencies(nfa, sample, budget=2 ** 10).f_pq.sum() == 2 ** 10
    with pytest.raises(PathBudgetExceeded):
        FrequencyService(path_budget=100).transform(nfa, sample)


def test_weights_select_tables():
    nfa = make_nfa(2, "ab", [(1, "a", 2), (1, "b", 1)], accepting={2}, rejecting={1})
    sample = make_sample(["a"], ["b"])
    positives_only = WeightConfig(f_nn=0, f_nq=0, d_nn=0, d_nq=0)
    wffa = build_wffa(nfa, sample, positives_only)
    assert not wffa.omega_f_neg.any() and not wffa.omega_d_neg.any()
    assert wffa.omega_f_pos.tolist() == [0, 1]

    everything = build_wffa(nfa, sample, WeightConfig())
    assert everything.omega_f_neg.tolist() == [1, 0]


def test_service_transform_matches_pipeline():
    nfa = make_nfa(2, "ab", [(1, "a", 2), (1, "b", 1), (2, "b", 1)], accepting={2}, rejecting={1})
    sample = make_sample(["a", "ba"], ["b", "ab"])
    weights = WeightConfig(f_nn=0, d_nq=0.5)
    expected = to_probabilistic(build_wffa(nfa, sample, weights))
    service = FrequencyService(weights)
    for pnfa in (service.transform(nfa, sample), service.transform(nfa, None, service.frequencies(nfa, sample))):
        for name in ("gamma_f_pos", "gamma_f_neg", "gamma_d_pos", "gamma_d_neg"):
            assert np.array_equal(getattr(pnfa, name), getattr(expected, name))
    assert FrequencyService().weights == WeightConfig()


def test_weight_masks():
    assert WeightConfig.from_mask(0).as_tuple() == (0.0,) * 8
    assert WeightConfig.from_mask(255).as_tuple() == (1.0,) * 8
    assert WeightConfig.from_mask(0b10000001).as_tuple() == (1.0, 0, 0, 0, 0, 0, 0, 1.0)
    with pytest.raises(ValueError):
        WeightConfig.from_mask(256)


@pytest.mark.parametrize("value", [float("inf"), float("nan"), -1.0])
def test_weights_must_be_finite_and_non_negative(value):
    with pytest.raises(ValidationError):
        WeightConfig(d_pq=value)


def test_normalisation_example():
    # one accepting stop and three uses of the only outgoing transition
    nfa = make_nfa(2, "a", [(1, "a", 2)], accepting={1, 2})
    sample = make_sample(["a", "aa"], [], alphabet="a")
    tables = compute_frequencies(nfa, sample)
    tables = tables.model_copy(update={"f_pp": np.array([1.0, 0.0]), "d_pp": np.array([[[0.0, 3.0], [0.0, 0.0]]])})
    pnfa = to_probabilistic(build_wffa(nfa, sample, WeightConfig(), tables))
    assert pnfa.gamma_f_pos[0] == pytest.approx(0.25)
    assert pnfa.gamma_d_pos[0, 0, 1] == pytest.approx(0.75)


def test_states_without_mass_get_zero():
    nfa = make_nfa(3, "a", [(1, "a", 2)], accepting={2})
    pnfa = to_probabilistic(build_wffa(nfa, make_sample(["a"], []), WeightConfig()))
    assert pnfa.gamma_f_pos[2] == 0
    assert not pnfa.gamma_f_neg.any() and not pnfa.gamma_d_neg.any()


@pytest.mark.parametrize("seed", range(10))
def test_every_weight_mask_normalises(seed):
    rng = random.Random(100 + seed)
    nfa = _random_nfa(rng, 3)
    sample = make_sample(["ab", "a", "bba"], ["b", "ba", "aab"])
    tables = compute_frequencies(nfa, sample)
    for mask in range(256):
        pnfa = to_probabilistic(build_wffa(nfa, sample, WeightConfig.from_mask(mask), tables))
        for positive in (True, False):
            mass = pnfa.row_mass(positive)
            live = mass > 0
            assert np.all(np.abs(mass[live] - 1) <= NORMALIZATION_TOLERANCE)
