import pytest

from src.repository.corpus_repository import CorpusRepository
from src.services.corpus_service import (
    build_corpus,
    corpus_to_sample,
    format_corpus,
    parse_corpus,
    split_train_test,
    train_size,
)
from src.utils.exceptions import ConflictError, DegenerateSplit, EmptyWordError, FormatError

# whole-subset sizes of five reference corpora and their train sizes at 10 %, 30 % and 50 %
TRAIN_SIZES = [
    ((79, 121), [(7, 12), (23, 36), (39, 60)]),
    ((79, 36), [(7, 3), (23, 10), (39, 18)]),
    ((204, 66), [(20, 6), (61, 19), (102, 33)]),
    ((32, 15), [(3, 1), (9, 4), (16, 7)]),
    ((92, 22), [(9, 2), (27, 6), (46, 11)]),
]


def _corpus(n_pos, n_neg):
    # distinct words over a two-letter alphabet, positives start with a
    return build_corpus(
        [(True, "a" + format(i, "b")) for i in range(n_pos)] + [(False, "b" + format(i, "b")) for i in range(n_neg)]
    )


def test_parse_corpus():
    corpus = parse_corpus("+\tab\n-\tbb\n")
    assert corpus.alphabet == ("a", "b")
    assert [corpus.text_of(w) for w in corpus.positives] == ["ab"]
    assert [corpus.text_of(w) for w in corpus.negatives] == ["bb"]


def test_duplicates_collapse():
    corpus = parse_corpus("+\tab\n+\tab\n")
    assert len(corpus.entries) == 1


def test_conflicting_labels():
    with pytest.raises(ConflictError):
        parse_corpus("+\tab\n-\tab\n")


@pytest.mark.parametrize("text", ["ab\n", "*\tab\n", "+ ab\n", "+\ta b\n"])
def test_malformed_lines(text):
    with pytest.raises(FormatError):
        parse_corpus(text)


def test_empty_word():
    with pytest.raises(EmptyWordError):
        parse_corpus("+\t\n")


def test_blank_lines_and_crlf_are_tolerated():
    corpus = parse_corpus("+\tab\r\n\r\n-\tb\r\n")
    assert len(corpus.entries) == 2


def test_format_keeps_file_order():
    text = "-\tbb\n+\tab\n+\ta\n"
    assert format_corpus(parse_corpus(text)) == text


@pytest.mark.parametrize("sizes, expected", TRAIN_SIZES)
def test_train_sizes_match_the_benchmark_table(sizes, expected):
    corpus = _corpus(*sizes)
    for fraction, (n_pos, n_neg) in zip((0.1, 0.3, 0.5), expected):
        train, test = split_train_test(corpus, fraction)
        assert (len(train.positives), len(train.negatives)) == (n_pos, n_neg)
        assert len(test.positives) == sizes[0] - n_pos
        assert len(test.negatives) == sizes[1] - n_neg


def test_train_size_uses_decimal_fraction():
    # 0.3 * 10 is 2.9999999999999996 in binary floating point
    assert train_size(10, 0.3) == 3


def test_half_split_of_two_plus_two():
    train, test = split_train_test(_corpus(2, 2), 0.5)
    assert (len(train.positives), len(train.negatives)) == (1, 1)
    assert (len(test.positives), len(test.negatives)) == (1, 1)


def test_train_takes_the_first_words():
    corpus = build_corpus([(True, "a"), (False, "b"), (True, "aa"), (False, "bb"), (True, "aaa"), (False, "bbb")])
    train, test = split_train_test(corpus, 0.5)
    assert [train.decode(w) for w in train.positives] == ["a"]
    assert [test.decode(w) for w in test.negatives] == ["bb", "bbb"]


def test_train_alphabet_covers_only_training_symbols():
    corpus = build_corpus([(True, "a"), (False, "b"), (True, "ac"), (False, "bc")])
    train, test = split_train_test(corpus, 0.5)
    assert train.alphabet == ("a", "b")
    assert test.alphabet == ("a", "b", "c")


@pytest.mark.parametrize("fraction", [0.0, 1.0, 0.1])
def test_degenerate_split(fraction):
    with pytest.raises(DegenerateSplit):
        split_train_test(_corpus(3, 3), fraction)


def test_corpus_to_sample(small_corpus):
    sample = corpus_to_sample(small_corpus)
    assert sample.size == 6
    assert sample.alphabet == small_corpus.alphabet


def test_repository(tmp_path):
    repository = CorpusRepository()
    corpus = parse_corpus("+\tab\n-\tba\n")
    path = repository.save_corpus(tmp_path / "c.txt", corpus)
    assert repository.load_corpus(path) == corpus
    (tmp_path / "words.txt").write_text("ab\n\n ba \n", encoding="utf-8")
    assert repository.load_words(tmp_path / "words.txt") == ["ab", "ba"]
