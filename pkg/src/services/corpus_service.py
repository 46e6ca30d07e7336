import logging
import math
from fractions import Fraction
from typing import Iterable, Tuple

from src.schemas.automaton_schema import Sample, Word
from src.schemas.corpus_schema import CorpusEntry, LabeledCorpus
from src.utils.exceptions import ConflictError, DegenerateSplit, EmptyWordError, FormatError


def parse_corpus(text: str) -> LabeledCorpus:
    """Parse `+<TAB>word` / `-<TAB>word` lines, keeping file order"""
    labeled = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        label, sep, word = line.partition("\t")
        if not sep or label not in ("+", "-"):
            raise FormatError(f"line {n}: expected '+<TAB>word' or '-<TAB>word'")
        if not word:
            raise EmptyWordError(f"line {n}: the empty word cannot be labeled")
        if any(c.isspace() for c in word):
            raise FormatError(f"line {n}: whitespace inside word '{word}'")
        labeled.append((label == "+", word))
    return build_corpus(labeled)


def build_corpus(labeled: Iterable[Tuple[bool, str]]) -> LabeledCorpus:
    """Intern (label, text) pairs; duplicates collapse, conflicting labels fail"""
    labels = {}
    ordered = []
    for positive, word in labeled:
        if word in labels:
            if labels[word] != positive:
                raise ConflictError(f"word '{word}' is labeled both + and -")
            continue
        labels[word] = positive
        ordered.append((positive, word))
    alphabet = tuple(sorted({c for _, word in ordered for c in word}))
    index = {c: i for i, c in enumerate(alphabet)}
    entries = tuple(
        CorpusEntry(positive=positive, word=tuple(index[c] for c in word)) for positive, word in ordered
    )
    return LabeledCorpus(alphabet=alphabet, entries=entries)


def format_corpus(corpus: LabeledCorpus) -> str:
    return "".join(
        f"{'+' if e.positive else '-'}\t{corpus.text_of(e.word)}\n" for e in corpus.entries
    )


def _reintern(texts: Iterable[str], alphabet: Tuple[str, ...]) -> Tuple[Word, ...]:
    index = {c: i for i, c in enumerate(alphabet)}
    return tuple(tuple(index[c] for c in text) for text in texts)


def train_size(count: int, fraction: float) -> int:
    """Floor of fraction * count, computed on the decimal value of `fraction`"""
    return math.floor(Fraction(str(fraction)) * count)


def split_train_test(corpus: LabeledCorpus, fraction: float) -> Tuple[Sample, Sample]:
    """First fraction of each class trains, the rest tests.

    The training sample is re-interned over the symbols its words use; the
    test sample keeps the corpus alphabet.
    """
    if not 0 < fraction < 1:
        raise DegenerateSplit(f"fraction {fraction} outside (0, 1)")
    positives = [corpus.text_of(w) for w in corpus.positives]
    negatives = [corpus.text_of(w) for w in corpus.negatives]
    n_pos, n_neg = train_size(len(positives), fraction), train_size(len(negatives), fraction)

    sides = {
        "train positives": positives[:n_pos],
        "train negatives": negatives[:n_neg],
        "test positives": positives[n_pos:],
        "test negatives": negatives[n_neg:],
    }
    for side, words in sides.items():
        if not words:
            raise DegenerateSplit(
                f"{side} empty for fraction {fraction} of {len(positives)}+/{len(negatives)}-"
            )

    train_alphabet = tuple(sorted({c for w in positives[:n_pos] + negatives[:n_neg] for c in w}))
    train = Sample(
        alphabet=train_alphabet,
        positives=_reintern(positives[:n_pos], train_alphabet),
        negatives=_reintern(negatives[:n_neg], train_alphabet),
    )
    test = Sample(
        alphabet=corpus.alphabet,
        positives=_reintern(positives[n_pos:], corpus.alphabet),
        negatives=_reintern(negatives[n_neg:], corpus.alphabet),
    )
    logging.info(
        "split %.2f: train %d+/%d-, test %d+/%d-",
        fraction, len(train.positives), len(train.negatives), len(test.positives), len(test.negatives),
    )
    return train, test


def corpus_to_sample(corpus: LabeledCorpus) -> Sample:
    """The whole corpus as one sample"""
    return Sample(alphabet=corpus.alphabet, positives=corpus.positives, negatives=corpus.negatives)
