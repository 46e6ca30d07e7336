from enum import Enum
from typing import Dict, FrozenSet, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

# A word is a tuple of dense symbol ids; () is the empty word.
Word = Tuple[int, ...]
# Transition triple (source, symbol id, target) with 1-based states.
Transition = Tuple[int, int, int]
PhysicalPath = Tuple[Transition, ...]


class Verdict(str, Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    BOTH = "both"
    INCONCLUSIVE = "inconclusive"


class Sample(BaseModel):
    """Positive and negative words over an interned alphabet."""

    model_config = ConfigDict(frozen=True)

    alphabet: Tuple[str, ...]
    positives: Tuple[Word, ...] = ()
    negatives: Tuple[Word, ...] = ()

    @model_validator(mode="after")
    def check_words(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet symbols must be distinct")
        n = len(self.alphabet)
        for word in self.positives + self.negatives:
            if not word:
                raise ValueError("the empty word cannot be a sample word")
            if any(s < 0 or s >= n for s in word):
                raise ValueError(f"word {word} uses a symbol outside the alphabet")
        if set(self.positives) & set(self.negatives):
            raise ValueError("a word cannot be both positive and negative")
        return self

    @property
    def words(self) -> Tuple[Word, ...]:
        return self.positives + self.negatives

    @property
    def size(self) -> int:
        return len(self.positives) + len(self.negatives)

    def decode(self, word: Word) -> str:
        return "".join(self.alphabet[s] for s in word)


class Nfa3(BaseModel):
    """3-sort NFA. States are 1..k, q1 is the only initial state."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    alphabet: Tuple[str, ...]
    accepting: FrozenSet[int] = frozenset()
    rejecting: FrozenSet[int] = frozenset()
    transitions: FrozenSet[Transition] = frozenset()

    _successors: Dict[Tuple[int, int], Tuple[int, ...]] = PrivateAttr(default_factory=dict)
    _tensor: Optional[np.ndarray] = PrivateAttr(default=None)

    @model_validator(mode="after")
    def check_structure(self):
        if self.accepting & self.rejecting:
            raise ValueError("accepting and rejecting states overlap")
        states = range(1, self.k + 1)
        for q in self.accepting | self.rejecting:
            if q not in states:
                raise ValueError(f"final state {q} outside 1..{self.k}")
        n = len(self.alphabet)
        for i, s, j in self.transitions:
            if i not in states or j not in states or not 0 <= s < n:
                raise ValueError(f"transition {(i, s, j)} out of range")
        return self

    def model_post_init(self, __context) -> None:
        successors: Dict[Tuple[int, int], list] = {}
        for i, s, j in self.transitions:
            successors.setdefault((i, s), []).append(j)
        self._successors = {key: tuple(sorted(v)) for key, v in successors.items()}

    def _key(self):
        return self.k, self.alphabet, self.accepting, self.rejecting, self.transitions

    # equality ignores the private caches
    def __eq__(self, other) -> bool:
        if not isinstance(other, Nfa3):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @property
    def sorted_transitions(self) -> Tuple[Transition, ...]:
        return tuple(sorted(self.transitions))

    def successors(self, state: int, symbol: int) -> Tuple[int, ...]:
        return self._successors.get((state, symbol), ())

    def transition_tensor(self) -> np.ndarray:
        """0/1 int64 tensor T[s, i, j] over 0-based states"""
        if self._tensor is None:
            tensor = np.zeros((len(self.alphabet), self.k, self.k), dtype=np.int64)
            for i, s, j in self.transitions:
                tensor[s, i - 1, j - 1] = 1
            tensor.setflags(write=False)
            self._tensor = tensor
        return self._tensor

    def intern(self, text: str) -> Optional[Word]:
        """Map a string onto symbol ids; None when a symbol is unknown"""
        index = {c: i for i, c in enumerate(self.alphabet)}
        try:
            return tuple(index[c] for c in text)
        except KeyError:
            return None

    def state_mask(self, states) -> np.ndarray:
        mask = np.zeros(self.k, dtype=bool)
        for q in states:
            mask[q - 1] = True
        return mask
