from enum import Enum
from typing import Dict, FrozenSet, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.schemas.automaton_schema import Word


class SplitStrategy(str, Enum):
    P = "P"
    S = "S"
    PSTAR = "Pstar"
    SSTAR = "Sstar"
    ILS_RAND = "ILS-rand"
    ILS_P = "ILS-P"
    ILS_S = "ILS-S"


class IlsInit(str, Enum):
    RANDOM = "random"
    BEST_PREFIX = "best-prefix"
    BEST_SUFFIX = "best-suffix"


class IlsConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    init: IlsInit = IlsInit.RANDOM
    max_iterations: int = Field(500, ge=1)
    # None means ceil(|S| / 10)
    perturbation_strength: Optional[int] = Field(None, ge=1)
    seed: int = 0


class Splitting(BaseModel):
    """Split point per word: word w is cut into w[:c] and w[c:]."""

    model_config = ConfigDict(frozen=True)

    cuts: Dict[Word, int]

    @model_validator(mode="after")
    def check_cuts(self):
        for word, c in self.cuts.items():
            if not 0 <= c <= len(word):
                raise ValueError(f"cut {c} outside word of length {len(word)}")
        return self

    def split(self, word: Word) -> Tuple[Word, Word]:
        c = self.cuts[word]
        return word[:c], word[c:]

    def covers(self, words) -> bool:
        return all(w in self.cuts for w in words)

    @property
    def used_prefixes(self) -> FrozenSet[Word]:
        """S_u, the empty word included when some split has u = λ"""
        return frozenset(w[:c] for w, c in self.cuts.items())

    @property
    def used_suffixes(self) -> FrozenSet[Word]:
        return frozenset(w[c:] for w, c in self.cuts.items())
