import re
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.schemas.automaton_schema import Word


class CorpusEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    positive: bool
    word: Word


class LabeledCorpus(BaseModel):
    """Labeled words in file order over an interned alphabet."""

    model_config = ConfigDict(frozen=True)

    alphabet: Tuple[str, ...]
    entries: Tuple[CorpusEntry, ...] = ()

    @property
    def positives(self) -> Tuple[Word, ...]:
        return tuple(e.word for e in self.entries if e.positive)

    @property
    def negatives(self) -> Tuple[Word, ...]:
        return tuple(e.word for e in self.entries if not e.positive)

    def text_of(self, word: Word) -> str:
        return "".join(self.alphabet[s] for s in word)


def check_pattern(pattern: str) -> str:
    """The pattern must compile as a Python regular expression"""
    try:
        re.compile(pattern)
    except re.error as e:
        raise ValueError(f"invalid regular expression '{pattern}': {e}")
    return pattern


class RegexpBenchmarkSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    pattern: str = Field(..., min_length=1)
    total: int = Field(200, ge=2)
    min_len: int = Field(1, ge=1)
    max_len: int = Field(15, ge=1)
    seed: int = 0

    @field_validator("pattern")
    @classmethod
    def pattern_compiles(cls, value):
        return check_pattern(value)

    @model_validator(mode="after")
    def check_bounds(self):
        if self.total % 2:
            raise ValueError("total must be even")
        if self.min_len > self.max_len:
            raise ValueError("min_len must not exceed max_len")
        return self


# Benchmarks shipped with the toolkit
PRESETS = {
    "regexp1": "(0|11)(001|000|10)*0",
    "regexp2": "[0-9][0-4][5-9](024|135|(98|87))*(0|6)",
}
