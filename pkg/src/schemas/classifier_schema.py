from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ClassifierKind(str, Enum):
    MM = "mm"
    MA = "ma"
    SM = "sm"
    SA = "sa"


class Decision(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class TieRule(str, Enum):
    POS = "pos"
    NEG = "neg"


class ScorePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    positive: float = Field(0.0, ge=0, le=1)
    negative: float = Field(0.0, ge=0, le=1)
    path_count: int = Field(0, ge=0)

    @model_validator(mode="after")
    def check_empty(self):
        if self.path_count == 0 and (self.positive or self.negative):
            raise ValueError("a word without paths scores (0, 0)")
        return self
