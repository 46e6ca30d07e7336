from typing import List, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.schemas.classifier_schema import ClassifierKind, TieRule
from src.schemas.corpus_schema import check_pattern
from src.schemas.inference_schema import ModelVariant


class ConfusionCounts(BaseModel):
    model_config = ConfigDict(frozen=True)

    tp: int = Field(0, ge=0)
    tn: int = Field(0, ge=0)
    fp: int = Field(0, ge=0)
    fn: int = Field(0, ge=0)

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


class ExperimentPlan(BaseModel):
    name: Optional[str] = None
    corpora: List[str] = Field(default_factory=list)
    pattern: Optional[str] = None
    total: int = Field(200, ge=2)
    min_len: int = Field(1, ge=1)
    max_len: int = Field(15, ge=1)
    fractions: List[float] = Field(default_factory=lambda: [0.1, 0.3, 0.5])
    models: List[ModelVariant]
    classifiers: List[ClassifierKind] = Field(default_factory=lambda: list(ClassifierKind))
    weights: List[int] = Field(default_factory=lambda: list(range(256)))
    k_max: int = Field(10, ge=1)
    timeout: float = Field(900.0, gt=0)
    seed: int = 0
    tie: TieRule = TieRule.NEG
    ils_iterations: int = Field(500, ge=1)

    @field_validator("pattern")
    @classmethod
    def pattern_compiles(cls, value):
        return value if value is None else check_pattern(value)

    @field_validator("fractions")
    @classmethod
    def check_fractions(cls, value):
        for fraction in value:
            if not 0 < fraction < 1:
                raise ValueError(f"fraction {fraction} outside (0, 1)")
        return value

    @field_validator("weights")
    @classmethod
    def check_masks(cls, value):
        for mask in value:
            if not 0 <= mask < 256:
                raise ValueError(f"weight mask {mask} outside 0..255")
        return value

    @model_validator(mode="after")
    def check_lists(self):
        if not self.corpora and not self.pattern:
            raise ValueError("a plan needs corpora or a pattern")
        for field in ("fractions", "models", "classifiers", "weights"):
            if not getattr(self, field):
                raise ValueError(f"'{field}' must not be empty")
        return self

    @property
    def dataset_name(self) -> str:
        return self.name or "regexp"


class InferenceOutcome(BaseModel):
    """One (dataset, split, model) inference, failed ones included"""
    dataset: str
    split: float
    model: str
    status: str
    k_used: Optional[int] = None
    transitions: Optional[int] = None
    seconds: float = 0.0
    clauses: int = 0
    variables: int = 0


class ExperimentReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    cells: pd.DataFrame
    inferences: List[InferenceOutcome]
    by_model_dataset: pd.DataFrame
    by_model_classifier: pd.DataFrame
    by_model_split: pd.DataFrame

    @property
    def failed(self) -> List[Tuple[str, float, str]]:
        return [(o.dataset, o.split, o.model) for o in self.inferences if o.status != "found"]
