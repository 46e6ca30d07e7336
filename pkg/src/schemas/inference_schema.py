from enum import Enum
from typing import FrozenSet, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.schemas.automaton_schema import Nfa3, Sample
from src.schemas.encoding_schema import ModelKind
from src.schemas.solver_schema import SolveStatus
from src.schemas.splitting_schema import IlsConfig, SplitStrategy


class ModelVariant(BaseModel):
    """Splitting strategy plus encoding kind, named like P_k or ILS-S_k+2."""

    model_config = ConfigDict(frozen=True)

    strategy: SplitStrategy
    kind: ModelKind = ModelKind.K

    @classmethod
    def parse(cls, name: str) -> "ModelVariant":
        base, sep, suffix = name.strip().rpartition("_")
        if not sep or suffix not in ("k", "k+2"):
            raise ValueError(f"unknown model variant '{name}'")
        kind = ModelKind.KPLUS2 if suffix == "k+2" else ModelKind.K
        return cls(strategy=SplitStrategy(base), kind=kind)

    @property
    def name(self) -> str:
        return f"{self.strategy.value}_{'k+2' if self.kind == ModelKind.KPLUS2 else 'k'}"


class InferenceRequest(BaseModel):
    sample: Sample
    model: ModelVariant
    k: Optional[int] = Field(None, ge=1)
    k_max: Optional[int] = Field(None, ge=1)
    timeout: float = Field(900.0, gt=0)
    ils: IlsConfig = IlsConfig()

    @model_validator(mode="after")
    def check_k(self):
        if (self.k is None) == (self.k_max is None):
            raise ValueError("give exactly one of k and k_max")
        return self


class InferenceStatus(str, Enum):
    FOUND = "found"
    INFEASIBLE = "infeasible"
    TIMED_OUT = "timed_out"


class AttemptStats(BaseModel):
    """One solver call, also the JSON-lines statistics record"""
    model: str
    k: int
    status: SolveStatus
    seconds: float
    clauses: int
    variables: int


class KPlus2Solution(BaseModel):
    """Decoded (k+2)-state automaton with its possible-final-state readout"""

    model_config = ConfigDict(frozen=True)

    nfa: Nfa3
    astar: FrozenSet[int]
    rstar: FrozenSet[int]


class InferenceResult(BaseModel):
    status: InferenceStatus
    model: str
    # k-state automaton, reduced for (k+2) models
    nfa: Optional[Nfa3] = None
    # automaton the classification stage consumes; the (k+2) one for KPlus2
    classification_nfa: Optional[Nfa3] = None
    k_used: Optional[int] = None
    attempts: List[AttemptStats] = Field(default_factory=list)

    @property
    def seconds(self) -> float:
        return sum(a.seconds for a in self.attempts)
