from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class Cnf(BaseModel):
    """Clauses over variables 1..num_vars; ids above num_original are auxiliaries."""

    num_vars: int = Field(..., ge=0)
    clauses: List[Tuple[int, ...]] = Field(default_factory=list)
    num_original: Optional[int] = None

    @model_validator(mode="after")
    def check_clauses(self):
        for clause in self.clauses:
            if not clause:
                raise ValueError("empty clause")
            seen = set(clause)
            if len(seen) != len(clause):
                raise ValueError(f"duplicate literal in clause {clause}")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")
                if -lit in seen:
                    raise ValueError(f"tautological clause {clause}")
        if self.num_original is None:
            self.num_original = self.num_vars
        if not 0 <= self.num_original <= self.num_vars:
            raise ValueError(f"num_original {self.num_original} outside 0..{self.num_vars}")
        return self


class SolveStatus(str, Enum):
    SAT = "sat"
    UNSAT = "unsat"
    TIMEOUT = "timeout"


class SolveStats(BaseModel):
    backend: str
    seconds: float = 0.0
    clauses: int = 0
    variables: int = 0
    conflicts: int = 0
    decisions: int = 0


class SolveOutcome(BaseModel):
    status: SolveStatus
    # assignment[v - 1] is the value of original variable v
    assignment: Optional[Tuple[bool, ...]] = None
    stats: SolveStats

    def value(self, var: int) -> bool:
        return self.assignment[var - 1]
