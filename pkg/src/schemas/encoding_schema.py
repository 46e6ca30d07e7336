from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Tuple

from pydantic import BaseModel, Field

from src.schemas.automaton_schema import Sample
from src.schemas.splitting_schema import Splitting


class ModelKind(str, Enum):
    K = "K"
    KPLUS2 = "KPlus2"


class VarMap(BaseModel):
    """Bijection between semantic keys and dense variable ids (from 1).

    Keys are tuples whose first item is the kind: ("a", i), ("r", i),
    ("astar", i), ("rstar", i), ("delta", s, i, j), ("prefix", x, i),
    ("suffix", v, i, j) and ("end", w, i).
    """

    ids: Dict[Tuple, int] = Field(default_factory=dict)
    keys: List[Tuple] = Field(default_factory=list)

    def var(self, *key) -> int:
        """Id of `key`, allocating a fresh one on first use"""
        vid = self.ids.get(key)
        if vid is None:
            self.keys.append(key)
            vid = len(self.keys)
            self.ids[key] = vid
        return vid

    def get(self, *key) -> Optional[int]:
        return self.ids.get(key)

    def count(self, kind: str) -> int:
        return sum(1 for key in self.keys if key[0] == kind)

    @property
    def num_vars(self) -> int:
        return len(self.keys)


class Clause(NamedTuple):
    family: str
    literals: Tuple[int, ...]


class Gate(NamedTuple):
    """head <-> OR over terms, each term a conjunction of literals"""
    family: str
    head: int
    terms: Tuple[Tuple[int, ...], ...]


class Disjunction(NamedTuple):
    """OR over terms must hold, each term a conjunction of literals"""
    family: str
    terms: Tuple[Tuple[int, ...], ...]


class Formula(BaseModel):
    clauses: List[Clause] = Field(default_factory=list)
    gates: List[Gate] = Field(default_factory=list)
    disjunctions: List[Disjunction] = Field(default_factory=list)

    def add_clause(self, family: str, *literals: int) -> None:
        self.clauses.append(Clause(family, tuple(literals)))

    def add_gate(self, family: str, head: int, terms) -> None:
        self.gates.append(Gate(family, head, tuple(tuple(t) for t in terms)))

    def add_disjunction(self, family: str, terms) -> None:
        self.disjunctions.append(Disjunction(family, tuple(tuple(t) for t in terms)))

    def max_literal(self) -> int:
        top = 0
        for c in self.clauses:
            top = max([top, *map(abs, c.literals)])
        for g in self.gates:
            top = max([top, abs(g.head), *(abs(x) for t in g.terms for x in t)])
        for d in self.disjunctions:
            top = max([top, *(abs(x) for t in d.terms for x in t)])
        return top


class EncodingArtifacts(BaseModel):
    formula: Formula
    varmap: VarMap
    model_kind: ModelKind
    k: int
    sample: Sample
    splitting: Splitting

    @property
    def accept_state(self) -> int:
        """Fixed accepting final of the (k+2) layout"""
        return self.k + 1

    @property
    def reject_state(self) -> int:
        return self.k + 2

    @property
    def num_states(self) -> int:
        return self.k + 2 if self.model_kind == ModelKind.KPLUS2 else self.k
