from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.schemas.automaton_schema import Nfa3

# Order of the eight weights; bit i of a grid mask switches weight i on.
WEIGHT_NAMES = ("f_pp", "f_pq", "f_nn", "f_nq", "d_pp", "d_pq", "d_nn", "d_nq")
NORMALIZATION_TOLERANCE = 1e-9


class WeightConfig(BaseModel):
    """ω weights: f/d = final state or transition, p/n = polarity, second
    letter = terminal sort (p accepting, n rejecting, q whatever)."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    f_pp: float = Field(1.0, ge=0)
    f_pq: float = Field(1.0, ge=0)
    f_nn: float = Field(1.0, ge=0)
    f_nq: float = Field(1.0, ge=0)
    d_pp: float = Field(1.0, ge=0)
    d_pq: float = Field(1.0, ge=0)
    d_nn: float = Field(1.0, ge=0)
    d_nq: float = Field(1.0, ge=0)

    @classmethod
    def from_mask(cls, mask: int) -> "WeightConfig":
        if not 0 <= mask < 256:
            raise ValueError(f"weight mask {mask} outside 0..255")
        return cls(**{name: float((mask >> bit) & 1) for bit, name in enumerate(WEIGHT_NAMES)})

    def as_tuple(self) -> Tuple[float, ...]:
        return tuple(getattr(self, name) for name in WEIGHT_NAMES)


class FrequencyTables(BaseModel):
    """φ counts. State tables have shape (k,), transition tables (n, k, k),
    all indexed by 0-based states."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    f_pp: np.ndarray
    f_pq: np.ndarray
    f_nn: np.ndarray
    f_nq: np.ndarray
    d_pp: np.ndarray
    d_pq: np.ndarray
    d_nn: np.ndarray
    d_nq: np.ndarray


class WeightedFrequencyNfa(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nfa: Nfa3
    weights: WeightConfig
    tables: FrequencyTables
    omega_f_pos: np.ndarray
    omega_f_neg: np.ndarray
    omega_d_pos: np.ndarray
    omega_d_neg: np.ndarray


class ProbabilisticNfa(BaseModel):
    """Γ tables over the structure of `nfa`; finals of shape (k,), transitions (n, k, k)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nfa: Nfa3
    gamma_f_pos: np.ndarray
    gamma_f_neg: np.ndarray
    gamma_d_pos: np.ndarray
    gamma_d_neg: np.ndarray

    @model_validator(mode="after")
    def check_tables(self):
        k, n = self.nfa.k, len(self.nfa.alphabet)
        structure = self.nfa.transition_tensor().astype(bool)
        for final, trans in ((self.gamma_f_pos, self.gamma_d_pos), (self.gamma_f_neg, self.gamma_d_neg)):
            if final.shape != (k,) or trans.shape != (n, k, k):
                raise ValueError("probability table shape does not match the automaton")
            if (final < 0).any() or (final > 1).any() or (trans < 0).any() or (trans > 1).any():
                raise ValueError("probabilities must lie in [0, 1]")
            if (trans[~structure] != 0).any():
                raise ValueError("probability mass on a missing transition")
            mass = final + trans.sum(axis=(0, 2))
            live = mass > 0
            if (np.abs(mass[live] - 1.0) > NORMALIZATION_TOLERANCE).any():
                raise ValueError("outgoing probabilities of a state do not sum to 1")
        return self

    def row_mass(self, positive: bool) -> np.ndarray:
        """Γ_f(q) + Σ Γ_δ(q, ·, ·) per state"""
        if positive:
            return self.gamma_f_pos + self.gamma_d_pos.sum(axis=(0, 2))
        return self.gamma_f_neg + self.gamma_d_neg.sum(axis=(0, 2))
