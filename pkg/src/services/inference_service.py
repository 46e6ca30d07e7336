import logging
from typing import FrozenSet, Optional, Tuple

from src.schemas.automaton_schema import Nfa3, Sample
from src.schemas.encoding_schema import ModelKind
from src.schemas.inference_schema import (
    AttemptStats,
    InferenceRequest,
    InferenceResult,
    InferenceStatus,
    ModelVariant,
)
from src.schemas.solver_schema import SolveStatus
from src.schemas.splitting_schema import IlsConfig
from src.services.automaton_service import is_consistent
from src.services.cnf_service import lower_artifacts
from src.services.encoding_service import encode
from src.services.solver_service import SolverService, decode_solution
from src.services.splitting_service import compute_splitting
from src.utils.exceptions import InconsistentModel, ReductionInconsistent


def reduce_k2_to_k(
    nfa_k2: Nfa3, astar: FrozenSet[int], rstar: FrozenSet[int], sample: Optional[Sample] = None
) -> Nfa3:
    """Drop the two sink finals and their incoming transitions; possible finals become finals"""
    k = nfa_k2.k - 2
    reduced = Nfa3(
        k=k,
        alphabet=nfa_k2.alphabet,
        accepting=astar,
        rejecting=rstar,
        transitions={(i, s, j) for i, s, j in nfa_k2.transitions if i <= k and j <= k},
    )
    if sample is not None and not is_consistent(reduced, sample):
        raise ReductionInconsistent(f"reduced {k}-state automaton is not consistent with its sample")
    return reduced


class InferenceService:
    """Splitting, encoding, solving and decoding for one model variant"""

    def __init__(self, solver: SolverService):
        self.solver = solver

    def attempt(
        self, sample: Sample, model: ModelVariant, k: int, timeout: float, ils: IlsConfig = IlsConfig()
    ) -> Tuple[AttemptStats, Optional[Nfa3], Optional[Nfa3]]:
        """One solver call at a fixed k: (stats, k-state nfa, classification nfa)"""
        splitting = compute_splitting(model.strategy, sample, k, ils)
        artifacts = encode(sample, splitting, k, model.kind)
        cnf = lower_artifacts(artifacts)
        outcome = self.solver.solve(cnf, timeout)
        stats = AttemptStats(
            model=model.name,
            k=k,
            status=outcome.status,
            seconds=outcome.stats.seconds,
            clauses=outcome.stats.clauses,
            variables=outcome.stats.variables,
        )
        logging.debug("%s at k=%d: %s", model.name, k, outcome.status.value)
        if outcome.status != SolveStatus.SAT:
            return stats, None, None

        decoded, kplus2 = decode_solution(outcome, artifacts)
        if not is_consistent(decoded, sample):
            raise InconsistentModel(f"{model.name} at k={k} decoded an automaton inconsistent with the sample")
        if model.kind == ModelKind.KPLUS2:
            reduced = reduce_k2_to_k(kplus2.nfa, kplus2.astar, kplus2.rstar, sample)
            return stats, reduced, decoded
        return stats, decoded, decoded

    def infer(self, request: InferenceRequest) -> InferenceResult:
        if request.k is None:
            return self.find_min_k(request.sample, request.model, request.k_max, request.timeout, request.ils)
        stats, nfa, raw = self.attempt(request.sample, request.model, request.k, request.timeout, request.ils)
        result = InferenceResult(status=_status(stats.status), model=request.model.name, attempts=[stats])
        if nfa is not None:
            result.nfa, result.classification_nfa, result.k_used = nfa, raw, request.k
        logging.info("%s with k=%d: %s", request.model.name, request.k, result.status.value)
        return result

    def find_min_k(
        self, sample: Sample, model: ModelVariant, k_max: int, timeout: float, ils: IlsConfig = IlsConfig()
    ) -> InferenceResult:
        """Smallest k in 1..k_max with a consistent automaton.

        Stops at the first timeout, since a larger k cannot be called minimal then.
        """
        result = InferenceResult(status=InferenceStatus.INFEASIBLE, model=model.name)
        for k in range(1, k_max + 1):
            stats, nfa, raw = self.attempt(sample, model, k, timeout, ils)
            result.attempts.append(stats)
            if stats.status == SolveStatus.TIMEOUT:
                result.status = InferenceStatus.TIMED_OUT
                break
            if nfa is not None:
                result.status = InferenceStatus.FOUND
                result.nfa, result.classification_nfa, result.k_used = nfa, raw, k
                break
        logging.info(
            "%s: %s after %d attempts (k_used=%s, %.2fs)",
            model.name, result.status.value, len(result.attempts), result.k_used, result.seconds,
        )
        return result


def _status(status: SolveStatus) -> InferenceStatus:
    return {
        SolveStatus.SAT: InferenceStatus.FOUND,
        SolveStatus.UNSAT: InferenceStatus.INFEASIBLE,
        SolveStatus.TIMEOUT: InferenceStatus.TIMED_OUT,
    }[status]
