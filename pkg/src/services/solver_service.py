import logging
import os
import shlex
import subprocess
import tempfile
import time
from typing import Optional, Tuple

from src.schemas.automaton_schema import Nfa3
from src.schemas.encoding_schema import EncodingArtifacts, ModelKind
from src.schemas.inference_schema import KPlus2Solution
from src.schemas.solver_schema import Cnf, SolveOutcome, SolveStats, SolveStatus
from src.services.cdcl_solver import CdclSolver
from src.services.cnf_service import emit_dimacs
from src.utils.exceptions import BackendFailure, InconsistentModel

BACKENDS = ("cdcl", "external")


class SolverService:
    """Runs a CNF through the embedded CDCL engine or an external DIMACS solver"""

    def __init__(self, backend: str = "cdcl", solver_path: Optional[str] = None, solver_args: str = ""):
        if backend not in BACKENDS:
            raise ValueError(f"unknown solver backend '{backend}'")
        if backend == "external" and not solver_path:
            raise BackendFailure("external backend selected but no solver path configured")
        self.backend = backend
        self.solver_path = solver_path
        self.solver_args = shlex.split(solver_args or "")

    def solve(self, cnf: Cnf, timeout: float) -> SolveOutcome:
        if timeout <= 0:
            raise ValueError("timeout must be positive")
        started = time.monotonic()
        if self.backend == "cdcl":
            status, model, conflicts, decisions = self._solve_embedded(cnf, timeout)
        else:
            status, model = self._solve_external(cnf, timeout)
            conflicts = decisions = 0
        stats = SolveStats(
            backend=self.backend,
            seconds=time.monotonic() - started,
            clauses=len(cnf.clauses),
            variables=cnf.num_vars,
            conflicts=conflicts,
            decisions=decisions,
        )
        assignment = tuple(model[: cnf.num_original]) if status == SolveStatus.SAT else None
        logging.info("%s backend: %s in %.3fs", self.backend, status.value, stats.seconds)
        return SolveOutcome(status=status, assignment=assignment, stats=stats)

    def _solve_embedded(self, cnf: Cnf, timeout: float):
        engine = CdclSolver(cnf.num_vars, cnf.clauses, timeout=timeout)
        result = engine.solve()
        if result is None:
            return SolveStatus.TIMEOUT, None, engine.conflicts, engine.decisions
        if result:
            return SolveStatus.SAT, engine.model(), engine.conflicts, engine.decisions
        return SolveStatus.UNSAT, None, engine.conflicts, engine.decisions

    def _solve_external(self, cnf: Cnf, timeout: float):
        handle, path = tempfile.mkstemp(suffix=".cnf")
        try:
            with os.fdopen(handle, "w") as f:
                f.write(emit_dimacs(cnf))
            command = [self.solver_path, *self.solver_args, path]
            logging.debug("running %s", " ".join(command))
            try:
                completed = subprocess.run(command, capture_output=True, text=True, timeout=timeout)
            except subprocess.TimeoutExpired:
                return SolveStatus.TIMEOUT, None
            except OSError as e:
                raise BackendFailure(f"cannot run external solver: {e}")
        finally:
            os.unlink(path)
        return parse_solver_output(completed.stdout, cnf.num_vars)


def parse_solver_output(text: str, num_vars: int) -> Tuple[SolveStatus, Optional[list]]:
    """Read the `s` status line and the `v` model lines of a competition-format solver"""
    status = None
    model = [False] * num_vars
    terminated = False
    for line in text.splitlines():
        fields = line.split()
        if not fields:
            continue
        if fields[0] == "s":
            verdict = " ".join(fields[1:])
            if verdict == "SATISFIABLE":
                status = SolveStatus.SAT
            elif verdict == "UNSATISFIABLE":
                status = SolveStatus.UNSAT
            elif verdict in ("UNKNOWN", "INDETERMINATE"):
                status = SolveStatus.TIMEOUT
            else:
                raise BackendFailure(f"unrecognised status line '{line}'")
        elif fields[0] == "v":
            try:
                for lit in map(int, fields[1:]):
                    if lit == 0:
                        terminated = True
                    elif abs(lit) <= num_vars:
                        model[abs(lit) - 1] = lit > 0
            except ValueError:
                raise BackendFailure(f"unparsable model line '{line}'")
    if status is None:
        raise BackendFailure("solver output has no status line")
    if status == SolveStatus.SAT and not terminated:
        raise BackendFailure("satisfiable verdict without a complete, 0-terminated model")
    return status, (model if status == SolveStatus.SAT else None)


# ==================== decoding ====================

def _transitions(outcome: SolveOutcome, artifacts: EncodingArtifacts):
    varmap, states = artifacts.varmap, artifacts.num_states
    n = len(artifacts.sample.alphabet)
    return {
        (i, s, j)
        for s in range(n)
        for i in range(1, states + 1)
        for j in range(1, states + 1)
        if outcome.value(varmap.get("delta", s, i, j))
    }


def decode_nfa(outcome: SolveOutcome, artifacts: EncodingArtifacts) -> Nfa3:
    """Automaton read from a satisfying assignment (the (k+2) one for K+2 models)"""
    return decode_solution(outcome, artifacts)[0]


def decode_solution(outcome: SolveOutcome, artifacts: EncodingArtifacts) -> Tuple[Nfa3, Optional[KPlus2Solution]]:
    if outcome.status != SolveStatus.SAT:
        raise ValueError("only satisfiable outcomes decode to automata")
    varmap, k = artifacts.varmap, artifacts.k
    alphabet = artifacts.sample.alphabet
    internal = range(1, k + 1)

    if artifacts.model_kind == ModelKind.K:
        accepting = {i for i in internal if outcome.value(varmap.get("a", i))}
        rejecting = {i for i in internal if outcome.value(varmap.get("r", i))}
        if accepting & rejecting:
            raise InconsistentModel(f"states {sorted(accepting & rejecting)} are both accepting and rejecting")
        nfa = Nfa3(
            k=k, alphabet=alphabet, accepting=accepting, rejecting=rejecting,
            transitions=_transitions(outcome, artifacts),
        )
        return nfa, None

    accept, reject = artifacts.accept_state, artifacts.reject_state
    transitions = _transitions(outcome, artifacts)
    for i, s, j in transitions:
        if i in (accept, reject):
            raise InconsistentModel(f"transition {(i, alphabet[s], j)} leaves a final sink")
        if j in (accept, reject) and not any((i, s, q) in transitions for q in internal):
            raise InconsistentModel(f"transition {(i, alphabet[s], j)} has no internal copy")
    astar = frozenset(i for i in internal if outcome.value(varmap.get("astar", i)))
    rstar = frozenset(i for i in internal if outcome.value(varmap.get("rstar", i)))
    if astar & rstar:
        raise InconsistentModel(f"states {sorted(astar & rstar)} are possible accepting and rejecting finals")
    nfa = Nfa3(k=k + 2, alphabet=alphabet, accepting={accept}, rejecting={reject}, transitions=transitions)
    return nfa, KPlus2Solution(nfa=nfa, astar=astar, rstar=rstar)
