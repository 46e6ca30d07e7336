import stat

import pytest

from src.schemas.solver_schema import Cnf, SolveStatus
from src.services.cnf_service import lower_artifacts
from src.services.encoding_service import encode_core_k
from src.services.solver_service import SolverService, decode_nfa, parse_solver_output
from src.services.splitting_service import split_all_prefix
from src.services.automaton_service import is_consistent
from src.utils.exceptions import BackendFailure


def _script(tmp_path, body):
    path = tmp_path / "fake-solver"
    path.write_text("#!/bin/sh\n" + body, encoding="utf-8")
    path.chmod(path.stat().st_mode | stat.S_IEXEC)
    return str(path)


def test_embedded_sat_and_unsat(solver):
    assert solver.solve(Cnf(num_vars=2, clauses=[(1, 2)]), 10).status == SolveStatus.SAT
    assert solver.solve(Cnf(num_vars=1, clauses=[(1,), (-1,)]), 10).status == SolveStatus.UNSAT


def test_assignment_covers_original_variables_only(solver):
    cnf = Cnf(num_vars=3, clauses=[(1,), (-1, 3), (2, 3)], num_original=2)
    outcome = solver.solve(cnf, 10)
    assert outcome.assignment == (True, outcome.value(2))
    assert len(outcome.assignment) == 2
    assert outcome.stats.clauses == 3
    assert outcome.stats.variables == 3


def test_timeout_must_be_positive(solver):
    with pytest.raises(ValueError):
        solver.solve(Cnf(num_vars=1, clauses=[(1,)]), 0)


def test_parse_solver_output():
    status, model = parse_solver_output("c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 3)
    assert status == SolveStatus.SAT
    assert model == [True, False, True]
    assert parse_solver_output("s UNSATISFIABLE\n", 3) == (SolveStatus.UNSAT, None)
    assert parse_solver_output("s UNKNOWN\n", 3) == (SolveStatus.TIMEOUT, None)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "v 1 0\n",
        "s MAYBE\n",
        "s SATISFIABLE\nv 1 x 0\n",
        # satisfiable but the model is missing or cut short
        "s SATISFIABLE\n",
        "s SATISFIABLE\nv 1 -2\n",
    ],
)
def test_bad_solver_output(text):
    with pytest.raises(BackendFailure):
        parse_solver_output(text, 2)


def test_external_backend(tmp_path):
    path = _script(tmp_path, 'echo "s SATISFIABLE"\necho "v -1 2 0"\n')
    outcome = SolverService("external", solver_path=path).solve(Cnf(num_vars=2, clauses=[(-1,), (2,)]), 10)
    assert outcome.status == SolveStatus.SAT
    assert outcome.assignment == (False, True)


def test_external_backend_receives_the_dimacs_file(tmp_path):
    # the last argument is the CNF file; report UNSAT only if it holds the expected header
    path = _script(
        tmp_path,
        'for f; do last="$f"; done\n'
        'if grep -q "p cnf 1 2" "$last"; then echo "s UNSATISFIABLE"; else echo "s SATISFIABLE"; fi\n',
    )
    service = SolverService("external", solver_path=path, solver_args="--quiet --seed 3")
    assert service.solve(Cnf(num_vars=1, clauses=[(1,), (-1,)]), 10).status == SolveStatus.UNSAT


def test_external_backend_timeout(tmp_path):
    path = _script(tmp_path, "exec sleep 5\n")
    outcome = SolverService("external", solver_path=path).solve(Cnf(num_vars=1, clauses=[(1,)]), 0.2)
    assert outcome.status == SolveStatus.TIMEOUT


def test_external_backend_needs_a_path():
    with pytest.raises(BackendFailure):
        SolverService("external")


def test_missing_executable(tmp_path):
    service = SolverService("external", solver_path=str(tmp_path / "nowhere"))
    with pytest.raises(BackendFailure):
        service.solve(Cnf(num_vars=1, clauses=[(1,)]), 10)


def test_unknown_backend():
    with pytest.raises(ValueError):
        SolverService("quantum")


def test_decoded_automaton_is_consistent(solver, small_sample):
    artifacts = encode_core_k(small_sample, split_all_prefix(small_sample), 3)
    outcome = solver.solve(lower_artifacts(artifacts), 60)
    assert outcome.status == SolveStatus.SAT
    nfa = decode_nfa(outcome, artifacts)
    assert nfa.k == 3
    assert is_consistent(nfa, small_sample)
