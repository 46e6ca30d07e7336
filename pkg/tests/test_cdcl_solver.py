import itertools
import random

import pytest

from src.services.cdcl_solver import CdclSolver, luby


def _satisfies(model, clauses):
    return all(any(model[abs(x) - 1] == (x > 0) for x in clause) for clause in clauses)


def _brute_force(num_vars, clauses):
    return any(_satisfies(values, clauses) for values in itertools.product((False, True), repeat=num_vars))


def _pigeonhole(pigeons, holes):
    var = lambda p, h: p * holes + h + 1
    clauses = [tuple(var(p, h) for h in range(holes)) for p in range(pigeons)]
    for h in range(holes):
        for p, q in itertools.combinations(range(pigeons), 2):
            clauses.append((-var(p, h), -var(q, h)))
    return pigeons * holes, clauses


def test_luby_sequence():
    assert [luby(i) for i in range(1, 16)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


def test_contradicting_units():
    assert CdclSolver(1, [(1,), (-1,)]).solve() is False


def test_single_clause():
    solver = CdclSolver(2, [(1, 2)])
    assert solver.solve() is True
    assert _satisfies(solver.model(), [(1, 2)])


def test_no_clauses():
    solver = CdclSolver(3, [])
    assert solver.solve() is True
    assert len(solver.model()) == 3


def test_empty_clause():
    assert CdclSolver(1, [()]).solve() is False


def test_propagation_chain():
    clauses = [(1,), (-1, 2), (-2, 3), (-3, 4)]
    solver = CdclSolver(4, clauses)
    assert solver.solve() is True
    assert solver.model() == [True, True, True, True]
    assert solver.decisions == 0


@pytest.mark.parametrize("pigeons", [3, 4, 5])
def test_pigeonhole_is_unsatisfiable(pigeons):
    num_vars, clauses = _pigeonhole(pigeons, pigeons - 1)
    assert CdclSolver(num_vars, clauses).solve() is False


def test_pigeons_fit_when_holes_suffice():
    num_vars, clauses = _pigeonhole(5, 5)
    solver = CdclSolver(num_vars, clauses)
    assert solver.solve() is True
    assert _satisfies(solver.model(), clauses)


@pytest.mark.parametrize("seed", range(60))
def test_random_3sat_agrees_with_brute_force(seed):
    rng = random.Random(seed)
    num_vars = 10
    clauses = []
    # around the 4.26 ratio, where both answers are common
    for _ in range(43):
        chosen = rng.sample(range(1, num_vars + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    solver = CdclSolver(num_vars, clauses)
    result = solver.solve()
    assert result == _brute_force(num_vars, clauses)
    if result:
        assert _satisfies(solver.model(), clauses)


def test_timeout_gives_up():
    num_vars, clauses = _pigeonhole(10, 9)
    assert CdclSolver(num_vars, clauses, timeout=1e-9).solve() is None


def test_learned_clause_pruning_keeps_answers():
    num_vars, clauses = _pigeonhole(6, 5)
    solver = CdclSolver(num_vars, clauses)
    solver.max_learned = 5
    assert solver.solve() is False
