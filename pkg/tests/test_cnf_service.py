import itertools
import random

import pytest
from pydantic import ValidationError

from src.schemas.encoding_schema import Formula
from src.schemas.solver_schema import Cnf
from src.services.cnf_service import emit_dimacs, lower_to_cnf, parse_dimacs
from src.utils.exceptions import FormatError


def _holds(clauses, values):
    return all(any(values[abs(x)] == (x > 0) for x in clause) for clause in clauses)


def _term(term, values):
    return all(values[abs(x)] == (x > 0) for x in term)


def _formula_holds(formula: Formula, values) -> bool:
    if not _holds([c.literals for c in formula.clauses], values):
        return False
    for gate in formula.gates:
        if values[gate.head] != any(_term(t, values) for t in gate.terms):
            return False
    return all(any(_term(t, values) for t in d.terms) for d in formula.disjunctions)


def _projected_models(cnf: Cnf, num_original: int):
    """Assignments of the original variables that extend to a model of `cnf`"""
    models = set()
    extra = cnf.num_vars - num_original
    for head in itertools.product((False, True), repeat=num_original):
        for tail in itertools.product((False, True), repeat=extra):
            values = dict(enumerate(head + tail, 1))
            if _holds(cnf.clauses, values):
                models.add(head)
                break
    return models


def test_conjunction_becomes_units():
    formula = Formula()
    formula.add_disjunction("t", [(1, 2)])
    assert lower_to_cnf(formula, 2).clauses == [(1,), (2,)]


def test_iff_of_a_conjunction():
    formula = Formula()
    formula.add_gate("t", 1, [(2, 3)])
    assert lower_to_cnf(formula, 3).clauses == [(-1, 2), (-1, 3), (1, -2, -3)]


def test_disjunction_of_conjunctions_uses_auxiliaries():
    formula = Formula()
    formula.add_disjunction("t", [(1, 2), (3, 4)])
    cnf = lower_to_cnf(formula, 4)
    assert cnf.num_vars == 6
    assert cnf.num_original == 4
    assert len(_projected_models(cnf, 4)) == 7


def test_gate_without_terms_is_false():
    formula = Formula()
    formula.add_gate("t", 1, [])
    assert lower_to_cnf(formula, 1).clauses == [(-1,)]


def test_gate_with_an_empty_term_is_true():
    formula = Formula()
    formula.add_gate("t", 1, [(2,), ()])
    assert lower_to_cnf(formula, 2).clauses == [(1,)]


def test_contradictory_term_is_dropped():
    formula = Formula()
    formula.add_gate("t", 1, [(2, -2), (3,)])
    assert lower_to_cnf(formula, 3).clauses == [(-1, 3), (1, -3)]


def test_empty_disjunction_is_unsatisfiable():
    formula = Formula()
    formula.add_disjunction("t", [])
    assert _projected_models(lower_to_cnf(formula, 1), 1) == set()


def test_tautologies_and_repeats_are_cleaned():
    formula = Formula()
    formula.add_clause("t", 1, -1)
    formula.add_clause("t", 2, 2, 1)
    assert lower_to_cnf(formula, 2).clauses == [(2, 1)]


@pytest.mark.parametrize("seed", range(25))
def test_lowering_preserves_models(seed):
    rng = random.Random(seed)
    n = 5

    def literal():
        return rng.choice([1, -1]) * rng.randint(1, n)

    def terms():
        return [tuple(literal() for _ in range(rng.randint(0 if rng.random() < 0.1 else 1, 3)))
                for _ in range(rng.randint(0, 3))]

    formula = Formula()
    for _ in range(rng.randint(0, 2)):
        formula.add_clause("c", *(literal() for _ in range(rng.randint(1, 3))))
    for _ in range(rng.randint(0, 2)):
        formula.add_gate("g", rng.randint(1, n), terms())
    for _ in range(rng.randint(0, 2)):
        formula.add_disjunction("d", terms())

    expected = {
        values
        for values in itertools.product((False, True), repeat=n)
        if _formula_holds(formula, dict(enumerate(values, 1)))
    }
    assert _projected_models(lower_to_cnf(formula, n), n) == expected


def test_emit_dimacs():
    assert emit_dimacs(Cnf(num_vars=2, clauses=[(1, -2), (2,)])) == "p cnf 2 2\n1 -2 0\n2 0\n"
    assert emit_dimacs(Cnf(num_vars=3, clauses=[])) == "p cnf 3 0\n"


def test_parse_dimacs_tolerates_layout():
    text = "c comment\np cnf 3 2\n1 -2\n 3 0 -1\n0\n%\n0\n"
    cnf = parse_dimacs(text)
    assert cnf.num_vars == 3
    assert cnf.clauses == [(1, -2, 3), (-1,)]


def test_parse_emitted_text():
    cnf = Cnf(num_vars=4, clauses=[(1, -4), (2, 3, -1)])
    assert parse_dimacs(emit_dimacs(cnf)) == cnf


def test_emitted_text_keeps_auxiliaries_apart():
    formula = Formula()
    formula.add_disjunction("t", [(1, 2), (3, 4)])
    cnf = lower_to_cnf(formula, 4)
    text = emit_dimacs(cnf)
    assert text.startswith("c original 4\np cnf 6 ")
    reparsed = parse_dimacs(text)
    assert reparsed == cnf
    assert (reparsed.num_vars, reparsed.num_original) == (6, 4)


def test_original_count_cannot_exceed_variables():
    with pytest.raises(FormatError):
        parse_dimacs("c original 5\np cnf 2 1\n1 2 0\n")
    with pytest.raises(ValidationError):
        Cnf(num_vars=2, clauses=[], num_original=3)


@pytest.mark.parametrize(
    "text",
    [
        "1 2 0\n",
        "p cnf 2 1\n1 x 0\n",
        "p cnf 2 2\n1 2 0\n",
        "p cnf 2 1\n1 3 0\n",
        "p dnf 2 1\n1 0\n",
    ],
)
def test_parse_dimacs_errors(text):
    with pytest.raises(FormatError):
        parse_dimacs(text)


@pytest.mark.parametrize("clauses", [[()], [(1, 1)], [(1, -1)], [(3,)]])
def test_cnf_validation(clauses):
    with pytest.raises(ValidationError):
        Cnf(num_vars=2, clauses=clauses)
