import logging
from collections import Counter, defaultdict
from typing import Dict, List, Optional, Sequence, Set, Tuple

import pandas as pd

from src.schemas.encoding_schema import EncodingArtifacts, Formula
from src.schemas.solver_schema import Cnf
from src.utils.exceptions import FormatError


def _clean(literals: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Drop repeated literals; None for a tautology"""
    seen: Dict[int, None] = dict.fromkeys(literals)
    if any(-lit in seen for lit in seen):
        return None
    return tuple(seen)


class _Lowering:
    def __init__(self, num_original: int):
        self.next_var = num_original + 1
        self.clauses: List[Tuple[int, ...]] = []
        self.families: List[str] = []
        self.auxiliaries: Counter = Counter()

    def add(self, family: str, literals: Sequence[int]) -> None:
        clause = _clean(literals)
        if clause is not None:
            self.clauses.append(clause)
            self.families.append(family)

    def fresh(self, family: str) -> int:
        var = self.next_var
        self.next_var += 1
        self.auxiliaries[family] += 1
        return var

    @staticmethod
    def satisfiable_terms(terms) -> Optional[List[Tuple[int, ...]]]:
        """Terms that can hold; None when an empty term makes the DNF true"""
        cleaned = [_clean(term) for term in terms]
        if any(t == () for t in cleaned):
            return None
        # a conjunction holding x and -x can never be true
        return [t for t in cleaned if t is not None]

    def and_gate(self, family: str, term: Tuple[int, ...], both_ways: bool) -> int:
        """Literal standing for the conjunction `term`"""
        if len(term) == 1:
            return term[0]
        g = self.fresh(family)
        for x in term:
            self.add(family, (-g, x))
        if both_ways:
            self.add(family, (g, *(-x for x in term)))
        return g

    def iff(self, family: str, head: int, terms) -> None:
        terms = self.satisfiable_terms(terms)
        if terms is None:
            self.add(family, (head,))
        elif not terms:
            self.add(family, (-head,))
        elif len(terms) == 1:
            term = terms[0]
            for x in term:
                self.add(family, (-head, x))
            self.add(family, (head, *(-x for x in term)))
        else:
            lits = [self.and_gate(family, t, both_ways=True) for t in terms]
            self.add(family, (-head, *lits))
            for lit in lits:
                self.add(family, (head, -lit))

    def require(self, family: str, terms) -> None:
        terms = self.satisfiable_terms(terms)
        if terms is None:
            return
        if not terms:
            g = self.fresh(family)
            self.add(family, (g,))
            self.add(family, (-g,))
        elif len(terms) == 1:
            for x in terms[0]:
                self.add(family, (x,))
        else:
            self.add(family, [self.and_gate(family, t, both_ways=False) for t in terms])


def _lower(formula: Formula, num_original: int) -> _Lowering:
    lowering = _Lowering(num_original)
    for clause in formula.clauses:
        lowering.add(clause.family, clause.literals)
    for gate in formula.gates:
        lowering.iff(gate.family, gate.head, gate.terms)
    for disjunction in formula.disjunctions:
        lowering.require(disjunction.family, disjunction.terms)
    return lowering


def lower_to_cnf(formula: Formula, num_original: Optional[int] = None) -> Cnf:
    """Equisatisfiable CNF keeping the original ids; auxiliaries come after them"""
    if num_original is None:
        num_original = formula.max_literal()
    lowering = _lower(formula, num_original)
    cnf = Cnf(num_vars=lowering.next_var - 1, clauses=lowering.clauses, num_original=num_original)
    logging.debug(
        "lowered to %d clauses over %d variables (%d auxiliary)",
        len(cnf.clauses), cnf.num_vars, cnf.num_vars - num_original,
    )
    return cnf


def lower_artifacts(artifacts: EncodingArtifacts) -> Cnf:
    return lower_to_cnf(artifacts.formula, artifacts.varmap.num_vars)


def constraint_census(artifacts: EncodingArtifacts) -> pd.DataFrame:
    """Clauses, referenced variables and auxiliaries per constraint family"""
    formula, num_original = artifacts.formula, artifacts.varmap.num_vars
    lowering = _lower(formula, num_original)

    referenced: Dict[str, Set[int]] = defaultdict(set)
    for clause in formula.clauses:
        referenced[clause.family].update(abs(x) for x in clause.literals)
    for gate in formula.gates:
        referenced[gate.family].add(abs(gate.head))
        referenced[gate.family].update(abs(x) for t in gate.terms for x in t)
    for disjunction in formula.disjunctions:
        referenced[disjunction.family].update(abs(x) for t in disjunction.terms for x in t)

    clause_counts = Counter(lowering.families)
    families = sorted(set(referenced) | set(clause_counts))
    return pd.DataFrame(
        {
            "family": families,
            "clauses": [clause_counts.get(f, 0) for f in families],
            "variables": [len(referenced.get(f, ())) for f in families],
            "auxiliaries": [lowering.auxiliaries.get(f, 0) for f in families],
        }
    )


# ==================== DIMACS ====================

def emit_dimacs(cnf: Cnf) -> str:
    """DIMACS text; a `c original <n>` comment records the ids above n as auxiliaries"""
    lines = []
    if cnf.num_original != cnf.num_vars:
        lines.append(f"c original {cnf.num_original}")
    lines.append(f"p cnf {cnf.num_vars} {len(cnf.clauses)}")
    lines += [" ".join(map(str, clause)) + " 0" for clause in cnf.clauses]
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Cnf:
    """Read DIMACS CNF; clauses may span lines and end with 0"""
    num_vars, expected, num_original = None, None, None
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if line.startswith("c"):
            fields = line.split()
            if len(fields) == 3 and fields[:2] == ["c", "original"]:
                try:
                    num_original = int(fields[2])
                except ValueError:
                    raise FormatError(f"line {n}: bad original-variable count '{fields[2]}'")
            continue
        if not line:
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise FormatError(f"line {n}: bad problem line '{line}'")
            num_vars, expected = int(fields[2]), int(fields[3])
            continue
        if num_vars is None:
            raise FormatError(f"line {n}: clause before the problem line")
        try:
            literals = [int(tok) for tok in line.split()]
        except ValueError:
            raise FormatError(f"line {n}: non-integer literal in '{line}'")
        for lit in literals:
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if num_vars is None:
        raise FormatError("missing 'p cnf' problem line")
    if current:
        clauses.append(tuple(current))
    if len(clauses) != expected:
        raise FormatError(f"problem line announces {expected} clauses, found {len(clauses)}")
    try:
        return Cnf(num_vars=num_vars, clauses=clauses, num_original=num_original)
    except ValueError as e:
        raise FormatError(f"invalid CNF: {e}")
