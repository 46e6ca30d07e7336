"""Embedded CDCL engine: two watched literals, 1UIP learning, VSIDS with
index tie-breaking, phase saving, Luby restarts and learned-clause pruning."""
import heapq
import time
from typing import List, Optional, Sequence

UNASSIGNED, TRUE, FALSE = 0, 1, -1

RESTART_UNIT = 100
ACTIVITY_DECAY = 0.95
RESCALE_LIMIT = 1e100
TIMEOUT_CHECK_EVERY = 256


def luby(i: int) -> int:
    """i-th element (from 1) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while i != (1 << k) - 1:
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1
    return 1 << (k - 1)


class CdclSolver:
    """Single-use solver over clauses of nonzero integer literals"""

    def __init__(self, num_vars: int, clauses: Sequence[Sequence[int]], timeout: Optional[float] = None):
        self.num_vars = num_vars
        self.timeout = timeout
        self.values = [UNASSIGNED] * (num_vars + 1)
        self.levels = [0] * (num_vars + 1)
        self.reasons: List[Optional[int]] = [None] * (num_vars + 1)
        self.saved = [False] * (num_vars + 1)
        self.activity = [0.0] * (num_vars + 1)
        self.increment = 1.0
        self.heap = [(0.0, v) for v in range(1, num_vars + 1)]
        # watches[lit + num_vars] lists clause ids watching lit
        self.watches: List[List[int]] = [[] for _ in range(2 * num_vars + 1)]
        self.clauses: List[Optional[List[int]]] = []
        self.learned: List[int] = []
        self.trail: List[int] = []
        self.trail_limits: List[int] = []
        self.queue_head = 0
        self.units: List[int] = []
        self.empty_clause = False
        self.conflicts = 0
        self.decisions = 0
        for clause in clauses:
            self._add_input(list(dict.fromkeys(clause)))
        self.max_learned = max(len(self.clauses) // 3, 1000)

    # ==================== clause database ====================

    def _add_input(self, clause: List[int]) -> None:
        if not clause:
            self.empty_clause = True
        elif len(clause) == 1:
            self.units.append(clause[0])
        else:
            self._attach(clause)

    def _attach(self, clause: List[int]) -> int:
        index = len(self.clauses)
        self.clauses.append(clause)
        self.watches[clause[0] + self.num_vars].append(index)
        self.watches[clause[1] + self.num_vars].append(index)
        return index

    def _value(self, lit: int) -> int:
        v = self.values[abs(lit)]
        return v if lit > 0 else -v

    @property
    def level(self) -> int:
        return len(self.trail_limits)

    def _assign(self, lit: int, reason: Optional[int]) -> None:
        var = abs(lit)
        self.values[var] = TRUE if lit > 0 else FALSE
        self.levels[var] = self.level
        self.reasons[var] = reason
        self.trail.append(lit)

    # ==================== propagation ====================

    def _propagate(self) -> Optional[int]:
        """Unit propagation; returns the id of a falsified clause, if any"""
        n = self.num_vars
        while self.queue_head < len(self.trail):
            false_lit = -self.trail[self.queue_head]
            self.queue_head += 1
            watching = self.watches[false_lit + n]
            kept: List[int] = []
            conflict = None
            for position, index in enumerate(watching):
                clause = self.clauses[index]
                if clause is None:
                    continue
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                if self._value(clause[0]) == TRUE:
                    kept.append(index)
                    continue
                for k in range(2, len(clause)):
                    if self._value(clause[k]) != FALSE:
                        clause[1], clause[k] = clause[k], clause[1]
                        self.watches[clause[1] + n].append(index)
                        break
                else:
                    kept.append(index)
                    if self._value(clause[0]) == FALSE:
                        kept.extend(watching[position + 1:])
                        conflict = index
                        break
                    self._assign(clause[0], index)
            self.watches[false_lit + n] = kept
            if conflict is not None:
                return conflict
        return None

    # ==================== conflict analysis ====================

    def _bump(self, var: int) -> None:
        self.activity[var] += self.increment
        if self.activity[var] > RESCALE_LIMIT:
            self.activity = [a / RESCALE_LIMIT for a in self.activity]
            self.increment /= RESCALE_LIMIT
            self.heap = [(-self.activity[v], v) for v in range(1, self.num_vars + 1) if self.values[v] == UNASSIGNED]
            heapq.heapify(self.heap)
        elif self.values[var] == UNASSIGNED:
            heapq.heappush(self.heap, (-self.activity[var], var))

    def _analyze(self, conflict: int):
        """First-UIP learned clause (asserting literal first) and backjump level"""
        seen = set()
        learned = [0]
        pending = 0
        lit = None
        index = len(self.trail) - 1
        reason = conflict
        while True:
            clause = self.clauses[reason]
            for q in (clause if lit is None else clause[1:]):
                var = abs(q)
                if var not in seen and self.levels[var] > 0:
                    seen.add(var)
                    self._bump(var)
                    if self.levels[var] == self.level:
                        pending += 1
                    else:
                        learned.append(q)
            while abs(self.trail[index]) not in seen:
                index -= 1
            lit = self.trail[index]
            index -= 1
            seen.discard(abs(lit))
            pending -= 1
            if pending == 0:
                break
            reason = self.reasons[abs(lit)]
        learned[0] = -lit
        self.increment /= ACTIVITY_DECAY

        if len(learned) == 1:
            return learned, 0
        top = max(range(1, len(learned)), key=lambda i: self.levels[abs(learned[i])])
        learned[1], learned[top] = learned[top], learned[1]
        return learned, self.levels[abs(learned[1])]

    def _backjump(self, level: int) -> None:
        if self.level <= level:
            return
        limit = self.trail_limits[level]
        for lit in self.trail[limit:]:
            var = abs(lit)
            self.saved[var] = lit > 0
            self.values[var] = UNASSIGNED
            self.reasons[var] = None
            heapq.heappush(self.heap, (-self.activity[var], var))
        del self.trail[limit:]
        del self.trail_limits[level:]
        self.queue_head = len(self.trail)

    def _prune_learned(self) -> None:
        """Drop the longer half of the unlocked learned clauses"""
        locked = {self.reasons[abs(lit)] for lit in self.trail}
        candidates = [i for i in self.learned if i not in locked and len(self.clauses[i]) > 2]
        candidates.sort(key=lambda i: (-len(self.clauses[i]), i))
        dropped = set(candidates[: len(candidates) // 2])
        for i in dropped:
            self.clauses[i] = None
        self.learned = [i for i in self.learned if i not in dropped]
        self.max_learned = int(self.max_learned * 1.1)

    # ==================== search ====================

    def _pick_branch(self) -> Optional[int]:
        while self.heap:
            negated, var = heapq.heappop(self.heap)
            if self.values[var] == UNASSIGNED and -negated == self.activity[var]:
                return var
        return None

    def _timed_out(self, started: float) -> bool:
        return self.timeout is not None and time.monotonic() - started > self.timeout

    def solve(self) -> Optional[bool]:
        """True if satisfiable, False if not, None on timeout"""
        started = time.monotonic()
        if self.empty_clause:
            return False
        for lit in self.units:
            value = self._value(lit)
            if value == FALSE:
                return False
            if value == UNASSIGNED:
                self._assign(lit, None)
        if self._propagate() is not None:
            return False

        restarts, budget = 1, RESTART_UNIT * luby(1)
        steps = 0
        while True:
            steps += 1
            if steps % TIMEOUT_CHECK_EVERY == 0 and self._timed_out(started):
                return None
            conflict = self._propagate()
            if conflict is not None:
                self.conflicts += 1
                budget -= 1
                if self.level == 0:
                    return False
                learned, level = self._analyze(conflict)
                self._backjump(level)
                if len(learned) == 1:
                    self._assign(learned[0], None)
                else:
                    index = self._attach(learned)
                    self.learned.append(index)
                    self._assign(learned[0], index)
                continue

            if budget <= 0:
                restarts += 1
                budget = RESTART_UNIT * luby(restarts)
                self._backjump(0)
            if len(self.learned) - len(self.trail) >= self.max_learned:
                self._prune_learned()

            var = self._pick_branch()
            if var is None:
                return True
            self.decisions += 1
            self.trail_limits.append(len(self.trail))
            self._assign(var if self.saved[var] else -var, None)

    def model(self) -> List[bool]:
        """Value of variables 1..num_vars after a satisfiable run"""
        return [self.values[v] == TRUE for v in range(1, self.num_vars + 1)]
