"""Boolean encodings of 3-sort NFA identification.

States are 1..k. In the (k+2) layout state k+1 is the only accepting final and
k+2 the only rejecting final; both are sinks. A path over the empty word joins
a state to itself, so empty prefixes and suffixes never get variables.

Variable kinds (see VarMap): a/r final sorts, astar/rstar possible finals,
delta transitions, prefix paths from q1, suffix paths between states and end
variables marking where a whole word can stop.
"""
import logging
from typing import Iterable, List, Set

from src.schemas.automaton_schema import Sample, Word
from src.schemas.encoding_schema import EncodingArtifacts, Formula, ModelKind, VarMap
from src.schemas.splitting_schema import Splitting
from src.utils.exceptions import EmptySample


def _by_length(words: Iterable[Word]) -> List[Word]:
    return sorted(set(words), key=lambda w: (len(w), w))


def _prefix_closure(words: Iterable[Word]) -> Set[Word]:
    return {w[:i] for w in words for i in range(1, len(w) + 1)}


def _suffix_closure(words: Iterable[Word]) -> Set[Word]:
    return {w[i:] for w in words for i in range(len(w))}


class _Encoder:
    def __init__(self, sample: Sample, splitting: Splitting, k: int, kind: ModelKind):
        if k < 1:
            raise ValueError("k must be at least 1")
        if not sample.words:
            raise EmptySample("cannot encode a sample without words")
        if not splitting.covers(sample.words):
            raise ValueError("splitting does not cover every sample word")
        self.sample = sample
        self.splitting = splitting
        self.k = k
        self.kind = kind
        self.n = len(sample.alphabet)
        self.varmap = VarMap()
        self.formula = Formula()
        self.internal = range(1, k + 1)

    # ==================== variables ====================

    def delta(self, s: int, i: int, j: int) -> int:
        return self.varmap.var("delta", s, i, j)

    def prefix(self, x: Word, i: int) -> int:
        return self.varmap.var("prefix", x, i)

    def suffix(self, v: Word, i: int, j: int) -> int:
        return self.varmap.var("suffix", v, i, j)

    def _declare(self, kinds, states) -> None:
        for kind in kinds:
            for i in self.internal:
                self.varmap.var(kind, i)
        for s in range(self.n):
            for i in states:
                for j in states:
                    self.delta(s, i, j)

    # ==================== path recursions ====================

    def prefix_paths(self, prefixes: Iterable[Word]) -> None:
        """prefix(x, i) <-> some path of x leads from q1 to q_i, i internal"""
        for x in _by_length(prefixes):
            for i in self.internal:
                head = self.prefix(x, i)
                if len(x) == 1:
                    self.formula.add_gate("prefix-base", head, [(self.delta(x[0], 1, i),)])
                else:
                    y, s = x[:-1], x[-1]
                    self.formula.add_gate(
                        "prefix-step", head, [(self.prefix(y, j), self.delta(s, j, i)) for j in self.internal]
                    )

    def suffix_paths(self, suffixes: Iterable[Word], targets: Iterable[int]) -> None:
        """suffix(v, i, j) <-> some path of v leads from q_i to q_j"""
        targets = list(targets)
        for v in _by_length(suffixes):
            for i in self.internal:
                for j in targets:
                    head = self.suffix(v, i, j)
                    if len(v) == 1:
                        self.formula.add_gate("suffix-base", head, [(self.delta(v[0], i, j),)])
                    else:
                        s, y = v[0], v[1:]
                        self.formula.add_gate(
                            "suffix-step", head, [(self.delta(s, i, l), self.suffix(y, l, j)) for l in self.internal]
                        )

    def joined_end(self, w: Word, target: int) -> int:
        """Literal true iff the split path of w can end in `target`"""
        u, v = self.splitting.split(w)
        if not v and self.kind == ModelKind.K:
            return self.prefix(u, target)
        if not u:
            return self.suffix(v, 1, target)
        head = self.varmap.var("end", w, target)
        if v:
            terms = [(self.prefix(u, j), self.suffix(v, j, target)) for j in self.internal]
            self.formula.add_gate("join", head, terms)
        else:
            # (k+2) layout, whole word as prefix: last step goes into the fixed final
            x, s = w[:-1], w[-1]
            if not x:
                return self.delta(s, 1, target)
            terms = [(self.prefix(x, j), self.delta(s, j, target)) for j in self.internal]
            self.formula.add_gate("final-step", head, terms)
        return head

    def artifacts(self) -> EncodingArtifacts:
        return EncodingArtifacts(
            formula=self.formula,
            varmap=self.varmap,
            model_kind=self.kind,
            k=self.k,
            sample=self.sample,
            splitting=self.splitting,
        )


def encode_core_k(sample: Sample, splitting: Splitting, k: int) -> EncodingArtifacts:
    """k-state model: final sorts a_i / r_i are free variables"""
    enc = _Encoder(sample, splitting, k, ModelKind.K)
    enc._declare(("a", "r"), enc.internal)
    a = {i: enc.varmap.var("a", i) for i in enc.internal}
    r = {i: enc.varmap.var("r", i) for i in enc.internal}
    f = enc.formula

    enc.prefix_paths(_prefix_closure(u for u in splitting.used_prefixes if u))
    enc.suffix_paths(_suffix_closure(v for v in splitting.used_suffixes if v), enc.internal)

    for i in enc.internal:
        f.add_clause("final-exclusion", -a[i], -r[i])
    for words, hit, miss, tag in (
        (sample.positives, a, r, "positive"),
        (sample.negatives, r, a, "negative"),
    ):
        for w in words:
            ends = {i: enc.joined_end(w, i) for i in enc.internal}
            wanted = "accept" if tag == "positive" else "reject"
            unwanted = "reject" if tag == "positive" else "accept"
            f.add_disjunction(f"{tag}-{wanted}", [(ends[i], hit[i]) for i in enc.internal])
            for i in enc.internal:
                f.add_clause(f"{tag}-no-{unwanted}", -ends[i], -miss[i])

    logging.info(
        "K encoding: k=%d, %d variables, %d gates, %d clauses",
        k, enc.varmap.num_vars, len(f.gates), len(f.clauses),
    )
    return enc.artifacts()


def encode_core_k2(sample: Sample, splitting: Splitting, k: int) -> EncodingArtifacts:
    """(k+2)-state model with fixed sink finals and possible-final variables"""
    enc = _Encoder(sample, splitting, k, ModelKind.KPLUS2)
    accept, reject = k + 1, k + 2
    everything = range(1, k + 3)
    enc._declare(("astar", "rstar"), everything)
    astar = {i: enc.varmap.var("astar", i) for i in enc.internal}
    rstar = {i: enc.varmap.var("rstar", i) for i in enc.internal}
    f = enc.formula

    # possible-final constraints read the path of every whole word
    enc.prefix_paths(_prefix_closure(sample.words))
    enc.suffix_paths(_suffix_closure(v for v in splitting.used_suffixes if v), (accept, reject))

    for w in sample.positives:
        f.add_clause("positive-accept", enc.joined_end(w, accept))
        f.add_clause("positive-no-reject", -enc.joined_end(w, reject))
    for w in sample.negatives:
        f.add_clause("negative-reject", enc.joined_end(w, reject))
        f.add_clause("negative-no-accept", -enc.joined_end(w, accept))

    for s in range(enc.n):
        for sink in (accept, reject):
            for j in everything:
                f.add_clause("final-sink", -enc.delta(s, sink, j))
        for i in enc.internal:
            internal_moves = [enc.delta(s, i, j) for j in enc.internal]
            for sink in (accept, reject):
                f.add_clause("final-copy", -enc.delta(s, i, sink), *internal_moves)

    for words, marks, sink, tag in (
        (sample.positives, astar, accept, "accept"),
        (sample.negatives, rstar, reject, "reject"),
    ):
        others = rstar if tag == "accept" else astar
        opposite = sample.negatives if tag == "accept" else sample.positives
        for w in opposite:
            for i in enc.internal:
                f.add_clause("possible-final-exclusion", -marks[i], -enc.prefix(w, i))
        for i in enc.internal:
            support = [(-marks[i],)]
            for w in words:
                x, s = w[:-1], w[-1]
                if x:
                    support += [
                        (enc.prefix(x, j), enc.delta(s, j, i), enc.delta(s, j, sink)) for j in enc.internal
                    ]
                else:
                    support.append((enc.delta(s, 1, i), enc.delta(s, 1, sink)))
            f.add_disjunction("possible-final-support", support)
        for w in words:
            f.add_disjunction("possible-final-cover", [(enc.prefix(w, i), marks[i]) for i in enc.internal])
        if tag == "accept":
            for i in enc.internal:
                f.add_clause("possible-final-disjoint", -marks[i], -others[i])

    logging.info(
        "K+2 encoding: k=%d, %d variables, %d gates, %d clauses",
        k, enc.varmap.num_vars, len(f.gates), len(f.clauses),
    )
    return enc.artifacts()


def encode(sample: Sample, splitting: Splitting, k: int, kind: ModelKind) -> EncodingArtifacts:
    if kind == ModelKind.KPLUS2:
        return encode_core_k2(sample, splitting, k)
    return encode_core_k(sample, splitting, k)


def variable_census(varmap: VarMap) -> dict:
    """Number of variables per kind"""
    counts: dict = {}
    for key in varmap.keys:
        counts[key[0]] = counts.get(key[0], 0) + 1
    return counts
