import logging
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from src.schemas.automaton_schema import Nfa3
from src.schemas.frequency_schema import ProbabilisticNfa
from src.utils.exceptions import FormatError


def format_number(value: float) -> str:
    # 17 significant digits reproduce every double exactly
    return format(float(value), ".17g")


def format_nfa(nfa: Nfa3) -> str:
    """Canonical text form of a 3-sort NFA"""
    lines = [f"k {nfa.k} alphabet {''.join(nfa.alphabet)}"]
    lines += [f"accept {q}" for q in sorted(nfa.accepting)]
    lines += [f"reject {q}" for q in sorted(nfa.rejecting)]
    lines += [f"trans {i} {nfa.alphabet[s]} {j}" for i, s, j in nfa.sorted_transitions]
    return "\n".join(lines) + "\n"


def format_pnfa(pnfa: ProbabilisticNfa) -> str:
    nfa = pnfa.nfa
    lines = [format_nfa(nfa).rstrip("\n")]
    for tag, table in (("pfinal+", pnfa.gamma_f_pos), ("pfinal-", pnfa.gamma_f_neg)):
        lines += [f"{tag} {q} {format_number(table[q - 1])}" for q in range(1, nfa.k + 1)]
    for tag, table in (("ptrans+", pnfa.gamma_d_pos), ("ptrans-", pnfa.gamma_d_neg)):
        lines += [
            f"{tag} {i} {nfa.alphabet[s]} {j} {format_number(table[s, i - 1, j - 1])}"
            for i, s, j in nfa.sorted_transitions
        ]
    return "\n".join(lines) + "\n"


def _parse(text: str) -> Tuple[Nfa3, Dict[str, List[Tuple]]]:
    lines = [(n, line.split()) for n, line in enumerate(text.splitlines(), 1) if line.strip()]
    if not lines:
        raise FormatError("empty automaton file")
    n, header = lines[0]
    if len(header) not in (3, 4) or header[0] != "k" or header[2] != "alphabet":
        raise FormatError(f"line {n}: expected 'k <k> alphabet <chars>'")
    try:
        k = int(header[1])
    except ValueError:
        raise FormatError(f"line {n}: state count '{header[1]}' is not an integer")
    alphabet = tuple(header[3]) if len(header) == 4 else ()
    index = {c: i for i, c in enumerate(alphabet)}

    accepting, rejecting, transitions = set(), set(), set()
    extra: Dict[str, List[Tuple]] = {"pfinal+": [], "pfinal-": [], "ptrans+": [], "ptrans-": []}
    for n, fields in lines[1:]:
        tag = fields[0]
        try:
            if tag in ("accept", "reject") and len(fields) == 2:
                (accepting if tag == "accept" else rejecting).add(int(fields[1]))
            elif tag == "trans" and len(fields) == 4:
                transitions.add((int(fields[1]), index[fields[2]], int(fields[3])))
            elif tag in ("pfinal+", "pfinal-") and len(fields) == 3:
                extra[tag].append((int(fields[1]), float(fields[2])))
            elif tag in ("ptrans+", "ptrans-") and len(fields) == 5:
                extra[tag].append((int(fields[1]), index[fields[2]], int(fields[3]), float(fields[4])))
            else:
                raise FormatError(f"line {n}: unrecognised '{' '.join(fields)}'")
        except (ValueError, KeyError) as e:
            raise FormatError(f"line {n}: bad value in '{' '.join(fields)}' ({e})")
    try:
        nfa = Nfa3(k=k, alphabet=alphabet, accepting=accepting, rejecting=rejecting, transitions=transitions)
    except ValueError as e:
        raise FormatError(f"invalid automaton: {e}")
    return nfa, extra


def parse_nfa(text: str) -> Nfa3:
    nfa, extra = _parse(text)
    if any(extra.values()):
        logging.debug("probability lines ignored while reading a plain automaton")
    return nfa


def parse_pnfa(text: str) -> ProbabilisticNfa:
    nfa, extra = _parse(text)
    k, n = nfa.k, len(nfa.alphabet)
    finals = {"pfinal+": np.zeros(k), "pfinal-": np.zeros(k)}
    trans = {"ptrans+": np.zeros((n, k, k)), "ptrans-": np.zeros((n, k, k))}
    for tag, table in finals.items():
        for q, value in extra[tag]:
            if not 1 <= q <= k:
                raise FormatError(f"{tag} line for state {q} outside 1..{k}")
            table[q - 1] = value
    for tag, table in trans.items():
        for i, s, j, value in extra[tag]:
            if (i, s, j) not in nfa.transitions:
                raise FormatError(f"{tag} line for missing transition {(i, nfa.alphabet[s], j)}")
            table[s, i - 1, j - 1] = value
    try:
        return ProbabilisticNfa(
            nfa=nfa,
            gamma_f_pos=finals["pfinal+"],
            gamma_f_neg=finals["pfinal-"],
            gamma_d_pos=trans["ptrans+"],
            gamma_d_neg=trans["ptrans-"],
        )
    except ValueError as e:
        raise FormatError(f"invalid probabilistic automaton: {e}")


class AutomatonRepository:
    """Reads and writes automaton files"""

    def __init__(self, directory: Path = None):
        self.directory = Path(directory) if directory else None

    def _resolve(self, path) -> Path:
        path = Path(path)
        if self.directory is not None and not path.is_absolute():
            return self.directory / path
        return path

    def save_nfa(self, path, nfa: Nfa3) -> Path:
        """Write an automaton file"""
        target = self._resolve(path)
        target.write_text(format_nfa(nfa), encoding="utf-8")
        return target

    def load_nfa(self, path) -> Nfa3:
        """Read an automaton file"""
        return parse_nfa(self._resolve(path).read_text(encoding="utf-8"))

    def save_pnfa(self, path, pnfa: ProbabilisticNfa) -> Path:
        """Write a probabilistic automaton file"""
        target = self._resolve(path)
        target.write_text(format_pnfa(pnfa), encoding="utf-8")
        return target

    def load_pnfa(self, path) -> ProbabilisticNfa:
        """Read a probabilistic automaton file"""
        return parse_pnfa(self._resolve(path).read_text(encoding="utf-8"))
