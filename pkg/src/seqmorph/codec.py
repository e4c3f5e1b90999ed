"""Integer-sequence encoding of abstract clauses, run compression, and the
reverse reconstruction.

A clause is encoded as:
  * seq1 - differences between successive second-argument variable indices,
    one entry per gap between variable slots,
  * seq2 - per-literal gap between first and third argument indices,
  * mask - the slot kind of every second argument (variable / constant /
    anonymous),
  * order - which chain each literal belongs to.

Reconstruction walks the literals again: first arguments follow the chain
linkage, second arguments follow base2 plus the accumulated seq1 entries,
and each third argument is either the next fresh variable or a back
reference to an existing one. Gaps are interpreted strictly (a gap must land
exactly on the fresh counter or below it) when round-tripping a training
clause; rule instantiation at other lengths uses the anchored interpretation
where positive gaps mean "fresh" and explicit back references carry the
absolute target index, which is stable across lengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .abstraction import AbstractClause, Anon, Const, Literal, Var
from .clause import Chain

V = "V"
A = "A"

MaskSym = str | tuple[str, str]  # "V", "A", or ("C", token)
Symbol = object


class InvalidEncoding(ValueError):
    pass


@dataclass(frozen=True)
class Backref:
    """Anchored third-argument entry: reference variable `target` directly."""

    target: int


@dataclass(frozen=True)
class EncodedClause:
    base2: int
    seq1: tuple[int, ...]
    seq2: tuple[int, ...]
    mask: tuple[MaskSym, ...]
    order: tuple[Chain, ...]
    L0: int
    delta: int


@dataclass(frozen=True)
class Run:
    count: int
    pattern: tuple

    def expand(self) -> tuple:
        return self.pattern * self.count


CompressedSeq = tuple[Run, ...]


def _mask_sym(slot) -> MaskSym:
    if isinstance(slot, Var):
        return V
    if isinstance(slot, Const):
        return ("C", slot.token)
    return A


def encode(clause: AbstractClause) -> EncodedClause:
    """Project a valid clause onto its four sequences."""
    order = tuple(lit.chain for lit in clause.literals)
    mask = tuple(_mask_sym(lit.arg2) for lit in clause.literals)
    v_indices = [lit.arg2.index for lit in clause.literals
                 if isinstance(lit.arg2, Var)]
    base2 = v_indices[0] if v_indices else 0
    seq1 = tuple(b - a for a, b in zip(v_indices, v_indices[1:]))
    seq2 = tuple(lit.arg3 - lit.arg1 for lit in clause.literals)
    return EncodedClause(base2, seq1, seq2, mask, order,
                         clause.input_length, clause.delta)


def compress(seq: Sequence) -> CompressedSeq:
    """Minimal segmentation of a sequence into runs.

    A term is either a repeat (count >= 2 of any pattern) or a single
    literal symbol. Among minimal segmentations the one preferring shorter
    patterns left to right wins, so the result is deterministic.
    """
    items = tuple(seq)
    n = len(items)
    # best[i] = (terms needed for items[i:], chosen (count, pattern_len))
    best: list[tuple[int, tuple[int, int] | None]] = [(0, None)] * (n + 1)
    for i in range(n - 1, -1, -1):
        choice: tuple[int, tuple[int, int]] | None = None
        for plen in range(1, n - i + 1):
            pattern = items[i:i + plen]
            max_reps = (n - i) // plen
            for reps in range(1, max_reps + 1):
                if reps == 1 and plen > 1:
                    continue
                if items[i + plen * (reps - 1):i + plen * reps] != pattern:
                    break
                cost = 1 + best[i + plen * reps][0]
                if choice is None or cost < choice[0]:
                    choice = (cost, (reps, plen))
        assert choice is not None
        best[i] = choice
    runs: list[Run] = []
    i = 0
    while i < n:
        reps, plen = best[i][1]
        runs.append(Run(reps, items[i:i + plen]))
        i += reps * plen
    return tuple(runs)


def expand(cseq: Iterable[Run]) -> tuple:
    out: list = []
    for run in cseq:
        if run.count < 1:
            raise InvalidEncoding("run counts must be positive")
        out.extend(run.expand())
    return tuple(out)


def decode_sequences(order: Sequence[Chain], mask: Sequence[MaskSym],
                     base2: int, seq1: Sequence[int], seq2: Sequence,
                     delta: int, L: int, anchored: bool = False) -> AbstractClause:
    """Rebuild an abstract clause from expanded sequences.

    seq2 entries are plain integer gaps or Backref symbols (anchored form
    only). Raises InvalidEncoding on inconsistent lengths or indices.
    """
    if not (len(order) == len(mask) == len(seq2)):
        raise InvalidEncoding("order, mask and seq2 must have equal lengths")
    n_v = sum(1 for s in mask if s == V)
    if len(seq1) != max(n_v - 1, 0):
        raise InvalidEncoding("seq1 length must be one less than the "
                              "number of variable slots")
    counter = 3
    current = {Chain.IN: 1, Chain.OUT: 2}
    literals: list[Literal] = []
    v_seen = 0
    prev_v = base2
    for chain, sym, gap in zip(order, mask, seq2):
        arg1 = current[chain]
        if sym == V:
            idx = base2 if v_seen == 0 else prev_v + seq1[v_seen - 1]
            prev_v, v_seen = idx, v_seen + 1
            if idx == counter:
                counter += 1
            elif not 1 <= idx < counter:
                raise InvalidEncoding(f"variable slot index {idx} out of range")
            arg2 = Var(idx)
        elif sym == A:
            arg2 = Anon()
        elif isinstance(sym, tuple) and sym[0] == "C":
            arg2 = Const(sym[1])
        else:
            raise InvalidEncoding(f"unknown mask symbol {sym!r}")
        if isinstance(gap, Backref):
            if not (anchored and 1 <= gap.target < counter):
                raise InvalidEncoding(f"bad back reference {gap.target}")
            arg3 = gap.target
        else:
            arg3 = arg1 + gap
            if arg3 == counter:
                counter += 1
            elif arg3 > counter:
                if not anchored:
                    raise InvalidEncoding(
                        f"gap {gap} points past the fresh counter")
                # drifted fresh gap: the entry is redundant, take the counter
                arg3 = counter
                counter += 1
            elif arg3 < 1:
                raise InvalidEncoding(f"gap {gap} points below variable 1")
        literals.append(Literal(chain, arg1, arg2, arg3))
        current[chain] = arg3
    return AbstractClause(tuple(literals), counter - 1, delta, L)


def decode(enc: EncodedClause, L: int) -> AbstractClause:
    """Strict reconstruction of a raw encoding (round-trip at L == L0)."""
    return decode_sequences(enc.order, enc.mask, enc.base2, enc.seq1,
                            enc.seq2, enc.delta, L)


def validate(clause: AbstractClause) -> list[str]:
    """Well-formedness: chain linkage, dense numbering, groundability.

    Returns a list of violations; an empty list means the clause is valid.
    """
    violations: list[str] = []
    current = {Chain.IN: 1, Chain.OUT: 2}
    started = {Chain.IN: False, Chain.OUT: False}
    counter = 3

    def touch(idx: int, where: str):
        nonlocal counter
        if idx == counter:
            counter += 1
        elif not 1 <= idx < counter:
            violations.append(f"{where}: index {idx} breaks dense numbering")

    for i, lit in enumerate(clause.literals):
        root = 1 if lit.chain is Chain.IN else 2
        if not started[lit.chain]:
            if lit.arg1 != root:
                violations.append(
                    f"literal {i + 1}: first {lit.chain.name} literal must "
                    f"start at variable {root}")
            started[lit.chain] = True
        elif lit.arg1 != current[lit.chain]:
            violations.append(
                f"literal {i + 1}: arg1 {lit.arg1} breaks the "
                f"{lit.chain.name} chain linkage")
        if lit.arg1 == lit.arg3:
            violations.append(f"literal {i + 1}: arg1 equals arg3")
        if isinstance(lit.arg2, Var):
            touch(lit.arg2.index, f"literal {i + 1} arg2")
        touch(lit.arg3, f"literal {i + 1} arg3")
        current[lit.chain] = lit.arg3

    if counter - 1 != clause.max_var:
        violations.append(
            f"max_var {clause.max_var} does not match used variables "
            f"{counter - 1}")

    # groundability: the output root must resolve through input-side
    # bindings and output constructions actually reachable from it
    bound = {1}
    for lit in clause.literals:
        if lit.chain is Chain.IN:
            if isinstance(lit.arg2, Var):
                bound.add(lit.arg2.index)
            bound.add(lit.arg3)
    construction = {lit.arg1: lit for lit in clause.literals
                    if lit.chain is Chain.OUT}

    def resolvable(v: int, visiting: frozenset[int]) -> bool:
        if v in bound:
            return True
        if v in visiting or v not in construction:
            return False
        lit = construction[v]
        visiting = visiting | {v}
        if isinstance(lit.arg2, Var) and not resolvable(lit.arg2.index, visiting):
            return False
        if isinstance(lit.arg2, Anon):
            return False
        return resolvable(lit.arg3, visiting)

    if clause.literals and not resolvable(2, frozenset()):
        violations.append("output root is not groundable from the input chain")
    return violations
