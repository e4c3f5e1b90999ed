"""Concrete transduction clauses: ordered head/tail decomposition of a pair.

Both sides of an example are decomposed by repeatedly splitting a sequence
into head and tail, alternating input/output steps row by row. A chain stops
once its tail was already produced by either chain (the shared suffix is then
reused through one variable) or once the tail cannot be split further. A
trailing element that exists on one side only (a deleted or inserted
constant) keeps its chain alive for one extra step so the element is
consumed explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .tokens import ExamplePair, TokenSeq


class Chain(str, Enum):
    IN = "I"
    OUT = "O"


class InputTooShort(ValueError):
    pass


@dataclass(frozen=True)
class DecompStep:
    chain: Chain
    whole: TokenSeq
    head: str
    tail: TokenSeq


@dataclass(frozen=True)
class ConcreteClause:
    pair: ExamplePair
    steps: tuple[DecompStep, ...]


def side_constants(pair: ExamplePair) -> tuple[frozenset[str], frozenset[str]]:
    """(input constants, output constants) under set semantics: a token is a
    constant of one side iff it never occurs on the other side."""
    inset, outset = set(pair.input), set(pair.output)
    return frozenset(inset - outset), frozenset(outset - inset)


class _ChainState:
    def __init__(self, chain: Chain, root: TokenSeq, consts: frozenset[str]):
        self.chain = chain
        self.current = root
        self.consts = consts
        # chains over sequences shorter than two have nothing to decompose
        self.active = len(root) >= 2

    def emit(self, memo: set[TokenSeq]) -> DecompStep:
        whole = self.current
        head, tail = whole[0], whole[1:]
        step = DecompStep(self.chain, whole, head, tail)
        seen = tail in memo
        memo.add(whole)
        memo.add(tail)
        if seen or len(tail) == 0:
            self.active = False
        elif len(tail) == 1 and tail[0] not in self.consts:
            # a lone surviving constant still has to be consumed; anything
            # else ends the chain here (the singleton aliases its element)
            self.active = False
        self.current = tail
        return step


def decompose(pair: ExamplePair) -> ConcreteClause:
    """Build the decomposition steps for a pair in canonical interleaved
    order: one input step then one output step per row while both chains are
    active, then the remainder of the surviving chain."""
    if len(pair.input) < 2:
        raise InputTooShort(
            f"need at least two input tokens, got {len(pair.input)}")
    in_consts, out_consts = side_constants(pair)
    chains = (
        _ChainState(Chain.IN, pair.input, in_consts),
        _ChainState(Chain.OUT, pair.output, out_consts),
    )
    memo: set[TokenSeq] = set()
    steps: list[DecompStep] = []
    while any(c.active for c in chains):
        for chain in chains:
            if chain.active:
                steps.append(chain.emit(memo))
    return ConcreteClause(pair, tuple(steps))


def step_count(pair: ExamplePair) -> tuple[int, int]:
    """Number of emitted (input, output) steps."""
    clause = decompose(pair)
    n_in = sum(1 for s in clause.steps if s.chain is Chain.IN)
    return n_in, len(clause.steps) - n_in
