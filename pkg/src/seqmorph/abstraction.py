"""Abstract transduction clauses: values replaced by numbered variables.

Variable 1 is the input root and variable 2 the output root; body variables
are numbered densely from 3 in first-appearance order, scanning literals left
to right. A singleton tail is identified with its element's variable unless
the element is a side constant. Output constants stay literal, input
constants become anonymous slots unless they are guards.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .clause import Chain, ConcreteClause, decompose
from .tokens import ExamplePair, TokenSeq


class MalformedClause(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    token: str


@dataclass(frozen=True)
class Anon:
    pass


Slot = Var | Const | Anon


@dataclass(frozen=True)
class Literal:
    chain: Chain
    arg1: int
    arg2: Slot
    arg3: int


@dataclass(frozen=True)
class AbstractClause:
    literals: tuple[Literal, ...]
    max_var: int
    delta: int
    input_length: int


@dataclass(frozen=True)
class ConstantReport:
    output_consts: frozenset[str]
    input_consts: frozenset[str]


def classify_constants(pair: ExamplePair) -> ConstantReport:
    """Tokens only ever seen on one side of the example (set semantics)."""
    inset, outset = set(pair.input), set(pair.output)
    return ConstantReport(frozenset(outset - inset), frozenset(inset - outset))


class _Numbering:
    """Dense first-appearance numbering of values, body variables from 3."""

    def __init__(self):
        self.by_value: dict[tuple, int] = {}
        self.next = 3

    def lookup(self, key: tuple) -> int | None:
        return self.by_value.get(key)

    def assign(self, key: tuple) -> int:
        idx = self.by_value.get(key)
        if idx is None:
            idx = self.next
            self.by_value[key] = idx
            self.next += 1
        return idx


def _tail_key(tail: TokenSeq, consts: frozenset[str]) -> tuple:
    if len(tail) == 1 and tail[0] not in consts:
        return ("tok", tail[0])
    return ("seq", tail)


def abstract_clause(concrete: ConcreteClause, consts: ConstantReport,
                    guard_values: frozenset[str] = frozenset()) -> AbstractClause:
    """Substitute variables for values in first-appearance order.

    guard_values must be input constants; they stay literal (checked at
    apply time) instead of being anonymized.
    """
    if not guard_values <= consts.input_consts:
        raise MalformedClause("guards must be input constants")
    pair = concrete.pair
    numbering = _Numbering()
    # a tail equal to a whole root value reuses the root variable
    numbering.by_value[("seq", pair.input)] = 1
    numbering.by_value.setdefault(("seq", pair.output), 2)
    current = {Chain.IN: 1, Chain.OUT: 2}
    side_consts = {Chain.IN: consts.input_consts, Chain.OUT: consts.output_consts}
    literals: list[Literal] = []
    for step in concrete.steps:
        arg1 = current[step.chain]
        head = step.head
        if step.chain is Chain.IN and head in consts.input_consts:
            arg2: Slot = Const(head) if head in guard_values else Anon()
        elif step.chain is Chain.OUT and head in consts.output_consts:
            arg2 = Const(head)
        else:
            arg2 = Var(numbering.assign(("tok", head)))
        arg3 = numbering.assign(_tail_key(step.tail, side_consts[step.chain]))
        literals.append(Literal(step.chain, arg1, arg2, arg3))
        current[step.chain] = arg3
    return AbstractClause(
        literals=tuple(literals),
        max_var=numbering.next - 1,
        delta=len(pair.output) - len(pair.input),
        input_length=len(pair.input),
    )


def abstract_pair(pair: ExamplePair,
                  guard_values: frozenset[str] = frozenset()) -> AbstractClause:
    """decompose + classify_constants + abstract_clause in one step."""
    return abstract_clause(decompose(pair), classify_constants(pair), guard_values)


def _slot_kind(slot: Slot) -> str:
    if isinstance(slot, Var):
        return "V"
    if isinstance(slot, Const):
        return "C"
    return "A"


def clause_shape(clause: AbstractClause) -> tuple:
    """(literal count, chain pattern, slot-kind pattern) used to align two
    same-length examples before guard detection."""
    return (
        len(clause.literals),
        tuple(lit.chain for lit in clause.literals),
        tuple(_slot_kind(lit.arg2) for lit in clause.literals),
    )


def merge_guards(pair_a: ExamplePair, pair_b: ExamplePair) -> frozenset[str]:
    """Input constants that sit in the same literal position of both examples
    with the same value; those become guards (conditional deletion)."""
    if len(pair_a.input) != len(pair_b.input) or len(pair_a.output) != len(pair_b.output):
        raise ShapeMismatch("guard merging needs examples of equal lengths")
    conc_a, conc_b = decompose(pair_a), decompose(pair_b)
    abs_a = abstract_clause(conc_a, classify_constants(pair_a))
    abs_b = abstract_clause(conc_b, classify_constants(pair_b))
    if clause_shape(abs_a) != clause_shape(abs_b):
        raise ShapeMismatch("examples decompose to different clause shapes")
    guards = set()
    for step_a, step_b, lit in zip(conc_a.steps, conc_b.steps, abs_a.literals):
        if isinstance(lit.arg2, Anon) and step_a.head == step_b.head:
            guards.add(step_a.head)
    return frozenset(guards)


def repeated_value_warnings(pair: ExamplePair) -> list[str]:
    """Warn when a non-constant token occurs more than once on a side;
    aliasing repeated values can produce unintended rules."""
    report = classify_constants(pair)
    consts = report.input_consts | report.output_consts
    warnings = []
    for name, side in (("input", pair.input), ("output", pair.output)):
        seen: set[str] = set()
        dupes: set[str] = set()
        for tok in side:
            if tok in consts:
                continue
            if tok in seen:
                dupes.add(tok)
            seen.add(tok)
        if dupes:
            listing = ", ".join(sorted(dupes))
            warnings.append(
                f"repeated {name} token(s) {listing}: repeated values alias "
                f"to one variable; prefer examples with pairwise-distinct tokens")
    return warnings
