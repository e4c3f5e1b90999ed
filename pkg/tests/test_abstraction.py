import pytest
from hypothesis import given, strategies as st

from seqmorph.abstraction import (Anon, Const, ShapeMismatch, Var,
                                  abstract_pair, classify_constants,
                                  clause_shape, merge_guards,
                                  repeated_value_warnings)
from seqmorph.clause import Chain
from seqmorph.tokens import ExamplePair


def lits(clause):
    return [(l.chain, l.arg1, l.arg2, l.arg3) for l in clause.literals]


def test_reverse_three_matches_hand_abstraction():
    clause = abstract_pair(ExamplePair(("a", "b", "c"), ("c", "b", "a")))
    assert lits(clause) == [
        (Chain.IN, 1, Var(3), 4),
        (Chain.OUT, 2, Var(5), 6),
        (Chain.IN, 4, Var(7), 5),
        (Chain.OUT, 6, Var(7), 3),
    ]
    assert clause.max_var == 7
    assert clause.delta == 0


def test_reverse_five_matches_hand_abstraction():
    clause = abstract_pair(
        ExamplePair(("a", "b", "c", "d", "e"), ("e", "d", "c", "b", "a")))
    assert lits(clause) == [
        (Chain.IN, 1, Var(3), 4),
        (Chain.OUT, 2, Var(5), 6),
        (Chain.IN, 4, Var(7), 8),
        (Chain.OUT, 6, Var(9), 10),
        (Chain.IN, 8, Var(11), 12),
        (Chain.OUT, 10, Var(11), 13),
        (Chain.IN, 12, Var(9), 5),
        (Chain.OUT, 13, Var(7), 3),
    ]


def test_insert_keeps_output_constant_literal():
    clause = abstract_pair(
        ExamplePair(("a", "b", "c", "d"), ("a", "b", "e", "c", "d")))
    last = clause.literals[5]
    assert last.chain is Chain.OUT
    assert last.arg2 == Const("e")
    # its tail is the shared suffix (c, d), bound on the input side
    in_tails = {l.arg3 for l in clause.literals if l.chain is Chain.IN}
    assert last.arg3 in in_tails


def test_droplast_anonymizes_deleted_element():
    clause = abstract_pair(ExamplePair(("a", "b", "c", "d"), ("a", "b", "c")))
    assert len(clause.literals) == 6
    last = clause.literals[5]
    assert last.chain is Chain.IN
    assert last.arg2 == Anon()
    assert clause.delta == -1


def test_guard_values_stay_literal():
    pair = ExamplePair(("a", "b", "c", "d"), ("a", "b", "c"))
    clause = abstract_pair(pair, guard_values=frozenset({"d"}))
    assert clause.literals[5].arg2 == Const("d")


def test_classify_constants_insert():
    report = classify_constants(
        ExamplePair(("a", "b", "c", "d"), ("a", "b", "e", "c", "d")))
    assert report.output_consts == frozenset({"e"})
    assert report.input_consts == frozenset()


def test_classify_constants_droplast():
    report = classify_constants(
        ExamplePair(("a", "b", "c", "d"), ("a", "b", "c")))
    assert report.output_consts == frozenset()
    assert report.input_consts == frozenset({"d"})


def test_classify_constants_permutation_empty():
    report = classify_constants(ExamplePair(("a", "b"), ("b", "a")))
    assert report.output_consts == frozenset()
    assert report.input_consts == frozenset()


EMAIL_A = ExamplePair(
    ("john", ".", "doe", "@", "gmail", ".", "com"),
    ("firstname", ":", "john", ";", "surname", ":", "doe"))
EMAIL_B = ExamplePair(
    ("mary", ".", "jane", "@", "hotmail", ".", "fr"),
    ("firstname", ":", "mary", ";", "surname", ":", "jane"))


def test_merge_guards_email_examples():
    assert merge_guards(EMAIL_A, EMAIL_B) == frozenset({".", "@"})


def test_merge_guards_identical_examples_keep_all_input_consts():
    pair = ExamplePair(("a", "b", "x", "c"), ("a", "b", "c"))
    assert merge_guards(pair, pair) == classify_constants(pair).input_consts


def test_merge_guards_disagreeing_positions_drop_out():
    a = ExamplePair(("a", "b", "x", "c"), ("a", "b", "c"))
    b = ExamplePair(("a", "b", "y", "c"), ("a", "b", "c"))
    assert merge_guards(a, b) == frozenset()


def test_merge_guards_rejects_different_lengths():
    a = ExamplePair(("a", "b", "c"), ("a", "b"))
    b = ExamplePair(("a", "b", "c", "d"), ("a", "b", "c"))
    with pytest.raises(ShapeMismatch):
        merge_guards(a, b)


def _permutation_pairs(n, rng):
    tokens = [f"t{i}" for i in range(n)]
    shuffled = list(tokens)
    rng.shuffle(shuffled)
    return ExamplePair(tuple(tokens), tuple(shuffled))


@given(st.integers(min_value=2, max_value=8), st.randoms())
def test_numbering_is_dense(n, rng):
    clause = abstract_pair(_permutation_pairs(n, rng))
    used = set()
    for lit in clause.literals:
        used.add(lit.arg1)
        used.add(lit.arg3)
        if isinstance(lit.arg2, Var):
            used.add(lit.arg2.index)
    assert used == set(range(1, clause.max_var + 1))


@given(st.integers(min_value=2, max_value=8), st.randoms())
def test_abstraction_is_idempotent(n, rng):
    pair = _permutation_pairs(n, rng)
    assert abstract_pair(pair) == abstract_pair(pair)


@given(st.integers(min_value=3, max_value=8), st.randoms())
def test_permutation_input_heads_reappear_exactly_once(n, rng):
    # every input-side head variable is used exactly once more elsewhere;
    # holds when both chains unroll fully (no shared-suffix memo cut)
    from hypothesis import assume
    from seqmorph.clause import decompose
    pair = _permutation_pairs(n, rng)
    assume(len(decompose(pair).steps) == 2 * (n - 1))
    clause = abstract_pair(pair)
    for lit in clause.literals:
        if lit.chain is Chain.IN and isinstance(lit.arg2, Var):
            others = 0
            for other in clause.literals:
                if other is lit:
                    continue
                if isinstance(other.arg2, Var) and other.arg2.index == lit.arg2.index:
                    others += 1
                if other.arg3 == lit.arg2.index:
                    others += 1
            assert others == 1


def test_repeated_value_warning():
    assert repeated_value_warnings(
        ExamplePair(("a", "b", "a"), ("a", "b", "a"))) != []
    assert repeated_value_warnings(EMAIL_A) == []


def test_shapes_of_email_examples_agree():
    assert clause_shape(abstract_pair(EMAIL_A)) == clause_shape(abstract_pair(EMAIL_B))
