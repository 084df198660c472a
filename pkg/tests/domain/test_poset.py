import math

import pytest
from hypothesis import given

from src.domain.exceptions import InvalidPosetError, PopSyntaxError
from src.domain.poset import (
    LabeledPoset,
    block_reversal,
    complement,
    disjoint_sum,
    format_pop,
    from_classical,
    induced_subposet,
    ordinal_sum,
    parse_pop,
    poset_from_tuple,
    prefix,
    reverse,
    standardise,
    tuple_notation,
    without,
)

from ..strategies import chain_component_posets


def test_parse_and_format_pop():
    p = parse_pop("pop 5: c[3>5>1>2], i[4]")

    # Check the chain reads top first.
    assert p.less(2, 1) and p.less(1, 5) and p.less(5, 3)
    assert p.less(2, 3)
    assert not p.comparable(4, 1)

    # Check canonical printing.
    assert format_pop(p) == "pop 5: c[3>5>1>2], i[4]"
    assert str(p) == format_pop(p)

    # Check structure.
    assert p.isolated_vertices() == {4}
    assert p.connected_components() == [frozenset({1, 2, 3, 5}), frozenset({4})]
    assert p.hasse_edges() == {(2, 1), (1, 5), (5, 3)}
    assert p.all_chains()


def test_parse_pop_non_chain_component():
    p = parse_pop("pop 3: h[3>1;3>2]")

    assert p.less(1, 3) and p.less(2, 3)
    assert not p.comparable(1, 2)
    assert not p.all_chains()
    assert format_pop(p) == "pop 3: h[3>1;3>2]"

    # Check tuple notation refuses non-chains.
    with pytest.raises(InvalidPosetError):
        tuple_notation(p)


def test_parse_pop_empty_poset():
    p = parse_pop("pop 0:")

    assert p.size == 0
    assert p.linear_extensions() == [()]
    assert format_pop(p) == "pop 0:"

    # Check it is the identity for both sums.
    q = from_classical((2, 1))
    assert disjoint_sum(p, q) == q
    assert ordinal_sum(q, p) == q


def test_parse_pop_errors_carry_positions():
    # Check unknown component kind.
    with pytest.raises(PopSyntaxError) as info:
        parse_pop("pop 3: c[2>3], x[1]")
    assert info.value.position == 15
    assert "position 15" in str(info.value)

    # Check label outside the range.
    with pytest.raises(PopSyntaxError) as info:
        parse_pop("pop 3: c[2>4], i[1]")
    assert info.value.position == 11

    # Check missing labels.
    with pytest.raises(PopSyntaxError) as info:
        parse_pop("pop 3: c[2>3]")
    assert info.value.position == len("pop 3: c[2>3]")

    # Check repeated labels.
    with pytest.raises(PopSyntaxError):
        parse_pop("pop 2: i[1], i[1]")

    # Check cycles.
    with pytest.raises(PopSyntaxError):
        parse_pop("pop 2: h[1>2;2>1]")

    # Check missing header.
    with pytest.raises(PopSyntaxError) as info:
        parse_pop("  c[1>2]")
    assert info.value.position == 2

    # Check a syntax error is still a poset error.
    with pytest.raises(InvalidPosetError):
        parse_pop("pop 1: i[1] trailing")


def test_labeled_poset_rejects_bad_relations():
    with pytest.raises(InvalidPosetError):
        LabeledPoset(2, frozenset({(1, 3)}))

    with pytest.raises(InvalidPosetError):
        LabeledPoset(2, frozenset({(1, 2), (2, 1)}))

    # Check closure is required.
    with pytest.raises(InvalidPosetError):
        LabeledPoset(3, frozenset({(1, 2), (2, 3)}))

    assert LabeledPoset.build(3, [(1, 2), (2, 3)]).less(1, 3)


def test_pattern_sets():
    # Check a classical pattern is its own pattern set.
    assert from_classical((2, 3, 1)).pattern_set() == {(2, 3, 1)}

    # Check the pattern sets of the insertion variants.
    assert parse_pop("pop 3: c[3>2], i[1]").pattern_set() == {(1, 2, 3), (2, 1, 3), (3, 1, 2)}
    assert parse_pop("pop 3: c[2>3], i[1]").pattern_set() == {(1, 3, 2), (2, 3, 1), (3, 2, 1)}

    # Check the antichain.
    assert len(LabeledPoset.antichain(3).linear_extensions()) == 6


def test_tuple_notation():
    p = poset_from_tuple("(5,3,1,2;4)")
    assert p == parse_pop("pop 5: c[5>3>1>2], i[4]")
    assert tuple_notation(p) == "(5,3,1,2;4)"

    # Check two chains and a singleton.
    q = poset_from_tuple("(1,3;4,2;5)")
    assert format_pop(q) == "pop 5: c[1>3], c[4>2], i[5]"
    assert tuple_notation(q) == "(1,3;4,2;5)"

    # Check chains listed top first.
    assert poset_from_tuple("(1,3;2)").pattern_set() == {(2, 3, 1), (3, 1, 2), (3, 2, 1)}

    with pytest.raises(PopSyntaxError):
        poset_from_tuple("1,2;3")


def test_subposets():
    p = parse_pop("pop 5: c[3>5>1>2], i[4]")

    assert prefix(p, 3) == parse_pop("pop 3: c[3>1>2]")
    assert without(p, {4}) == parse_pop("pop 4: c[3>4>1>2]")

    fragment = induced_subposet(p, {1, 3, 4})
    assert fragment.relation == {(1, 3)}
    assert fragment.standardise() == parse_pop("pop 3: c[2>1], i[3]")

    with pytest.raises(InvalidPosetError):
        induced_subposet(p, {6})

    with pytest.raises(InvalidPosetError):
        standardise([1, 1], [])


def test_symmetries_and_sums():
    first_second = parse_pop("pop 3: c[3>2], i[1]")

    assert reverse(first_second) == parse_pop("pop 3: c[1>2], i[3]")
    assert complement(first_second) == parse_pop("pop 3: c[2>3], i[1]")

    # Check sums.
    single = LabeledPoset.antichain(1)
    assert ordinal_sum(single, single) == from_classical((1, 2))
    assert disjoint_sum(from_classical((1, 2)), single) == parse_pop("pop 3: c[2>1], i[3]")


def test_block_reversal():
    p, q = from_classical((1, 2)), LabeledPoset.antichain(1)

    # Check the two block reversals swap the summands.
    first = block_reversal(disjoint_sum(p, q), range(1, 3))
    assert first == parse_pop("pop 3: c[1>2], i[3]")
    assert block_reversal(reverse(first), range(1, 2)) == disjoint_sum(q, p)

    # Check a block must not split a component.
    with pytest.raises(InvalidPosetError):
        block_reversal(parse_pop("pop 3: c[3>1], i[2]"), [1, 2])

    # Check a block must be contiguous.
    with pytest.raises(InvalidPosetError):
        block_reversal(LabeledPoset.antichain(3), [1, 3])


@given(p=chain_component_posets())
def test_format_pop_round_trips(p):
    assert parse_pop(format_pop(p)) == p
    assert poset_from_tuple(tuple_notation(p)) == p


@given(p=chain_component_posets())
def test_symmetries_are_involutions(p):
    assert reverse(reverse(p)) == p
    assert complement(complement(p)) == p
    assert reverse(p).pattern_set() == {sigma[::-1] for sigma in p.pattern_set()}


@given(p=chain_component_posets())
def test_only_antichains_have_every_ordering(p):
    assert (len(p.linear_extensions()) == math.factorial(p.size)) == (not p.relation)


def test_antichain_linear_extensions():
    assert len(LabeledPoset.antichain(4).linear_extensions()) == 24
    assert parse_pop("pop 4: c[2>1], i[3], i[4]").linear_extensions() != LabeledPoset.antichain(4).linear_extensions()


@given(
    p=chain_component_posets(max_size=3),
    q=chain_component_posets(max_size=3),
    r=chain_component_posets(max_size=3),
)
def test_sums_are_associative(p, q, r):
    assert ordinal_sum(ordinal_sum(p, q), r) == ordinal_sum(p, ordinal_sum(q, r))
    assert disjoint_sum(disjoint_sum(p, q), r) == disjoint_sum(p, disjoint_sum(q, r))
