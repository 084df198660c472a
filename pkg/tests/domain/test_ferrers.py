import json

import pytest
from hypothesis import given
import hypothesis.strategies as st

from src.domain.exceptions import (
    BudgetExceededError,
    InvalidBoardError,
    InvalidTransversalError,
)
from src.domain.ferrers import (
    EssentialOccurrence,
    FerrersBoard,
    Transversal,
    board_avoiders,
    boards,
    contains_classical_in_board,
    contains_pattern_set_in_board,
    contains_pop_in_board,
    count_board_avoiders,
    essential_occurrence,
    find_occurrence_in_board,
    shape_wilf_check,
    transversals,
)
from src.domain.permutation import contains_pop, count_avoiders
from src.domain.poset import from_classical, parse_pop

from ..strategies import chain_component_posets


def test_ferrers_board_geometry():
    board = FerrersBoard.parse("(5,5,4,3,3)")

    assert board.row_lengths == (5, 5, 4, 3, 3)
    assert board.format() == "(5,5,4,3,3)"
    assert (board.n_rows, board.n_columns) == (5, 5)
    assert board.column_height(4) == 3
    assert board.column_height(5) == 2
    assert board.contains_cell(3, 4)
    assert not board.contains_cell(4, 4)
    assert not board.is_square
    assert board.supports_transversal

    # Check the corner sub-board.
    assert board.corner_subboard(1) == FerrersBoard((4, 4, 3, 2))
    assert board.corner_subboard(5) == FerrersBoard(())

    assert FerrersBoard.square(3).is_square


def test_ferrers_board_validation():
    with pytest.raises(InvalidBoardError):
        FerrersBoard((2, 3))
    with pytest.raises(InvalidBoardError):
        FerrersBoard((0,))
    with pytest.raises(InvalidBoardError):
        FerrersBoard.parse("5,5")
    with pytest.raises(InvalidBoardError):
        FerrersBoard.parse("(a)")

    # Check boards too thin for a transversal.
    assert not FerrersBoard((2, 1, 1)).supports_transversal


def test_boards_enumeration():
    assert boards(0) == []
    assert boards(2) == [FerrersBoard((2, 1)), FerrersBoard((2, 2))]
    assert [b.format() for b in boards(3)] == ["(3,2,1)", "(3,2,2)", "(3,3,1)", "(3,3,2)", "(3,3,3)"]

    # Check the Catalan numbers.
    assert [len(boards(n)) for n in range(1, 6)] == [1, 2, 5, 14, 42]


def test_transversals():
    assert len(list(transversals(FerrersBoard.square(3)))) == 6
    assert [t.assignment for t in transversals(FerrersBoard((3, 2, 1)))] == [(3, 2, 1)]
    assert [t.assignment for t in transversals(FerrersBoard(()))] == [()]
    assert list(transversals(FerrersBoard((2, 1, 1)))) == []


def test_transversal_validation():
    board = FerrersBoard.parse("(5,5,4,4,3)")
    t = Transversal.parse("45312", board)

    assert t.assignment == (4, 5, 3, 1, 2)
    assert t.row_of(2) == 5
    assert t.cells() == [(4, 1), (5, 2), (3, 3), (1, 4), (2, 5)]
    assert str(t) == "45312"
    assert Transversal.parse("4,5,3,1,2", board) == t

    # Check a 1 outside the board.
    with pytest.raises(InvalidTransversalError):
        Transversal(FerrersBoard((2, 1)), (1, 2))

    # Check repeated rows.
    with pytest.raises(InvalidTransversalError):
        Transversal(FerrersBoard.square(2), (1, 1))

    # Check a transversal error is a board error.
    with pytest.raises(InvalidBoardError):
        Transversal.parse("x", FerrersBoard.square(1))


def test_containment_needs_the_rectangle_inside():
    descent = from_classical((2, 1))
    staircase = Transversal(FerrersBoard((3, 2, 1)), (3, 2, 1))

    # Check the permutation contains the pattern but the board does not.
    assert contains_pop(staircase.assignment, descent)
    assert not contains_pop_in_board(staircase, descent)
    assert not contains_classical_in_board(staircase, (2, 1))

    square = Transversal(FerrersBoard.square(3), (3, 2, 1))
    assert contains_pop_in_board(square, descent)
    assert find_occurrence_in_board(Transversal(FerrersBoard.square(2), (2, 1)), descent) == (1, 2)


def test_essential_occurrence():
    p = parse_pop("pop 3: c[2>1], i[3]")
    t = Transversal(FerrersBoard.square(3), (1, 3, 2))

    assert essential_occurrence(t, p) == EssentialOccurrence(rows=(1, 3), columns=(1, 2, 3))
    assert essential_occurrence(Transversal(FerrersBoard.square(3), (3, 2, 1)), p) is None

    # Check only square boards are accepted.
    with pytest.raises(InvalidBoardError):
        essential_occurrence(Transversal(FerrersBoard((2, 1)), (2, 1)), p)


def test_board_avoiders():
    p = from_classical((1, 3, 2))

    # Check square boards count like permutations.
    assert count_board_avoiders(FerrersBoard.square(4), p) == count_avoiders(p, 4).counts[-1] == 14

    # Check lexicographic order.
    avoiding = [t.assignment for t in board_avoiders(FerrersBoard.square(3), from_classical((2, 1)))]
    assert avoiding == [(1, 2, 3)]

    assert count_board_avoiders(FerrersBoard((3, 2, 1)), from_classical((2, 1))) == 1


def test_shape_wilf_check():
    report = shape_wilf_check(parse_pop("pop 3: c[3>2], i[1]"), parse_pop("pop 3: c[2>3], i[1]"), 4)

    assert report.holds
    assert report.counterexample is None
    assert len(report.rows) == 1 + 2 + 5 + 14

    # Check a failing pair names the first board.
    report = shape_wilf_check(from_classical((1, 2, 3)), parse_pop("pop 3: c[2>1], i[3]"), 3)
    assert not report.holds
    assert report.counterexample.board == "(3,3,3)"
    assert (report.counterexample.left, report.counterexample.right) == (5, 3)

    document = json.loads(report.model_dump_json())
    assert document["holds"] is False
    assert document["counterexample"] == {"board": "(3,3,3)", "left": 5, "right": 3, "equal": False}
    assert len(document["rows"]) == 1 + 2 + 5

    with pytest.raises(BudgetExceededError):
        shape_wilf_check(from_classical((1, 2)), from_classical((2, 1)), 7)


@given(p=chain_component_posets(max_size=3), n=st.integers(min_value=1, max_value=4), data=st.data())
def test_board_detectors_agree(p, n, data):
    board = data.draw(st.sampled_from(boards(n)))
    for t in transversals(board):
        assert contains_pop_in_board(t, p) == contains_pattern_set_in_board(t, p)
