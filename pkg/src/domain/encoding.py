"""Top-down insertion of transversals and their {0,1,2} encoding words."""

import logging
from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property

from .exceptions import (
    EncodingError,
    InvalidBoardError,
    MalformedWordError,
    PatternContainedError,
)
from .ferrers import FerrersBoard, Transversal, cached_board_avoiders, contains_pop_in_board
from .poset import LabeledPoset, parse_pop

logger = logging.getLogger(__name__)


class Variant(StrEnum):
    # Avoids {123, 213, 312}: suitable cells are the first and second white cells.
    FIRST_SECOND = "first-second"
    # Avoids {132, 231, 321}: suitable cells are the first and last white cells.
    FIRST_LAST = "first-last"

    @property
    def pop(self) -> LabeledPoset:
        if self is Variant.FIRST_SECOND:
            return parse_pop("pop 3: c[3>2], i[1]")
        return parse_pop("pop 3: c[2>3], i[1]")

    @property
    def partner(self) -> "Variant":
        if self is Variant.FIRST_SECOND:
            return Variant.FIRST_LAST
        return Variant.FIRST_SECOND


@dataclass(frozen=True)
class InsertionState:
    board: FerrersBoard
    # placed[i] is the column of the 1 in row n - i
    placed: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.board.supports_transversal:
            raise InvalidBoardError({"board": self.board.format(), "reason": "no transversal"})

    @property
    def stage(self) -> int:
        return len(self.placed) + 1

    @property
    def is_complete(self) -> bool:
        return len(self.placed) == self.board.n_rows

    @property
    def current_row(self) -> int:
        return self.board.n_rows - len(self.placed)

    def cells(self) -> list[tuple[int, int]]:
        top = self.board.n_rows
        return [(top - i, column) for i, column in enumerate(self.placed)]

    @cached_property
    def gray_columns(self) -> frozenset[int]:
        return frozenset(self.placed)

    def white_columns(self) -> list[int]:
        if self.is_complete:
            return []
        width = self.board.row_length(self.current_row)
        return [c for c in range(1, width + 1) if c not in self.gray_columns]

    def place(self, column: int) -> "InsertionState":
        if column not in self.white_columns():
            raise EncodingError({"stage": self.stage, "column": column, "reason": "cell is not white"})
        return InsertionState(self.board, self.placed + (column,))

    def to_transversal(self) -> Transversal:
        if not self.is_complete:
            raise EncodingError({"stage": self.stage, "reason": "insertion not finished"})
        assignment = [0] * self.board.n_columns
        for row, column in self.cells():
            assignment[column - 1] = row
        return Transversal(self.board, tuple(assignment))


def is_blocked(state: InsertionState) -> bool:
    """A placed 1 left of the first white column, inside the rectangle under the second."""
    whites = state.white_columns()
    if len(whites) < 2:
        return True
    first, second = whites[0], whites[1]
    height = state.board.column_height(second)
    return any(column < first and row <= height for row, column in state.cells())


def suitable_positions(state: InsertionState, variant: Variant) -> list[int]:
    whites = state.white_columns()
    if not whites:
        raise EncodingError({"stage": state.stage, "reason": "no white cell left"})
    if len(whites) == 1:
        return whites
    if variant is Variant.FIRST_SECOND:
        return [whites[0]] if is_blocked(state) else [whites[0], whites[1]]
    return [whites[-1]] if is_blocked(state) else [whites[0], whites[-1]]


def completable_positions(state: InsertionState, variant: Variant) -> list[int]:
    """Columns of the current row from which some avoiding completion exists."""
    row = state.current_row
    cells = state.cells()
    columns = set()
    for t in cached_board_avoiders(state.board, variant.pop):
        if all(t.row_of(column) == r for r, column in cells):
            columns.add(t.assignment.index(row) + 1)
    return sorted(columns)


@dataclass(frozen=True)
class EncodingWord:
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(letter not in (0, 1, 2) for letter in self.letters):
            raise MalformedWordError({"letters": self.letters})

    @classmethod
    def parse(cls, text: str) -> "EncodingWord":
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError as e:
            raise MalformedWordError({"text": text}) from e

    def format(self) -> str:
        return ",".join(map(str, self.letters))

    def __str__(self) -> str:
        return self.format()

    def __len__(self) -> int:
        return len(self.letters)


def encode(t: Transversal, variant: Variant) -> EncodingWord:
    if contains_pop_in_board(t, variant.pop):
        raise PatternContainedError({"transversal": t.format(), "variant": str(variant)})
    state = InsertionState(t.board)
    letters = []
    while not state.is_complete:
        candidates = suitable_positions(state, variant)
        column = t.assignment.index(state.current_row) + 1
        if column not in candidates:
            raise EncodingError({"stage": state.stage, "column": column, "suitable": candidates})
        letters.append(0 if len(candidates) == 1 else candidates.index(column) + 1)
        last_white = len(state.white_columns()) == 1
        state = state.place(column)
        # one white cell left: columns 1..i are now all gray
        if last_white and state.gray_columns != frozenset(range(1, state.stage)):
            raise EncodingError({"stage": state.stage - 1, "reason": "gray prefix broken"})
    return EncodingWord(tuple(letters))


def decode(word: EncodingWord, board: FerrersBoard, variant: Variant) -> Transversal:
    if len(word) != board.n_rows:
        raise MalformedWordError({"word": word.format(), "board": board.format()})
    state = InsertionState(board)
    for letter in word.letters:
        candidates = suitable_positions(state, variant)
        if (len(candidates) == 1) != (letter == 0):
            raise MalformedWordError({"word": word.format(), "stage": state.stage, "letter": letter})
        state = state.place(candidates[max(letter, 1) - 1])
    return state.to_transversal()


def theorem16_map(t: Transversal, variant: Variant = Variant.FIRST_SECOND) -> Transversal:
    return decode(encode(t, variant), t.board, variant.partner)


def encoding_words(board: FerrersBoard, variant: Variant) -> list[EncodingWord]:
    words = []

    def extend(state: InsertionState, letters: list[int]) -> None:
        if state.is_complete:
            words.append(EncodingWord(tuple(letters)))
            return
        candidates = suitable_positions(state, variant)
        choices = [0] if len(candidates) == 1 else [1, 2]
        for letter, column in zip(choices, candidates):
            letters.append(letter)
            extend(state.place(column), letters)
            letters.pop()

    extend(InsertionState(board), [])
    return words


@dataclass(frozen=True)
class Restart:
    stage: int
    board: FerrersBoard
    transversal: Transversal


def restart_stages(t: Transversal, variant: Variant) -> list[Restart]:
    """Stages after which the 1s fill the first ``i`` columns and top ``i`` rows."""
    board = t.board
    n = board.n_rows
    restarts = []
    state = InsertionState(board)
    for i in range(1, n):
        state = state.place(t.assignment.index(n - i + 1) + 1)
        if set(state.placed) == set(range(1, i + 1)) and board.row_length(n - i + 1) <= i:
            corner = board.corner_subboard(i)
            rest = Transversal(corner, t.assignment[i:])
            restarts.append(Restart(i, corner, rest))
    logger.debug("Found %d restart stages for %s", len(restarts), t.format())
    return restarts
