"""Ferrers boards in French notation and their transversals.

Row 1 is the bottom (longest) row. A cell ``(row, column)`` is inside the board
when ``column <= row_lengths[row - 1]``. A transversal is stored column by
column: ``assignment[c - 1]`` is the row holding the 1 of column ``c``.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from pydantic import BaseModel, ConfigDict, computed_field

from .exceptions import (
    BudgetExceededError,
    InvalidBoardError,
    InvalidTransversalError,
)
from .permutation import format_permutation, iter_occurrences, standardize
from .poset import LabeledPoset, format_pop, without

logger = logging.getLogger(__name__)

DEFAULT_MAX_BOARD_SIZE = 6


@dataclass(frozen=True)
class FerrersBoard:
    row_lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        lengths = self.row_lengths
        if any(length < 1 for length in lengths):
            raise InvalidBoardError({"row_lengths": lengths, "reason": "non-positive row"})
        if any(a < b for a, b in itertools.pairwise(lengths)):
            raise InvalidBoardError({"row_lengths": lengths, "reason": "rows must not grow upwards"})

    @classmethod
    def square(cls, n: int) -> "FerrersBoard":
        return cls((n,) * n)

    @classmethod
    def parse(cls, text: str) -> "FerrersBoard":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise InvalidBoardError({"text": text})
        inner = body[1:-1].strip()
        try:
            lengths = tuple(int(x) for x in inner.split(",")) if inner else ()
        except ValueError as e:
            raise InvalidBoardError({"text": text}) from e
        return cls(lengths)

    def format(self) -> str:
        return "(" + ",".join(map(str, self.row_lengths)) + ")"

    def __str__(self) -> str:
        return self.format()

    @property
    def n_rows(self) -> int:
        return len(self.row_lengths)

    @property
    def n_columns(self) -> int:
        return self.row_lengths[0] if self.row_lengths else 0

    def row_length(self, row: int) -> int:
        return self.row_lengths[row - 1]

    def column_height(self, column: int) -> int:
        return sum(1 for length in self.row_lengths if length >= column)

    def contains_cell(self, row: int, column: int) -> bool:
        return 1 <= row <= self.n_rows and 1 <= column <= self.row_lengths[row - 1]

    @property
    def is_square(self) -> bool:
        return all(length == self.n_rows for length in self.row_lengths)

    @property
    def supports_transversal(self) -> bool:
        n = self.n_rows
        return self.n_columns == n and all(
            length >= n + 1 - row for row, length in enumerate(self.row_lengths, start=1)
        )

    def corner_subboard(self, i: int) -> "FerrersBoard":
        """The board left after removing the first ``i`` columns and top ``i`` rows."""
        if not 0 <= i <= self.n_rows:
            raise InvalidBoardError({"board": self.format(), "corner": i})
        return FerrersBoard(tuple(length - i for length in self.row_lengths[: self.n_rows - i]))


@dataclass(frozen=True)
class Transversal:
    board: FerrersBoard
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.board.n_rows
        if len(self.assignment) != self.board.n_columns or self.board.n_columns != n:
            raise InvalidTransversalError({"board": self.board.format(), "assignment": self.assignment})
        if sorted(self.assignment) != list(range(1, n + 1)):
            raise InvalidTransversalError({"assignment": self.assignment, "reason": "not a bijection"})
        for column, row in enumerate(self.assignment, start=1):
            if not self.board.contains_cell(row, column):
                raise InvalidTransversalError({"board": self.board.format(), "cell": (row, column)})

    @classmethod
    def parse(cls, text: str, board: FerrersBoard) -> "Transversal":
        text = text.strip()
        try:
            if "," in text:
                rows = tuple(int(x) for x in text.split(","))
            else:
                rows = tuple(int(x) for x in text)
        except ValueError as e:
            raise InvalidTransversalError({"text": text}) from e
        return cls(board, rows)

    def format(self) -> str:
        return format_permutation(self.assignment)

    def __str__(self) -> str:
        return self.format()

    def row_of(self, column: int) -> int:
        return self.assignment[column - 1]

    def cells(self) -> list[tuple[int, int]]:
        return [(row, column) for column, row in enumerate(self.assignment, start=1)]


def boards(n: int) -> list[FerrersBoard]:
    if n < 1:
        return []
    result = []

    def extend(lengths: list[int]) -> None:
        row = len(lengths) + 1
        if row > n:
            result.append(FerrersBoard(tuple(lengths)))
            return
        for length in range(n + 1 - row, lengths[-1] + 1):
            lengths.append(length)
            extend(lengths)
            lengths.pop()

    extend([n])
    return result


def _fill(
    board: FerrersBoard, p: LabeledPoset | None, assignment: list[int], used: list[bool]
) -> Iterator[tuple[int, ...]]:
    column = len(assignment) + 1
    if column > board.n_columns:
        yield tuple(assignment)
        return
    for row in range(1, board.column_height(column) + 1):
        if used[row]:
            continue
        assignment.append(row)
        used[row] = True
        if p is None or not _occurs_ending_here(board, assignment, p):
            yield from _fill(board, p, assignment, used)
        assignment.pop()
        used[row] = False


def transversals(board: FerrersBoard) -> Iterator[Transversal]:
    if not board.supports_transversal:
        return
    for assignment in _fill(board, None, [], [False] * (board.n_rows + 1)):
        yield Transversal(board, assignment)


def _inside(board: FerrersBoard, rows: Sequence[int]):
    def accept(occurrence: tuple[int, ...]) -> bool:
        if not occurrence:
            return True
        top = max(rows[i] for i in occurrence)
        return board.contains_cell(top, occurrence[-1] + 1)

    return accept


def _occurs_ending_here(board: FerrersBoard, rows: Sequence[int], p: LabeledPoset) -> bool:
    end = len(rows) - 1
    found = iter_occurrences(rows, p, end=end, accept=_inside(board, rows))
    return next(found, None) is not None


def find_occurrence_in_board(t: Transversal, p: LabeledPoset) -> tuple[int, ...] | None:
    """Lexicographically least columns of an occurrence whose rectangle lies in the board."""
    occurrence = next(iter_occurrences(t.assignment, p, accept=_inside(t.board, t.assignment)), None)
    if occurrence is None:
        return None
    return tuple(i + 1 for i in occurrence)


def contains_classical_in_board(t: Transversal, sigma: Sequence[int]) -> bool:
    """Direct check: every cell of the ``m x m`` rectangle must be inside the board."""
    m = len(sigma)
    sigma = tuple(sigma)
    for columns in itertools.combinations(range(1, t.board.n_columns + 1), m):
        rows = [t.row_of(c) for c in columns]
        if standardize(rows) != sigma:
            continue
        if all(t.board.contains_cell(r, c) for r in rows for c in columns):
            return True
    return False


def contains_pop_in_board(t: Transversal, p: LabeledPoset) -> bool:
    return find_occurrence_in_board(t, p) is not None


def contains_pattern_set_in_board(t: Transversal, p: LabeledPoset) -> bool:
    return any(contains_classical_in_board(t, sigma) for sigma in p.pattern_set())


@dataclass(frozen=True)
class EssentialOccurrence:
    rows: tuple[int, ...]
    columns: tuple[int, ...]


def essential_occurrence(t: Transversal, p: LabeledPoset) -> EssentialOccurrence | None:
    """Columns ``y_1 < ... < y_r`` whose non-isolated part carries ``st(p - I)``.

    Only square boards are accepted; ``rows`` are the rows of the 1s in the
    non-isolated columns.
    """
    if not t.board.is_square:
        raise InvalidBoardError({"board": t.board.format(), "reason": "essential occurrences need a square board"})
    isolated = p.isolated_vertices()
    core = without(p, isolated)
    core_patterns = core.pattern_set()
    active = [j for j in p.labels if j not in isolated]
    for columns in itertools.combinations(range(1, t.board.n_columns + 1), p.size):
        rows = tuple(t.row_of(columns[j - 1]) for j in active)
        if standardize(rows) in core_patterns:
            return EssentialOccurrence(rows, columns)
    return None


def board_avoiders(board: FerrersBoard, p: LabeledPoset) -> Iterator[Transversal]:
    if not board.supports_transversal or p.size == 0:
        return
    for assignment in _fill(board, p, [], [False] * (board.n_rows + 1)):
        yield Transversal(board, assignment)


@lru_cache(maxsize=4096)
def cached_board_avoiders(board: FerrersBoard, p: LabeledPoset) -> tuple[Transversal, ...]:
    return tuple(board_avoiders(board, p))


def count_board_avoiders(board: FerrersBoard, p: LabeledPoset) -> int:
    return sum(1 for _ in board_avoiders(board, p))


class BoardCount(BaseModel):
    model_config = ConfigDict(frozen=True)

    board: str
    left: int
    right: int

    @computed_field
    @property
    def equal(self) -> bool:
        return self.left == self.right


class ShapeWilfReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    left: str
    right: str
    n_max: int
    rows: tuple[BoardCount, ...] = ()

    @computed_field
    @property
    def holds(self) -> bool:
        return all(row.equal for row in self.rows)

    @computed_field
    @property
    def counterexample(self) -> Optional[BoardCount]:
        return next((row for row in self.rows if not row.equal), None)


def shape_wilf_check(
    p: LabeledPoset,
    p_prime: LabeledPoset,
    n_max: int,
    *,
    budget: int = DEFAULT_MAX_BOARD_SIZE,
) -> ShapeWilfReport:
    if n_max > budget:
        raise BudgetExceededError({"n_max": n_max, "budget": budget})
    rows = []
    for n in range(1, n_max + 1):
        for board in boards(n):
            rows.append(
                BoardCount(
                    board=board.format(),
                    left=count_board_avoiders(board, p),
                    right=count_board_avoiders(board, p_prime),
                )
            )
        logger.debug("Checked %d boards of size %d", len(boards(n)), n)
    report = ShapeWilfReport(left=format_pop(p), right=format_pop(p_prime), n_max=n_max, rows=tuple(rows))
    if not report.holds:
        logger.warning("Shape-Wilf check failed on %s", report.counterexample.board)
    return report
