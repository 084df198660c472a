import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .exceptions import (
    HypothesisError,
    NotShapeWilfEquivalentError,
    PatternContainedError,
    ShapeMismatchError,
)
from .ferrers import FerrersBoard, Transversal, board_avoiders
from .permutation import (
    Permutation,
    contains_pop,
    ends_at,
    iter_occurrences,
    left_multiply_adjacent,
    standardize,
)
from .poset import (
    LabeledPoset,
    disjoint_sum,
    format_pop,
    induced_subposet,
    prefix,
    without,
)

logger = logging.getLogger(__name__)

InnerMap = Callable[[Transversal], Transversal]


@dataclass(frozen=True, eq=False)
class RankPairing:
    """Pairs the i-th avoider of ``source`` with the i-th avoider of ``target`` on one board."""

    board: FerrersBoard
    source: LabeledPoset
    target: LabeledPoset
    forward: dict[tuple[int, ...], tuple[int, ...]]

    def __call__(self, t: Transversal) -> Transversal:
        if t.board != self.board:
            raise ShapeMismatchError({"expected": self.board.format(), "got": t.board.format()})
        try:
            return Transversal(self.board, self.forward[t.assignment])
        except KeyError:
            raise PatternContainedError(
                {"transversal": t.format(), "pattern": format_pop(self.source)}
            ) from None

    def inverse(self) -> "RankPairing":
        backward = {image: t for t, image in self.forward.items()}
        return RankPairing(self.board, self.target, self.source, backward)


@lru_cache(maxsize=1024)
def rank_bijection(board: FerrersBoard, p: LabeledPoset, p_prime: LabeledPoset) -> RankPairing:
    left = [t.assignment for t in board_avoiders(board, p)]
    right = [t.assignment for t in board_avoiders(board, p_prime)]
    if len(left) != len(right):
        raise NotShapeWilfEquivalentError(
            {
                "board": board.format(),
                "left": format_pop(p),
                "right": format_pop(p_prime),
                "counts": (len(left), len(right)),
            }
        )
    return RankPairing(board, p, p_prime, dict(zip(left, right)))


def _restore(values: Sequence[int], image: Sequence[int]) -> list[int]:
    ordered = sorted(values)
    return [ordered[v - 1] for v in image]


def _apply_on_square(
    word: Sequence[int], p: LabeledPoset, p_prime: LabeledPoset, inner: InnerMap | None
) -> list[int]:
    m = len(word)
    if m == 0:
        return []
    square = FerrersBoard.square(m)
    inner = inner or rank_bijection(square, p, p_prime)
    image = inner(Transversal(square, standardize(word))).assignment
    return _restore(word, image)


# West-type map: patterns sharing everything but the order of their top two labels.


def check_west_hypotheses(p: LabeledPoset, p_prime: LabeledPoset) -> None:
    k = p.size
    if p_prime.size != k or k < 3:
        raise HypothesisError({"reason": "patterns must share a size of at least 3"})
    isolated = p.isolated_vertices()
    if p_prime.isolated_vertices() != isolated:
        raise HypothesisError({"reason": "isolated labels differ"})
    if k - 2 in isolated:
        raise HypothesisError({"reason": f"label {k - 2} is isolated"})
    if prefix(p, k - 2) != prefix(p_prime, k - 2):
        raise HypothesisError({"reason": f"labels 1..{k - 2} induce different posets"})
    lower = [j for j in range(1, k - 1) if j not in isolated]
    for q in (p, p_prime):
        for top in (k - 1, k):
            if not all(q.less(j, top) for j in lower):
                raise HypothesisError({"reason": f"label {top} is not above 1..{k - 2}", "pattern": format_pop(q)})
    if not (p.less(k - 1, k) and p_prime.less(k, k - 1)) and not (
        p.less(k, k - 1) and p_prime.less(k - 1, k)
    ):
        raise HypothesisError({"reason": f"labels {k - 1} and {k} must be ordered oppositely"})


def west_thresholds(w: Sequence[int], p: LabeledPoset) -> list[float]:
    """``t[i]``: least top value of an occurrence of ``p_{k-2}`` ending left of position ``i``."""
    k = p.size
    base = prefix(p, k - 2)
    active = [j - 1 for j in range(1, k - 1) if j not in p.isolated_vertices()]
    thresholds: list[float] = []
    best = math.inf
    for i in range(len(w)):
        thresholds.append(best)
        for occurrence in iter_occurrences(w, base, end=i):
            best = min(best, max(w[occurrence[j]] for j in active))
    return thresholds


def west_map(p: LabeledPoset, p_prime: LabeledPoset, w: Sequence[int]) -> Permutation:
    """Rearrange the entries of rank k-1 so the result avoids ``p_prime``.

    Entries below their threshold keep their place and value.
    """
    check_west_hypotheses(p, p_prime)
    if contains_pop(w, p):
        raise PatternContainedError({"word": tuple(w), "pattern": format_pop(p)})
    k = p.size
    thresholds = west_thresholds(w, p)
    positions = [i for i, value in enumerate(w) if value > thresholds[i]]
    values = sorted(w[i] for i in positions)
    result = list(w)
    if p_prime.less(k, k - 1):
        free = list(values)
        for i in positions:
            value = next(v for v in free if v > thresholds[i])
            free.remove(value)
            result[i] = value
    else:
        for i, value in zip(positions, reversed(values)):
            result[i] = value
    return tuple(result)


# Theorem 1.3 map: an isolated label k-1 between two chains.


def check_theorem13_hypotheses(p: LabeledPoset, p_prime: LabeledPoset) -> tuple[LabeledPoset, LabeledPoset]:
    k = p.size
    if p_prime.size != k or k < 4:
        raise HypothesisError({"reason": "patterns must share a size of at least 4"})
    for q in (p, p_prime):
        isolated = q.isolated_vertices()
        if k - 1 not in isolated:
            raise HypothesisError({"reason": f"label {k - 1} must be isolated", "pattern": format_pop(q)})
        if k - 3 in isolated:
            raise HypothesisError({"reason": f"label {k - 3} must not be isolated", "pattern": format_pop(q)})
    q, q_prime = without(p, {k - 1}), without(p_prime, {k - 1})
    check_west_hypotheses(q, q_prime)
    return q, q_prime


def theorem13_map(p: LabeledPoset, p_prime: LabeledPoset, w: Sequence[int]) -> Permutation:
    """Swap each q-occurrence end with its left neighbour, apply the West map, swap back."""
    q, q_prime = check_theorem13_hypotheses(p, p_prime)
    if contains_pop(w, p):
        raise PatternContainedError({"word": tuple(w), "pattern": format_pop(p)})
    ends = [i + 1 for i in range(len(w)) if ends_at(w, q, i)]
    swapped = left_multiply_adjacent(w, ends)
    mapped = west_map(q, q_prime, swapped)
    return left_multiply_adjacent(mapped, ends)


# Theorem 1.2 map: recolour the part of a square board left of a J-occurrence.


@dataclass(frozen=True)
class Theorem12Split:
    head: LabeledPoset
    head_prime: LabeledPoset
    tail: LabeledPoset
    tail_active: tuple[int, ...]


def check_theorem12_hypotheses(p: LabeledPoset, p_prime: LabeledPoset) -> Theorem12Split:
    k = p.size
    isolated = p.isolated_vertices()
    if p_prime.size != k or p_prime.isolated_vertices() != isolated:
        raise HypothesisError({"reason": "patterns must share size and isolated labels"})
    if not isolated:
        raise HypothesisError({"reason": "no isolated label"})
    first = min(isolated)
    if first < 2:
        raise HypothesisError({"reason": "label 1 is isolated, nothing to rewrite"})
    head_labels = range(1, first)
    rest = [j for j in range(first, k + 1) if j not in isolated]
    if induced_subposet(p, rest) != induced_subposet(p_prime, rest):
        raise HypothesisError({"reason": "the upper parts differ"})
    for q in (p, p_prime):
        if not all(q.less(a, b) for a in head_labels for b in rest):
            raise HypothesisError({"reason": "upper part is not above the head", "pattern": format_pop(q)})
    tail = induced_subposet(p, range(first, k + 1)).standardise()
    tail_active = tuple(j - first for j in rest)
    return Theorem12Split(prefix(p, first - 1), prefix(p_prime, first - 1), tail, tail_active)


def _tail_reach(word: Sequence[int], tail: LabeledPoset, active: Sequence[int]) -> list[int]:
    """``reach[c]`` (1-based): cells of column ``c`` below this row are white."""
    n = len(word)
    best_from = [0] * (n + 2)
    for occurrence in iter_occurrences(word, tail):
        key = min((word[occurrence[j]] for j in active), default=n + 1)
        start = occurrence[0] + 1
        best_from[start] = max(best_from[start], key)
    reach = [0] * (n + 2)
    for c in range(n, 0, -1):
        reach[c] = max(reach[c + 1], best_from[c + 1])
    return reach


def theorem12_map(
    p: LabeledPoset,
    p_prime: LabeledPoset,
    t: Transversal,
    inner: InnerMap | None = None,
) -> Transversal:
    if not t.board.is_square:
        raise ShapeMismatchError({"board": t.board.format(), "reason": "square board expected"})
    split = check_theorem12_hypotheses(p, p_prime)
    word = t.assignment
    reach = _tail_reach(word, split.tail, split.tail_active)
    kept = [c for c in range(1, len(word) + 1) if word[c - 1] < reach[c]]
    if not kept:
        return t

    rows = sorted(word[c - 1] for c in kept)
    row_index = {r: i for i, r in enumerate(rows, start=1)}
    lengths = tuple(sum(1 for c in kept if r < reach[c]) for r in rows)
    board = FerrersBoard(lengths)
    inner_t = Transversal(board, tuple(row_index[word[c - 1]] for c in kept))
    image = (inner or rank_bijection(board, split.head, split.head_prime))(inner_t)

    result = list(word)
    for c, r in zip(kept, image.assignment):
        result[c - 1] = rows[r - 1]
    return Transversal(t.board, tuple(result))


# Theorem 1.4 maps: rewrite one side of a disjoint sum.


def _earliest_end(word: Sequence[int], p: LabeledPoset) -> int | None:
    return next((i for i in range(len(word)) if ends_at(word, p, i)), None)


def theorem14_map(
    p: LabeledPoset,
    q: LabeledPoset,
    q_prime: LabeledPoset,
    t: Transversal,
    inner: InnerMap | None = None,
) -> Transversal:
    """Rewrite the columns right of the earliest-ending occurrence of ``p``."""
    if not t.board.is_square:
        raise ShapeMismatchError({"board": t.board.format(), "reason": "square board expected"})
    word = t.assignment
    if contains_pop(word, disjoint_sum(p, q)):
        raise PatternContainedError({"transversal": t.format(), "pattern": format_pop(disjoint_sum(p, q))})
    end = _earliest_end(word, p)
    if end is None:
        return t
    head, tail = list(word[: end + 1]), word[end + 1 :]
    return Transversal(t.board, tuple(head + _apply_on_square(tail, q, q_prime, inner)))


def theorem14_left_map(
    p: LabeledPoset,
    p_prime: LabeledPoset,
    q: LabeledPoset,
    t: Transversal,
    inner: InnerMap | None = None,
) -> Transversal:
    """Rewrite the columns left of the latest-starting occurrence of ``q``."""
    if not t.board.is_square:
        raise ShapeMismatchError({"board": t.board.format(), "reason": "square board expected"})
    word = t.assignment
    if contains_pop(word, disjoint_sum(p, q)):
        raise PatternContainedError({"transversal": t.format(), "pattern": format_pop(disjoint_sum(p, q))})
    starts = [occurrence[0] for occurrence in iter_occurrences(word, q)]
    if not starts:
        return t
    start = max(starts)
    head, tail = word[:start], list(word[start:])
    return Transversal(t.board, tuple(_apply_on_square(head, p, p_prime, inner) + tail))
