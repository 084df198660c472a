"""Permutations, POP occurrences, avoiders and p-ranks. Positions are 1-based."""

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from pydantic import BaseModel, ConfigDict

from .exceptions import (
    BudgetExceededError,
    InvalidPermutationError,
    RankOverflowError,
)
from .poset import LabeledPoset, format_pop, prefix

logger = logging.getLogger(__name__)

Permutation = tuple[int, ...]
Witness = tuple[int, ...]

DEFAULT_MAX_HORIZON = 9


def make_permutation(values: Iterable[int]) -> Permutation:
    values = tuple(values)
    if sorted(values) != list(range(1, len(values) + 1)):
        raise InvalidPermutationError({"values": values})
    return values


def parse_permutation(text: str) -> Permutation:
    text = text.strip()
    if "," in text:
        return make_permutation(int(x) for x in text.split(","))
    if not text.isdigit() and text:
        raise InvalidPermutationError({"text": text})
    return make_permutation(int(x) for x in text)


def format_permutation(pi: Sequence[int]) -> str:
    if len(pi) <= 9:
        return "".join(map(str, pi))
    return ",".join(map(str, pi))


def standardize(values: Sequence[int]) -> Permutation:
    rank = {v: i for i, v in enumerate(sorted(values), start=1)}
    return tuple(rank[v] for v in values)


def reverse_of(pi: Sequence[int]) -> Permutation:
    return tuple(reversed(pi))


def complement_of(pi: Sequence[int]) -> Permutation:
    n = len(pi)
    return tuple(n + 1 - v for v in pi)


def inverse_of(pi: Sequence[int]) -> Permutation:
    inverse = [0] * len(pi)
    for position, value in enumerate(pi, start=1):
        inverse[value - 1] = position
    return tuple(inverse)


@dataclass(frozen=True)
class _Constraints:
    """Per label (0-based, in position order): earlier labels it must exceed or stay below."""

    size: int
    exceeds: tuple[tuple[int, ...], ...]
    below: tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def _constraints(p: LabeledPoset) -> _Constraints:
    exceeds, below = [], []
    for j in range(1, p.size + 1):
        exceeds.append(tuple(m - 1 for m in range(1, j) if p.less(m, j)))
        below.append(tuple(m - 1 for m in range(1, j) if p.less(j, m)))
    return _Constraints(p.size, tuple(exceeds), tuple(below))


def iter_occurrences(
    values: Sequence[int],
    p: LabeledPoset,
    *,
    end: int | None = None,
    accept: Callable[[Witness], bool] | None = None,
) -> Iterator[Witness]:
    """Yield 0-based occurrence positions in lexicographic order.

    ``end`` pins the last label to that index; ``accept`` filters complete
    occurrences (used for board geometry).
    """
    c = _constraints(p)
    k, n = c.size, len(values)
    if k == 0:
        yield ()
        return
    limit = n if end is None else end + 1
    if k > limit:
        return
    chosen = [0] * k

    def extend(j: int, start: int) -> Iterator[Witness]:
        if j == k:
            occurrence = tuple(chosen)
            if accept is None or accept(occurrence):
                yield occurrence
            return
        if end is not None and j == k - 1:
            candidates: Iterable[int] = (end,) if end >= start else ()
        elif end is not None:
            candidates = range(start, end - (k - 1 - j) + 1)
        else:
            candidates = range(start, n - k + j + 1)
        for position in candidates:
            value = values[position]
            if all(values[chosen[m]] < value for m in c.exceeds[j]) and all(
                values[chosen[m]] > value for m in c.below[j]
            ):
                chosen[j] = position
                yield from extend(j + 1, position + 1)

    yield from extend(0, 0)


def ends_at(values: Sequence[int], p: LabeledPoset, end: int) -> bool:
    return next(iter_occurrences(values, p, end=end), None) is not None


def find_occurrence(pi: Sequence[int], p: LabeledPoset) -> Witness | None:
    occurrence = next(iter_occurrences(pi, p), None)
    if occurrence is None:
        return None
    return tuple(i + 1 for i in occurrence)


def contains_pop(pi: Sequence[int], p: LabeledPoset) -> bool:
    return find_occurrence(pi, p) is not None


def contains_classical(pi: Sequence[int], sigma: Sequence[int]) -> bool:
    sigma = tuple(sigma)
    return any(standardize(sub) == sigma for sub in itertools.combinations(pi, len(sigma)))


def contains_pattern_set(pi: Sequence[int], p: LabeledPoset) -> bool:
    return any(contains_classical(pi, sigma) for sigma in p.pattern_set())


def _grow(p: LabeledPoset, n: int, prefix_values: list[int], used: list[bool]) -> Iterator[Permutation]:
    if len(prefix_values) == n:
        yield tuple(prefix_values)
        return
    for value in range(1, n + 1):
        if used[value]:
            continue
        prefix_values.append(value)
        used[value] = True
        if not ends_at(prefix_values, p, len(prefix_values) - 1):
            yield from _grow(p, n, prefix_values, used)
        prefix_values.pop()
        used[value] = False


def avoiders(p: LabeledPoset, n: int, first: int | None = None) -> Iterator[Permutation]:
    if p.size == 0:
        return
    used = [False] * (n + 1)
    if first is None:
        yield from _grow(p, n, [], used)
        return
    used[first] = True
    if not ends_at([first], p, 0):
        yield from _grow(p, n, [first], used)


def _count_shard(shard: tuple[LabeledPoset, int, int]) -> int:
    p, n, first = shard
    return sum(1 for _ in avoiders(p, n, first))


class CountSequence(BaseModel):
    model_config = ConfigDict(frozen=True)

    pattern: str
    counts: tuple[int, ...]

    @property
    def horizon(self) -> int:
        return len(self.counts)

    def to_csv(self) -> str:
        rows = ["n,count"] + [f"{n},{a}" for n, a in enumerate(self.counts, start=1)]
        return "\n".join(rows) + "\n"


def count_avoiders(
    p: LabeledPoset,
    horizon: int,
    *,
    workers: int = 1,
    budget: int = DEFAULT_MAX_HORIZON,
) -> CountSequence:
    if horizon < 1:
        raise BudgetExceededError({"horizon": horizon, "reason": "horizon must be >= 1"})
    if horizon > budget:
        raise BudgetExceededError({"horizon": horizon, "budget": budget})

    shards = [
        (p, n, first)
        for n in range(1, horizon + 1)
        if n >= p.size and p.size > 0
        for first in range(1, n + 1)
    ]
    if workers > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_count_shard, shards))
    else:
        results = [_count_shard(shard) for shard in shards]

    totals = dict.fromkeys(range(1, horizon + 1), 0)
    for (_, n, _), count in zip(shards, results):
        totals[n] += count
    counts = []
    for n in range(1, horizon + 1):
        if p.size == 0:
            counts.append(0)
        elif n < p.size:
            counts.append(math.factorial(n))
        else:
            counts.append(totals[n])
    logger.debug("Counted avoiders of %s through n=%d", format_pop(p), horizon)
    return CountSequence(pattern=format_pop(p), counts=tuple(counts))


def p_rank(w: Sequence[int], p: LabeledPoset, position: int, *, allow_full: bool = False) -> int:
    """Largest r such that an occurrence of p_r ends at ``position`` (1-based)."""
    for r in range(p.size, 0, -1):
        if ends_at(w, prefix(p, r), position - 1):
            if r == p.size and not allow_full:
                raise RankOverflowError({"position": position, "pattern": format_pop(p)})
            return r
    return 1


def rank_profile(w: Sequence[int], p: LabeledPoset, *, allow_full: bool = False) -> tuple[int, ...]:
    return tuple(p_rank(w, p, i, allow_full=allow_full) for i in range(1, len(w) + 1))


def left_multiply_adjacent(
    w: Sequence[int], positions: Iterable[int], *, action: str = "positions"
) -> Permutation:
    """Apply s_{i-1} for each i in order.

    ``positions`` swaps the entries at positions i-1 and i; ``values`` swaps the
    values i-1 and i wherever they sit.
    """
    result = list(w)
    n = len(result)
    for i in positions:
        if not 2 <= i <= n:
            raise InvalidPermutationError({"transposition": i, "length": n})
        if action == "positions":
            result[i - 2], result[i - 1] = result[i - 1], result[i - 2]
        elif action == "values":
            result = [i if v == i - 1 else i - 1 if v == i else v for v in result]
        else:
            raise ValueError(f"unknown action {action!r}")
    return tuple(result)
