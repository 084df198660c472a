"""Labeled posets (POPs) on the labels 1..k.

A pair ``(a, b)`` in ``relation`` means ``a <_P b``: in an occurrence, the entry
playing label ``a`` is smaller than the entry playing label ``b``. Relations are
kept transitively closed.
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import networkx as nx

from .exceptions import InvalidPermutationError, InvalidPosetError, PopSyntaxError

logger = logging.getLogger(__name__)

Pair = tuple[int, int]
Pattern = tuple[int, ...]


def transitive_closure(pairs: Iterable[Pair]) -> frozenset[Pair]:
    graph = nx.DiGraph(list(pairs))
    return frozenset(nx.transitive_closure(graph, reflexive=False).edges)


@dataclass(frozen=True)
class LabeledPoset:
    size: int
    relation: frozenset[Pair] = frozenset()

    def __post_init__(self) -> None:
        if self.size < 0:
            raise InvalidPosetError({"size": self.size})
        for a, b in self.relation:
            if not (1 <= a <= self.size and 1 <= b <= self.size):
                raise InvalidPosetError({"pair": (a, b), "size": self.size})
            if a == b or (b, a) in self.relation:
                raise InvalidPosetError({"cycle_through": a})
        if self.relation and transitive_closure(self.relation) != self.relation:
            raise InvalidPosetError({"reason": "relation is not transitively closed"})

    @classmethod
    def build(cls, size: int, pairs: Iterable[Pair] = ()) -> "LabeledPoset":
        pairs = list(pairs)
        if not pairs:
            return cls(size)
        return cls(size, transitive_closure(pairs))

    @classmethod
    def antichain(cls, size: int) -> "LabeledPoset":
        return cls(size)

    @property
    def labels(self) -> range:
        return range(1, self.size + 1)

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.labels)
        graph.add_edges_from(self.relation)
        return graph

    def less(self, a: int, b: int) -> bool:
        return (a, b) in self.relation

    def comparable(self, a: int, b: int) -> bool:
        return (a, b) in self.relation or (b, a) in self.relation

    def hasse_edges(self) -> frozenset[Pair]:
        if not self.relation:
            return frozenset()
        return frozenset(nx.transitive_reduction(self.graph).edges)

    def isolated_vertices(self) -> frozenset[int]:
        touched = {label for pair in self.relation for label in pair}
        return frozenset(label for label in self.labels if label not in touched)

    def connected_components(self) -> list[frozenset[int]]:
        components = nx.weakly_connected_components(self.graph)
        return sorted((frozenset(c) for c in components), key=min)

    def is_chain(self, labels: Iterable[int]) -> bool:
        labels = sorted(labels)
        return all(
            self.comparable(a, b)
            for i, a in enumerate(labels)
            for b in labels[i + 1 :]
        )

    def all_chains(self) -> bool:
        return all(self.is_chain(c) for c in self.connected_components())

    def linear_extensions(self) -> list[Pattern]:
        """Orderings e_1..e_k (lowest value first), lexicographically sorted."""
        if self.size == 0:
            return [()]
        return sorted(tuple(order) for order in nx.all_topological_sorts(self.graph))

    def pattern_set(self) -> frozenset[Pattern]:
        patterns = set()
        for extension in self.linear_extensions():
            values = [0] * self.size
            for value, label in enumerate(extension, start=1):
                values[label - 1] = value
            patterns.add(tuple(values))
        return frozenset(patterns)

    def __str__(self) -> str:
        return format_pop(self)


@dataclass(frozen=True)
class PosetFragment:

    labels: frozenset[int]
    relation: frozenset[Pair]

    def standardise(self) -> LabeledPoset:
        return standardise(sorted(self.labels), self.relation)


def standardise(labels: Iterable[int], relation: Iterable[Pair]) -> LabeledPoset:
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise InvalidPosetError({"duplicate_labels": labels})
    if any(label < 1 for label in labels):
        raise InvalidPosetError({"non_positive_labels": labels})
    rank = {label: i for i, label in enumerate(sorted(labels), start=1)}
    return LabeledPoset.build(len(labels), ((rank[a], rank[b]) for a, b in relation))


def from_classical(sigma: Iterable[int]) -> LabeledPoset:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise InvalidPermutationError({"values": sigma})
    return LabeledPoset(
        len(sigma),
        frozenset(
            (j + 1, m + 1)
            for j in range(len(sigma))
            for m in range(len(sigma))
            if sigma[j] < sigma[m]
        ),
    )


def induced_subposet(p: LabeledPoset, labels: Iterable[int]) -> PosetFragment:
    labels = frozenset(labels)
    if not labels <= set(p.labels):
        raise InvalidPosetError({"not_a_subset": sorted(labels - set(p.labels))})
    return PosetFragment(
        labels,
        frozenset((a, b) for a, b in p.relation if a in labels and b in labels),
    )


def prefix(p: LabeledPoset, r: int) -> LabeledPoset:
    return induced_subposet(p, range(1, r + 1)).standardise()


def without(p: LabeledPoset, labels: Iterable[int]) -> LabeledPoset:
    dropped = set(labels)
    return induced_subposet(p, (x for x in p.labels if x not in dropped)).standardise()


def _shift(relation: Iterable[Pair], by: int) -> set[Pair]:
    return {(a + by, b + by) for a, b in relation}


def ordinal_sum(p: LabeledPoset, q: LabeledPoset) -> LabeledPoset:
    k = p.size
    pairs = set(p.relation) | _shift(q.relation, k)
    pairs |= {(a, b + k) for a in p.labels for b in q.labels}
    return LabeledPoset.build(k + q.size, pairs)


def disjoint_sum(p: LabeledPoset, q: LabeledPoset) -> LabeledPoset:
    return LabeledPoset(p.size + q.size, frozenset(p.relation | _shift(q.relation, p.size)))


def reverse(p: LabeledPoset) -> LabeledPoset:
    n = p.size
    return LabeledPoset(n, frozenset((n + 1 - a, n + 1 - b) for a, b in p.relation))


def complement(p: LabeledPoset) -> LabeledPoset:
    return LabeledPoset(p.size, frozenset((b, a) for a, b in p.relation))


def block_reversal(p: LabeledPoset, block: Iterable[int]) -> LabeledPoset:
    """Complement the labels of ``block`` inside their own contiguous range."""
    block = frozenset(block)
    if not block:
        return p
    low, high = min(block), max(block)
    if len(block) != high - low + 1 or not block <= set(p.labels):
        raise InvalidPosetError({"block": sorted(block), "reason": "not contiguous"})
    for component in p.connected_components():
        if component & block and not component <= block:
            raise InvalidPosetError({"block": sorted(block), "reason": "splits a component"})

    def rename(label: int) -> int:
        return low + high - label if label in block else label

    return LabeledPoset(p.size, frozenset((rename(a), rename(b)) for a, b in p.relation))


# Text grammar: ``pop <k>: c[3>5>1>2], i[4]``; non-chain components as ``h[a>b;a>c]``.

_HEADER = re.compile(r"\s*pop\s+(\d+)\s*:")
_COMPONENT = re.compile(r"\s*([cih])\[([^\]]*)\]")
_SEPARATOR = re.compile(r"\s*,")
_LABEL = re.compile(r"\s*(\d+)\s*$")


def _skip_spaces(text: str, position: int) -> int:
    while position < len(text) and text[position].isspace():
        position += 1
    return position


def _parse_label(token: str, position: int) -> int:
    match = _LABEL.match(token)
    if match is None:
        raise PopSyntaxError(f"expected a label, found {token.strip()!r}", position)
    return int(match.group(1))


def _split(body: str, separator: str, offset: int) -> list[tuple[str, int]]:
    pieces, start = [], 0
    for piece in body.split(separator):
        pieces.append((piece, offset + start))
        start += len(piece) + len(separator)
    return pieces


def _parse_component(
    kind: str, body: str, offset: int
) -> tuple[list[tuple[int, int]], list[Pair]]:
    if kind == "i":
        return [(_parse_label(body, offset), offset)], []
    if kind == "c":
        chain = [(_parse_label(t, at), at) for t, at in _split(body, ">", offset)]
        pairs = [(chain[j + 1][0], chain[j][0]) for j in range(len(chain) - 1)]
        return chain, pairs
    labels: dict[int, int] = {}
    pairs = []
    for cover, at in _split(body, ";", offset):
        ends = _split(cover, ">", at)
        if len(ends) != 2:
            raise PopSyntaxError("expected a cover 'a>b'", at)
        upper, lower = (_parse_label(t, pos) for t, pos in ends)
        labels.setdefault(upper, ends[0][1])
        labels.setdefault(lower, ends[1][1])
        pairs.append((lower, upper))
    return [(label, at) for label, at in labels.items()], pairs


def parse_pop(text: str) -> LabeledPoset:
    header = _HEADER.match(text)
    if header is None:
        raise PopSyntaxError("expected 'pop <k>:'", _skip_spaces(text, 0))
    size = int(header.group(1))
    position = header.end()
    seen: dict[int, int] = {}
    pairs: list[Pair] = []

    if text[position:].strip():
        while True:
            match = _COMPONENT.match(text, position)
            if match is None:
                raise PopSyntaxError(
                    "expected a component c[...], i[...] or h[...]",
                    _skip_spaces(text, position),
                )
            labels, edges = _parse_component(match.group(1), match.group(2), match.start(2))
            for label, at in labels:
                if not 1 <= label <= size:
                    raise PopSyntaxError(f"label {label} outside 1..{size}", at)
                if label in seen:
                    raise PopSyntaxError(f"label {label} used twice", at)
                seen[label] = at
            pairs.extend(edges)
            position = match.end()
            separator = _SEPARATOR.match(text, position)
            if separator is None:
                break
            position = separator.end()

        trailing = _skip_spaces(text, position)
        if trailing != len(text):
            raise PopSyntaxError("unexpected trailing text", trailing)

    missing = sorted(set(range(1, size + 1)) - set(seen))
    if missing:
        raise PopSyntaxError(f"labels {missing} missing", len(text))
    try:
        return LabeledPoset.build(size, pairs)
    except InvalidPosetError as e:
        raise PopSyntaxError(f"not a partial order: {e}", header.end()) from e


def format_pop(p: LabeledPoset) -> str:
    parts = []
    for component in p.connected_components():
        if len(component) == 1:
            parts.append(f"i[{min(component)}]")
        elif p.is_chain(component):
            top_first = sorted(component, key=lambda x: -sum(p.less(y, x) for y in component))
            parts.append("c[" + ">".join(map(str, top_first)) + "]")
        else:
            covers = sorted((b, a) for a, b in p.hasse_edges() if a in component)
            parts.append("h[" + ";".join(f"{b}>{a}" for b, a in covers) + "]")
    if not parts:
        return f"pop {p.size}:"
    return f"pop {p.size}: " + ", ".join(parts)


def poset_from_tuple(notation: str) -> LabeledPoset:
    """Build a POP from the tables' tuple notation, e.g. ``(5,3,1,2;4)``."""
    body = notation.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise PopSyntaxError("expected a parenthesised tuple", 0)
    groups = [g for g in body[1:-1].split(";")]
    components = []
    size = 0
    for group in groups:
        labels = [x.strip() for x in group.split(",")]
        size += len(labels)
        if len(labels) == 1:
            components.append(f"i[{labels[0]}]")
        else:
            components.append("c[" + ">".join(labels) + "]")
    return parse_pop(f"pop {size}: " + ", ".join(components))


def tuple_notation(p: LabeledPoset) -> str:
    """Inverse of :func:`poset_from_tuple`; chains first, isolated labels last."""
    chains, singles = [], []
    for component in p.connected_components():
        if not p.is_chain(component):
            raise InvalidPosetError({"component": sorted(component), "reason": "not a chain"})
        top_first = sorted(component, key=lambda x: -sum(p.less(y, x) for y in component))
        (singles if len(component) == 1 else chains).append(",".join(map(str, top_first)))
    return "(" + ";".join(chains + singles) + ")"
