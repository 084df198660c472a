import itertools
import logging
from typing import Callable, Optional, Sequence

from pydantic import BaseModel, Field, computed_field

from src.domain.bijections import (
    theorem12_map,
    theorem13_map,
    theorem14_map,
    west_map,
)
from src.domain.encoding import (
    EncodingWord,
    InsertionState,
    Variant,
    completable_positions,
    decode,
    encode,
    encoding_words,
    suitable_positions,
    theorem16_map,
)
from src.domain.ferrers import (
    FerrersBoard,
    Transversal,
    board_avoiders,
    boards,
    contains_pop_in_board,
    essential_occurrence,
    shape_wilf_check,
    transversals,
)
from src.domain.permutation import (
    avoiders,
    contains_pop,
    count_avoiders,
    format_permutation,
)
from src.domain.poset import (
    LabeledPoset,
    block_reversal,
    disjoint_sum,
    format_pop,
    from_classical,
    ordinal_sum,
    parse_pop,
    reverse,
)

from .classify import gk_reduction_check
from .verdict import Verdict

logger = logging.getLogger(__name__)

THEOREM12_PAIR = ("pop 5: c[5>1>2>3], i[4]", "pop 5: c[5>3>2>1], i[4]")
THEOREM13_PAIR = ("pop 5: c[3>5>1>2], i[4]", "pop 5: c[5>3>1>2], i[4]")
WEST_PAIR = ("pop 4: c[3>4>1>2]", "pop 4: c[4>3>1>2]")
THEOREM14_TRIPLE = ("pop 2: c[1>2]", "pop 2: c[2>1]", "pop 2: c[1>2]")
GK_SAMPLES = (
    "pop 3: c[2>1], i[3]",
    "pop 1: i[1]",
    "pop 4: i[1], c[3>2], i[4]",
    "pop 4: c[2>1>3], i[4]",
    "pop 5: i[1], i[2], c[3>5>4]",
    "pop 5: i[1], c[2>4>3], i[5]",
)


def chain_component_posets(size: int) -> list[LabeledPoset]:
    found = {}
    for labels in itertools.permutations(range(1, size + 1)):
        for cuts in itertools.product((False, True), repeat=max(size - 1, 0)):
            groups, current = [], [labels[0]] if labels else []
            for label, cut in zip(labels[1:], cuts):
                if cut:
                    groups.append(current)
                    current = [label]
                else:
                    current.append(label)
            if current:
                groups.append(current)
            pairs = [(g[j + 1], g[j]) for g in groups for j in range(len(g) - 1)]
            p = LabeledPoset.build(size, pairs)
            found.setdefault(format_pop(p), p)
    return [found[key] for key in sorted(found)]


# Equivalence statements.


def check_theorem_1_1(n_max: int = 5) -> Verdict:
    single = LabeledPoset.antichain(1)
    pairs = [
        (from_classical((1, 2)), from_classical((2, 1))),
        (Variant.FIRST_SECOND.pop, Variant.FIRST_LAST.pop),
    ]
    rows = []
    for p, p_prime in pairs:
        base = shape_wilf_check(p, p_prime, min(n_max - 1, 4))
        summed = shape_wilf_check(ordinal_sum(p, single), ordinal_sum(p_prime, single), n_max)
        rows.append((format_pop(p), format_pop(p_prime), base, summed))
    failing = next((r for r in rows if not (r[2].holds and r[3].holds)), None)
    counterexample = None
    if failing is not None:
        bad = failing[2].counterexample or failing[3].counterexample
        counterexample = f"{failing[0]} vs {failing[1]} on {bad.board}"
    return Verdict(
        check="1.1",
        passed=failing is None,
        detail=f"{len(rows)} pairs, boards up to size {n_max}",
        counterexample=counterexample,
    )


def _counts_agree(check: str, p: LabeledPoset, p_prime: LabeledPoset, horizon: int) -> Verdict:
    left = count_avoiders(p, horizon).counts
    right = count_avoiders(p_prime, horizon).counts
    mismatch = next((n for n, (a, b) in enumerate(zip(left, right), start=1) if a != b), None)
    return Verdict(
        check=check,
        passed=mismatch is None,
        detail=f"{format_pop(p)} and {format_pop(p_prime)} agree through n={horizon}"
        if mismatch is None
        else f"counts differ at n={mismatch}",
        counterexample=None if mismatch is None else f"n={mismatch}: {left[mismatch - 1]} vs {right[mismatch - 1]}",
        data={"left": list(left), "right": list(right)},
    )


def check_theorem_1_2(horizon: int = 7) -> Verdict:
    p, p_prime = (parse_pop(x) for x in THEOREM12_PAIR)
    return _counts_agree("1.2", p, p_prime, horizon)


def check_theorem_1_3(horizon: int = 7) -> Verdict:
    p, p_prime = (parse_pop(x) for x in THEOREM13_PAIR)
    return _counts_agree("1.3", p, p_prime, horizon)


def check_theorem_1_4(horizon: int = 7) -> Verdict:
    p, q, q_prime = (parse_pop(x) for x in THEOREM14_TRIPLE)
    return _counts_agree("1.4", disjoint_sum(p, q), disjoint_sum(p, q_prime), horizon)


def chain_pairs(max_total: int = 5) -> list[tuple[LabeledPoset, LabeledPoset]]:
    chains = {
        size: [from_classical(sigma) for sigma in itertools.permutations(range(1, size + 1))]
        for size in range(1, max_total)
    }
    return [
        (p, q)
        for a in range(1, max_total)
        for b in range(1, max_total - a + 1)
        for p in chains[a]
        for q in chains[b]
    ]


def check_theorem_1_5(
    horizon: int = 7, pairs: Optional[Sequence[tuple[LabeledPoset, LabeledPoset]]] = None
) -> Verdict:
    pairs = chain_pairs() if pairs is None else pairs
    for p, q in pairs:
        verdict = _counts_agree("1.5", disjoint_sum(p, q), disjoint_sum(q, p), horizon)
        if not verdict.passed:
            return Verdict(
                check="1.5",
                passed=False,
                detail=verdict.detail,
                counterexample=f"{format_pop(p)} + {format_pop(q)}: {verdict.counterexample}",
            )
    return Verdict(check="1.5", passed=True, detail=f"{len(pairs)} pairs agree through n={horizon}")


def check_theorem_1_6(n_max: int = 5) -> Verdict:
    left, right = Variant.FIRST_SECOND, Variant.FIRST_LAST
    report = shape_wilf_check(left.pop, right.pop, n_max)
    if not report.holds:
        return Verdict(
            check="1.6", passed=False, detail="board counts differ", counterexample=str(report.counterexample.board)
        )
    for n in range(1, n_max + 1):
        for board in boards(n):
            for variant in (left, right):
                for t in board_avoiders(board, variant.pop):
                    word = encode(t, variant)
                    if decode(word, board, variant) != t:
                        return Verdict(
                            check="1.6", passed=False, detail="decode(encode(T)) differs", counterexample=f"{board} {t}"
                        )
                for word in encoding_words(board, variant):
                    if encode(decode(word, board, variant), variant) != word:
                        return Verdict(
                            check="1.6",
                            passed=False,
                            detail="encode(decode(w)) differs",
                            counterexample=f"{board} {word}",
                        )

    board = FerrersBoard.parse("(5,5,4,4,3)")
    word = encode(Transversal.parse("45312", board), left)
    image = decode(word, board, right)
    example_ok = word == EncodingWord.parse("2,1,0,2,0") and image.format() == "41532"
    return Verdict(
        check="1.6",
        passed=example_ok,
        detail=f"equal counts and round trips on all boards up to size {n_max}; 45312 -> {word} -> {image}",
        counterexample=None if example_ok else f"{word} -> {image}",
        data=report.model_dump(),
    )


# Lemmas.


def check_lemma_2_1(n_max: int = 5, max_size: int = 4) -> Verdict:
    patterns = [p for k in range(1, max_size + 1) for p in chain_component_posets(k)]
    compared = 0
    for n in range(1, n_max + 1):
        for t in transversals(FerrersBoard.square(n)):
            for p in patterns:
                compared += 1
                if contains_pop_in_board(t, p) != (essential_occurrence(t, p) is not None):
                    return Verdict(
                        check="lemma-2.1",
                        passed=False,
                        detail="detectors disagree",
                        counterexample=f"{format_pop(p)} in {t}",
                    )
    return Verdict(check="lemma-2.1", passed=True, detail=f"{compared} comparisons agree")


def check_lemma_3_1(max_total: int = 5) -> Verdict:
    sizes = [(a, b) for a in range(1, max_total) for b in range(1, max_total - a + 1)]
    by_size = {k: chain_component_posets(k) for k in range(1, max_total)}
    compared = 0
    for a, b in sizes:
        for p, q in itertools.product(by_size[a], by_size[b]):
            compared += 1
            first = block_reversal(disjoint_sum(p, q), range(1, a + 1))
            swapped = block_reversal(reverse(first), range(1, b + 1))
            if swapped != disjoint_sum(q, p):
                return Verdict(
                    check="lemma-3.1",
                    passed=False,
                    detail="block reversals do not swap the sum",
                    counterexample=f"{format_pop(p)} + {format_pop(q)}",
                )
    return Verdict(check="lemma-3.1", passed=True, detail=f"{compared} pairs swap as expected")


def check_lemma_4_2(n_max: int = 5) -> Verdict:
    """The suitable-cell rule against the completion oracle at every insertion stage."""
    stages = 0
    for n in range(1, n_max + 1):
        for board in boards(n):
            for variant in Variant:
                for t in board_avoiders(board, variant.pop):
                    state = InsertionState(board)
                    while not state.is_complete:
                        stages += 1
                        rule = sorted(suitable_positions(state, variant))
                        oracle = completable_positions(state, variant)
                        if rule != oracle:
                            return Verdict(
                                check="lemma-4.2",
                                passed=False,
                                detail=f"rule {rule} vs oracle {oracle} at stage {state.stage} ({variant})",
                                counterexample=f"{board} {t}",
                            )
                        state = state.place(t.assignment.index(state.current_row) + 1)
    return Verdict(check="lemma-4.2", passed=True, detail=f"{stages} stages agree")


def _stage_widths(word: EncodingWord, board: FerrersBoard, variant: Variant) -> list[int]:
    state = InsertionState(board)
    widths = []
    for letter in word.letters:
        widths.append(len(state.white_columns()))
        state = state.place(suitable_positions(state, variant)[max(letter, 1) - 1])
    return widths


def check_lemma_4_4(n_max: int = 5) -> Verdict:
    """A 1 on a row wider than two forces every stage down to the first row of width two."""
    runs = 0
    for n in range(1, n_max + 1):
        for board in boards(n):
            for variant in Variant:
                for word in encoding_words(board, variant):
                    letters = word.letters
                    widths = _stage_widths(word, board, variant)
                    for i, letter in enumerate(letters):
                        if letter != 1 or widths[i] <= 2:
                            continue
                        runs += 1
                        j = next((k for k in range(i + 1, len(letters)) if widths[k] == 2), len(letters) - 1)
                        problem = None
                        if any(letters[k] != 0 for k in range(i + 1, j + 1)):
                            problem = f"free stage before width 2 ({variant})"
                        elif j + 1 < len(letters) and widths[j + 1] > 1 and letters[j + 1] == 0:
                            problem = f"forced stage after width 2 ({variant})"
                        if problem is not None:
                            return Verdict(
                                check="lemma-4.4",
                                passed=False,
                                detail=problem,
                                counterexample=f"{board} {word} at stage {i + 1}",
                            )
    return Verdict(check="lemma-4.4", passed=True, detail=f"{runs} forced runs on boards up to size {n_max}")


def check_lemma_4_5(n_max: int = 5) -> Verdict:
    for n in range(1, n_max + 1):
        for board in boards(n):
            for variant in Variant:
                for word in encoding_words(board, variant):
                    state = InsertionState(board)
                    for i, letter in enumerate(word.letters):
                        candidates = suitable_positions(state, variant)
                        state = state.place(candidates[max(letter, 1) - 1])
                        if letter != 2 or i + 1 == len(word):
                            continue
                        width = len(state.white_columns())
                        if width > 1 and word.letters[i + 1] == 0:
                            return Verdict(
                                check="lemma-4.5",
                                passed=False,
                                detail=f"forced stage after a 2 ({variant})",
                                counterexample=f"{board} {word}",
                            )
    return Verdict(check="lemma-4.5", passed=True, detail=f"all words on boards up to size {n_max}")


def check_gk(horizon: int = 7, samples: Sequence[str] = GK_SAMPLES) -> Verdict:
    verdicts = [gk_reduction_check(parse_pop(text), horizon) for text in samples]
    failed = next((v for v in verdicts if not v.passed), None)
    split = [v.data["pattern"] for v in verdicts if v.data["printed_split_failures"]]
    detail = f"product formula holds for {len(verdicts) - (failed is not None)} of {len(verdicts)} samples"
    if split:
        detail += f"; printed case split contradicted by {len(split)} samples"
    return Verdict(
        check="gk-5.1",
        passed=failed is None,
        detail=detail,
        counterexample=None if failed is None else f"{failed.data['pattern']} {failed.counterexample}",
        data={"samples": [v.data for v in verdicts]},
    )


CHECKS: dict[str, Callable[..., Verdict]] = {
    "1.1": check_theorem_1_1,
    "1.2": check_theorem_1_2,
    "1.3": check_theorem_1_3,
    "1.4": check_theorem_1_4,
    "1.5": check_theorem_1_5,
    "1.6": check_theorem_1_6,
    "lemma-2.1": check_lemma_2_1,
    "lemma-2.2": lambda n_max=6: verify_bijection("west", n_max).verdict(),
    "lemma-3.1": check_lemma_3_1,
    "lemma-4.2": check_lemma_4_2,
    "lemma-4.4": check_lemma_4_4,
    "lemma-4.5": check_lemma_4_5,
    "gk-5.1": check_gk,
}


# Bijection verification.


class BijectionInstance(BaseModel):
    input: str
    output: str
    roundtrip_ok: bool
    image_ok: bool

    @property
    def ok(self) -> bool:
        return self.roundtrip_ok and self.image_ok


class BijectionReport(BaseModel):
    map_id: str = Field(serialization_alias="map")
    instances: list[BijectionInstance] = Field(default_factory=list)
    cardinality_ok: bool = True

    def add(self, source: str, image: str, roundtrip_ok: bool, image_ok: bool) -> None:
        self.instances.append(
            BijectionInstance(input=source, output=image, roundtrip_ok=roundtrip_ok, image_ok=image_ok)
        )

    @computed_field
    @property
    def passed(self) -> bool:
        return self.cardinality_ok and all(i.ok for i in self.instances)

    def verdict(self) -> Verdict:
        bad = next((i for i in self.instances if not i.ok), None)
        counterexample = None if bad is None else f"{bad.input} -> {bad.output}"
        if counterexample is None and not self.cardinality_ok:
            counterexample = "image sizes differ"
        return Verdict(
            check=f"bijection-{self.map_id}",
            passed=self.passed,
            detail=f"{len(self.instances)} instances",
            counterexample=counterexample,
        )


def _verify_on_permutations(
    report: BijectionReport,
    p: LabeledPoset,
    p_prime: LabeledPoset,
    forward: Callable[[Sequence[int]], tuple[int, ...]],
    backward: Callable[[Sequence[int]], tuple[int, ...]],
    n_max: int,
) -> BijectionReport:
    for n in range(1, n_max + 1):
        images = set()
        for w in avoiders(p, n):
            out = forward(w)
            images.add(out)
            report.add(format_permutation(w), format_permutation(out), backward(out) == w, not contains_pop(out, p_prime))
        if len(images) != sum(1 for _ in avoiders(p_prime, n)):
            report.cardinality_ok = False
    return report


def _verify_on_squares(
    report: BijectionReport,
    p: LabeledPoset,
    p_prime: LabeledPoset,
    forward: Callable[[Transversal], Transversal],
    backward: Callable[[Transversal], Transversal],
    n_max: int,
    board_list: Optional[Callable[[int], list[FerrersBoard]]] = None,
) -> BijectionReport:
    board_list = board_list or (lambda n: [FerrersBoard.square(n)])
    for n in range(1, n_max + 1):
        for board in board_list(n):
            images = set()
            for t in board_avoiders(board, p):
                out = forward(t)
                images.add(out)
                report.add(f"{board} {t}", str(out), backward(out) == t, not contains_pop_in_board(out, p_prime))
            if len(images) != sum(1 for _ in board_avoiders(board, p_prime)):
                report.cardinality_ok = False
    return report


def verify_bijection(map_id: str, n_max: Optional[int] = None) -> BijectionReport:
    report = BijectionReport(map_id=map_id)
    if map_id == "west":
        p, p_prime = (parse_pop(x) for x in WEST_PAIR)
        return _verify_on_permutations(
            report, p, p_prime, lambda w: west_map(p, p_prime, w), lambda w: west_map(p_prime, p, w), n_max or 6
        )
    if map_id == "f13":
        p, p_prime = (parse_pop(x) for x in THEOREM13_PAIR)
        return _verify_on_permutations(
            report, p, p_prime, lambda w: theorem13_map(p, p_prime, w), lambda w: theorem13_map(p_prime, p, w), n_max or 6
        )
    if map_id == "t12":
        p, p_prime = (parse_pop(x) for x in THEOREM12_PAIR)
        return _verify_on_squares(
            report, p, p_prime, lambda t: theorem12_map(p, p_prime, t), lambda t: theorem12_map(p_prime, p, t), n_max or 5
        )
    if map_id == "t14":
        p, q, q_prime = (parse_pop(x) for x in THEOREM14_TRIPLE)
        return _verify_on_squares(
            report,
            disjoint_sum(p, q),
            disjoint_sum(p, q_prime),
            lambda t: theorem14_map(p, q, q_prime, t),
            lambda t: theorem14_map(p, q_prime, q, t),
            n_max or 5,
        )
    if map_id == "t16":
        left, right = Variant.FIRST_SECOND, Variant.FIRST_LAST
        return _verify_on_squares(
            report,
            left.pop,
            right.pop,
            lambda t: theorem16_map(t, left),
            lambda t: theorem16_map(t, right),
            n_max or 5,
            board_list=boards,
        )
    raise KeyError(map_id)


BIJECTIONS = ("west", "f13", "t12", "t14", "t16")
