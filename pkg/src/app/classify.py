"""Chain-component POP families and their Wilf classes by equal counts through a horizon."""

import csv
import io
import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import StrEnum
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, ConfigDict, TypeAdapter, computed_field

from src.domain.exceptions import BudgetExceededError, HypothesisError, UnknownFamilyError
from src.domain.permutation import DEFAULT_MAX_HORIZON, CountSequence, count_avoiders
from src.domain.poset import (
    LabeledPoset,
    complement,
    format_pop,
    poset_from_tuple,
    reverse,
    without,
)

from .tables import KNOWN_SEQUENCES, TABLES
from .verdict import Verdict

logger = logging.getLogger(__name__)

DEFAULT_CLASSIFY_HORIZON = 8


class FamilyTag(StrEnum):
    S3_CONNECTED = "s3-connected"
    S3_2CHAIN = "s3-2chain"
    T4_II = "t4-ii"
    T4_III = "t4-iii"
    T5_I = "t5-i"
    T5_II = "t5-ii"
    T5_III = "t5-iii"
    T5_IV = "t5-iv"

    @classmethod
    def parse(cls, value: str) -> "FamilyTag":
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise UnknownFamilyError({"family": value, "known": [t.value for t in cls]}) from None


# Group sizes of the tuple notation, e.g. (a,b,c;d) is (3, 1).
SHAPES: dict[FamilyTag, tuple[int, ...]] = {
    FamilyTag.S3_CONNECTED: (3,),
    FamilyTag.S3_2CHAIN: (2, 1),
    FamilyTag.T4_II: (3, 1),
    FamilyTag.T4_III: (2, 2),
    FamilyTag.T5_I: (4, 1),
    FamilyTag.T5_II: (3, 1, 1),
    FamilyTag.T5_III: (3, 2),
    FamilyTag.T5_IV: (2, 2, 1),
}


@dataclass(frozen=True)
class FamilyMember:
    notation: str
    poset: LabeledPoset


@dataclass(frozen=True)
class PopFamily:
    tag: FamilyTag
    members: tuple[FamilyMember, ...]

    @property
    def size(self) -> int:
        return sum(SHAPES[self.tag])

    def distinct_posets(self) -> list[LabeledPoset]:
        return list(dict.fromkeys(member.poset for member in self.members))

    def notations_of(self, poset: LabeledPoset) -> list[str]:
        return [m.notation for m in self.members if m.poset == poset]


def _tuple_text(groups: Sequence[Sequence[int]]) -> str:
    return "(" + ";".join(",".join(map(str, g)) for g in groups) + ")"


def generate_family(tag: FamilyTag | str) -> PopFamily:
    """Every labeling of the family's shape; neighbouring isolated labels ascend."""
    if not isinstance(tag, FamilyTag):
        tag = FamilyTag.parse(tag)
    shape = SHAPES[tag]
    members = []
    for labels in itertools.permutations(range(1, sum(shape) + 1)):
        groups, start = [], 0
        for size in shape:
            groups.append(labels[start : start + size])
            start += size
        singles = [g[0] for g in groups if len(g) == 1]
        if singles != sorted(singles):
            continue
        notation = _tuple_text(groups)
        members.append(FamilyMember(notation, poset_from_tuple(notation)))
    logger.debug("Generated %d members of %s", len(members), tag)
    return PopFamily(tag, tuple(members))


def symmetry_images(p: LabeledPoset) -> set[LabeledPoset]:
    return {p, reverse(p), complement(p), reverse(complement(p))}


@dataclass(frozen=True)
class Orbit:
    representative: LabeledPoset
    posets: tuple[LabeledPoset, ...]
    notations: tuple[str, ...]


def symmetry_reduce(family: PopFamily) -> list[Orbit]:
    """Orbits under reverse and complement; the representative has the least serialization."""
    seen: set[LabeledPoset] = set()
    orbits = []
    distinct = family.distinct_posets()
    for p in distinct:
        if p in seen:
            continue
        images = [q for q in distinct if q in symmetry_images(p)]
        seen.update(images)
        images.sort(key=format_pop)
        notations = tuple(n for q in images for n in family.notations_of(q))
        orbits.append(Orbit(images[0], tuple(images), notations))
    orbits.sort(key=lambda o: format_pop(o.representative))
    return orbits


class WilfClass(BaseModel):
    model_config = ConfigDict(frozen=True)

    representative: str
    pop: str
    members: tuple[str, ...]
    counts: CountSequence
    oeis: Optional[str] = None

    @property
    def isolated(self) -> tuple[int, ...]:
        return tuple(sorted(poset_from_tuple(self.representative).isolated_vertices()))


class WilfClassReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: FamilyTag
    horizon: int
    classes: tuple[WilfClass, ...]

    @computed_field
    @property
    def note(self) -> str:
        return f"classes agree through n={self.horizon}; equality there is necessary, not proof"

    def class_of(self, notation: str) -> Optional[WilfClass]:
        return next((c for c in self.classes if notation in c.members), None)


def known_sequences() -> dict[str, tuple[int, ...]]:
    return dict(KNOWN_SEQUENCES)


def match_sequence(sequence: CountSequence | Sequence[int]) -> Optional[str]:
    """The catalogued sequence agreeing with every shared term, when exactly one does."""
    counts = tuple(sequence.counts if isinstance(sequence, CountSequence) else sequence)
    if not counts:
        return None
    hits = [
        oeis for oeis, reference in KNOWN_SEQUENCES.items() if reference[: len(counts)] == counts[: len(reference)]
    ]
    return hits[0] if len(hits) == 1 else None


def _count(job: tuple[LabeledPoset, int, int]) -> CountSequence:
    p, horizon, budget = job
    return count_avoiders(p, horizon, budget=budget)


def count_many(
    posets: Sequence[LabeledPoset],
    horizon: int,
    *,
    workers: int = 1,
    budget: int = DEFAULT_MAX_HORIZON,
) -> list[CountSequence]:
    if horizon > budget:
        raise BudgetExceededError({"horizon": horizon, "budget": budget})
    jobs = [(p, horizon, budget) for p in posets]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(_count, jobs))
    return [_count(job) for job in jobs]


def wilf_classes(
    family: PopFamily,
    horizon: int = DEFAULT_CLASSIFY_HORIZON,
    *,
    workers: int = 1,
    budget: int = DEFAULT_MAX_HORIZON,
) -> WilfClassReport:
    orbits = symmetry_reduce(family)
    sequences = count_many([o.representative for o in orbits], horizon, workers=workers, budget=budget)

    grouped: dict[tuple[int, ...], list[Orbit]] = {}
    for orbit, sequence in zip(orbits, sequences):
        grouped.setdefault(sequence.counts, []).append(orbit)

    classes = []
    for counts, group in grouped.items():
        representative = group[0].representative
        members = tuple(n for orbit in group for n in orbit.notations)
        sequence = CountSequence(pattern=format_pop(representative), counts=counts)
        classes.append(
            WilfClass(
                representative=family.notations_of(representative)[0],
                pop=format_pop(representative),
                members=members,
                counts=sequence,
                oeis=match_sequence(sequence),
            )
        )
    classes.sort(key=lambda c: c.pop)
    logger.info("%s: %d classes through n=%d", family.tag, len(classes), horizon)
    return WilfClassReport(family=family.tag, horizon=horizon, classes=tuple(classes))


def _terms(counts: Sequence[int]) -> str:
    return ",".join(map(str, counts))


def family_table_check(report: WilfClassReport) -> Verdict:
    """Compare computed classes with the published rows of the same family."""
    rows = TABLES[str(report.family)]
    problems = []
    owners: dict[str, int] = {}
    for number, row in enumerate(rows, start=1):
        printed = row.sequence[: report.horizon]
        for member in row.members:
            wilf_class = report.class_of(member)
            if wilf_class is None:
                problems.append(f"{member}: not in {report.family}")
                continue
            computed = wilf_class.counts.counts[: len(printed)]
            if computed != printed:
                problems.append(f"{member}: {_terms(computed)} vs printed {_terms(printed)} (row {number})")
                continue
            earlier = owners.setdefault(wilf_class.representative, number)
            if earlier != number:
                problems.append(f"{member}: row {number} shares a class with row {earlier}")
    if len(report.classes) != len(rows):
        problems.append(f"{len(report.classes)} classes, table has {len(rows)}")
    return Verdict(
        check=f"table-{report.family}",
        passed=not problems,
        detail="; ".join(problems) or f"{len(rows)} rows reproduced through n={report.horizon}",
        counterexample=problems[0] if problems else None,
    )


def _isolated_group(wilf_class: WilfClass) -> str:
    return ",".join(map(str, wilf_class.isolated)) or "-"


def emit_tables(reports: Iterable[WilfClassReport], fmt: str = "md") -> str:
    reports = list(reports)
    if fmt == "json":
        return TypeAdapter(list[WilfClassReport]).dump_json(reports, indent=2).decode() + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["family", "class", "isolated", "pop", "counts", "oeis"])
        for report in reports:
            for number, c in enumerate(report.classes, start=1):
                for member in c.members:
                    writer.writerow(
                        [
                            report.family,
                            number,
                            _isolated_group(c),
                            member,
                            " ".join(map(str, c.counts.counts)),
                            c.oeis or "",
                        ]
                    )
        return buffer.getvalue()
    if fmt != "md":
        raise ValueError(f"unknown format {fmt!r}")

    lines = []
    for report in reports:
        lines.append(f"## {report.family} ({report.note})")
        lines.append("")
        classes = sorted(report.classes, key=lambda c: (c.isolated, c.pop))
        number = 0
        for isolated, group in itertools.groupby(classes, key=_isolated_group):
            lines.append(f"Isolated labels: {isolated}")
            lines.append("")
            lines.append("| No. | POP | counts | OEIS |")
            lines.append("|---|---|---|---|")
            for c in group:
                number += 1
                counts = ",".join(map(str, c.counts.counts))
                for i, member in enumerate(c.members):
                    if i == 0:
                        lines.append(f"| {number} | {member} | {counts} | {c.oeis or ''} |")
                    else:
                        lines.append(f"| | {member} | | |")
            lines.append("")
    return "\n".join(lines)


def _extreme_isolated(p: LabeledPoset) -> bool:
    isolated = sorted(p.isolated_vertices())
    k, s = p.size, len(isolated)
    for i in range(s + 1):
        if set(isolated) == set(range(1, i + 1)) | set(range(k - s + i + 1, k + 1)):
            return True
    return False


def gk_reduction_check(p: LabeledPoset, horizon: int = 7) -> Verdict:
    """Compare ``|S_n(p)|`` with ``n!/(n-s)! |S_{n-s}(q)|`` once the isolated labels are dropped."""
    if not _extreme_isolated(p):
        raise HypothesisError({"pattern": format_pop(p), "reason": "isolated labels are not at the ends"})
    isolated = p.isolated_vertices()
    s, k = len(isolated), p.size
    q = without(p, isolated)
    brute = count_avoiders(p, horizon, budget=max(horizon, DEFAULT_MAX_HORIZON)).counts
    reduced = count_avoiders(q, horizon, budget=max(horizon, DEFAULT_MAX_HORIZON)).counts

    def s_q(m: int) -> int:
        if m == 0:
            return 0 if q.size == 0 else 1
        return reduced[m - 1]

    rows = []
    for n in range(1, horizon + 1):
        actual = brute[n - 1]
        formula = math.factorial(n) // math.factorial(n - s) * s_q(n - s) if n >= s else None
        printed = formula if n < k else 0
        rows.append(
            {
                "n": n,
                "count": actual,
                "formula": formula,
                "formula_holds": None if formula is None else formula == actual,
                "printed_split_holds": printed == actual,
            }
        )
    failures = [r for r in rows if r["formula_holds"] is False]
    split_failures = [r["n"] for r in rows if not r["printed_split_holds"]]
    holds_from = s if not failures else None
    detail = (
        f"formula holds for {s} <= n <= {horizon}" if holds_from is not None else "formula fails"
    )
    if split_failures:
        detail += f"; printed case split fails at n={split_failures}"
    return Verdict(
        check="gk-5.1",
        passed=not failures,
        detail=detail,
        counterexample=None if not failures else f"n={failures[0]['n']}",
        data={"pattern": format_pop(p), "rows": rows, "printed_split_failures": split_failures},
    )


# Distant-pattern chains; each entry should match the table row given alongside.
DIMITROV_CHAINS: tuple[tuple[tuple[str, ...], tuple[int, ...]], ...] = (
    (("(5,4,3,1;2)", "(4,5,3,1;2)", "(4,5,1,3;2)"), TABLES["t5-i"][3].sequence),
    (("(5,4,2,1;3)", "(4,5,2,1;3)", "(4,5,1,2;3)"), TABLES["t5-i"][10].sequence),
    (("(5,3,2,1;4)", "(3,5,2,1;4)", "(3,5,1,2;4)"), TABLES["t5-i"][3].sequence),
)


def dimitrov_check(horizon: int = DEFAULT_CLASSIFY_HORIZON, *, workers: int = 1) -> Verdict:
    chains = []
    passed = True
    counterexample = None
    for number, (members, expected) in enumerate(DIMITROV_CHAINS, start=1):
        sequences = count_many([poset_from_tuple(m) for m in members], horizon, workers=workers)
        counts = {s.counts for s in sequences}
        equal = len(counts) == 1
        matches_table = equal and sequences[0].counts == expected[:horizon]
        if not (equal and matches_table) and counterexample is None:
            counterexample = f"chain {number}: " + ", ".join(
                f"{m}={list(s.counts)}" for m, s in zip(members, sequences)
            )
        passed = passed and equal and matches_table
        chains.append(
            {"members": list(members), "counts": [list(s.counts) for s in sequences], "table_row_matches": matches_table}
        )
    return Verdict(
        check="dimitrov",
        passed=passed,
        detail=f"three chains compared through n={horizon}",
        counterexample=counterexample,
        data={"chains": chains},
    )
