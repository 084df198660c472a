"""Published classification tables for chain-component POPs of sizes 3 to 5, through n = 8."""

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class TableRow:
    members: tuple[str, ...]
    sequence: tuple[int, ...]
    oeis: Optional[str] = None


def _row(members: str, sequence: str, oeis: Optional[str] = None) -> TableRow:
    return TableRow(
        tuple(m.strip() for m in members.split()),
        tuple(int(x) for x in sequence.split(",")),
        oeis,
    )


KNOWN_SEQUENCES: dict[str, tuple[int, ...]] = {
    "A000108": (1, 2, 5, 14, 42, 132, 429, 1430),
    "A000027": (1, 2, 3, 4, 5, 6, 7, 8),
    "A000045": (1, 2, 3, 5, 8, 13, 21, 34),
    "A000984": (1, 2, 6, 20, 70, 252, 924, 3432),
    "A049124": (1, 2, 6, 20, 71, 264, 1015, 4002),
}

TABLES: dict[str, tuple[TableRow, ...]] = {
    "s3-connected": (
        _row("(1,2,3)", "1,2,5,14,42,132,429,1430", "A000108"),
    ),
    "s3-2chain": (
        _row("(1,2;3)", "1,2,3,4,5,6,7,8", "A000027"),
        _row("(1,3;2)", "1,2,3,5,8,13,21,34", "A000045"),
    ),
    "t4-ii": (
        _row("(1,2,3;4) (1,3,2;4) (3,1,2;4)", "1,2,6,20,70,252,924,3432", "A000984"),
        _row("(4,1,2;3) (4,2,1;3) (2,4,1;3)", "1,2,6,20,71,264,1015,4002", "A049124"),
    ),
    "t4-iii": (
        _row("(1,2;4,3) (1,2;3,4)", "1,2,6,18,50,130,322,770"),
        _row("(1,3;4,2)", "1,2,6,18,52,152,444,1296"),
        _row("(1,3;2,4)", "1,2,6,18,52,147,413,1159"),
        _row("(1,4;3,2)", "1,2,6,18,50,134,358,962"),
        _row("(1,4;2,3)", "1,2,6,18,53,156,460,1357"),
    ),
    "t5-i": (
        _row(
            "(1,2,3,4;5) (2,1,4,3;5) (2,1,3,4;5) (3,2,1,4;5)",
            "1,2,6,24,115,618,3591,22088",
        ),
        _row(
            # (3,1,2,4;5) is printed in the row above but counts 3584 at n = 7
            "(2,3,1,4;5) (3,1,4,2;5) (3,1,2,4;5)",
            "1,2,6,24,115,618,3584,21920",
        ),
        _row("(1,3,2,4;5)", "1,2,6,24,115,618,3591,22096"),
        _row(
            "(5,3,2,1;4) (5,3,1,2;4) (5,1,2,3;4) (3,5,2,1;4) (3,5,1,2;4)",
            "1,2,6,24,115,619,3612,22386",
        ),
        _row("(5,2,1,3;4) (5,1,3,2;4)", "1,2,6,24,115,618,3592,22102"),
        _row("(5,2,3,1;4)", "1,2,6,24,115,619,3613,22412"),
        _row("(2,5,3,1;4)", "1,2,6,24,115,619,3607,22257"),
        _row("(2,5,1,3;4)", "1,2,6,24,115,618,3587,22000"),
        _row("(1,5,3,2;4)", "1,2,6,24,115,619,3608,22293"),
        _row("(1,5,2,3;4)", "1,2,6,24,115,619,3606,22232"),
        _row("(4,5,1,2;3) (5,4,2,1;3) (5,4,1,2;3)", "1,2,6,24,115,619,3614,22425"),
        _row("(5,2,4,1;3)", "1,2,6,24,115,619,3615,22457"),
        _row("(4,2,5,1;3)", "1,2,6,24,115,619,3608,22272"),
        _row("(2,5,4,1;3)", "1,2,6,24,115,619,3609,22297"),
        _row("(2,5,1,4;3)", "1,2,6,24,115,619,3601,22147"),
        _row("(2,4,5,1;3)", "1,2,6,24,115,619,3614,22426"),
    ),
    "t5-ii": (
        _row("(1,2,3;4;5) (1,3,2;4;5) (3,1,2;4;5)", "1,2,6,24,100,420,1764,7392"),
        _row(
            # printed as (1,4,2;3,5), which is not of this type
            "(1,3,4;2;5) (1,4,3;2;5) (4,1,3;2;5) (1,2,4;3;5) (1,4,2;3;5) (4,1,2;3;5)",
            "1,2,6,24,100,426,1848,8120",
        ),
        _row("(1,3,5;2;4) (5,3,1;2;4)", "1,2,6,24,100,434,1934,8828"),
        _row("(1,5,3;2;4) (3,1,5;2;4) (5,1,3;2;4)", "1,2,6,24,100,430,1889,8494"),
        _row("(1,2,5;3;4) (5,1,2;3;4)", "1,2,6,24,100,426,1875,8482"),
        _row("(1,5,2;3;4)", "1,2,6,24,100,426,1855,8278"),
    ),
    "t5-iii": (
        _row("(3,4,5;1,2) (3,5,4;1,2) (5,3,4;1,2)", "1,2,6,24,110,530,2597,12796"),
        _row("(2,4,5;1,3)", "1,2,6,24,110,532,2629,13135"),
        _row("(2,5,4;1,3)", "1,2,6,24,110,532,2632,13188"),
        _row("(4,2,5;1,3)", "1,2,6,24,110,532,2628,13095"),
        _row("(5,4,2;1,3)", "1,2,6,24,110,533,2658,13527"),
        _row("(4,5,2;1,3)", "1,2,6,24,110,532,2638,13329"),
        _row("(5,2,4;1,3)", "1,2,6,24,110,533,2640,13195"),
        _row("(2,3,5;1,4)", "1,2,6,24,110,535,2679,13632"),
        _row("(2,5,3;1,4)", "1,2,6,24,110,535,2690,13836"),
        _row("(3,2,5;1,4)", "1,2,6,24,110,531,2613,12974"),
        _row("(5,3,2;1,4)", "1,2,6,24,110,531,2601,12817"),
        _row("(3,5,2;1,4)", "1,2,6,24,110,531,2626,13192"),
        _row("(5,2,3;1,4)", "1,2,6,24,110,534,2666,13534"),
        _row("(2,3,4;1,5)", "1,2,6,24,110,536,2690,13711"),
        _row("(2,4,3;1,5)", "1,2,6,24,110,530,2595,12759"),
        _row("(4,3,2;1,5)", "1,2,6,24,110,530,2564,12190"),
        _row("(3,4,2;1,5)", "1,2,6,24,110,530,2575,12407"),
        _row("(1,4,5;2,3)", "1,2,6,24,110,533,2663,13637"),
        _row("(1,5,4;2,3)", "1,2,6,24,110,534,2678,13748"),
        _row("(4,1,5;2,3)", "1,2,6,24,110,530,2607,12997"),
        _row("(5,4,1;2,3)", "1,2,6,24,110,530,2605,12996"),
        _row("(4,5,1;2,3)", "1,2,6,24,110,530,2617,13202"),
        _row("(5,1,4;2,3)", "1,2,6,24,110,533,2633,13156"),
        _row("(1,3,5;2,4)", "1,2,6,24,110,537,2727,14261"),
        _row("(1,5,3;2,4)", "1,2,6,24,110,533,2673,13757"),
        _row("(5,3,1;2,4)", "1,2,6,24,110,533,2644,13319"),
        _row("(3,5,1;2,4)", "1,2,6,24,110,532,2628,13175"),
    ),
    "t5-iv": (
        _row("(1,2;3,4;5) (1,2;4,3;5) (1,2;4,5;3)", "1,2,6,24,90,300,910,2576"),
        _row("(1,3;4,2;5)", "1,2,6,24,90,312,1064,3552"),
        _row("(1,3;2,4;5)", "1,2,6,24,90,312,1029,3304"),
        _row("(1,4;3,2;5)", "1,2,6,24,90,300,938,2864"),
        _row("(1,4;2,3;5)", "1,2,6,24,90,318,1092,3680"),
        _row("(1,2;3,5;4) (1,2;5,3;4)", "1,2,6,24,90,315,1043,3318"),
        _row("(1,3;2,5;4)", "1,2,6,24,90,311,1034,3401"),
        _row("(1,3;5,2;4)", "1,2,6,24,90,323,1129,3951"),
        _row("(1,5;2,3;4)", "1,2,6,24,90,310,1034,3458"),
        _row("(1,5;3,2;4)", "1,2,6,24,90,301,914,2768"),
        _row("(1,4;2,5;3)", "1,2,6,24,90,329,1192,4302"),
        _row("(1,4;5,2;3)", "1,2,6,24,90,310,1088,3888"),
        _row("(1,5;2,4;3)", "1,2,6,24,90,334,1235,4567"),
        _row("(1,5;4,2;3)", "1,2,6,24,90,316,1009,3210"),
    ),
}


def table_rows(tag: str) -> tuple[TableRow, ...]:
    return TABLES[tag]
