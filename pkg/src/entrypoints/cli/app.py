import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Literal, Optional, Sequence

from pydantic import BaseModel, Field, ValidationError, model_validator

from src.app.checks import BIJECTIONS, CHECKS
from src.app.classify import DEFAULT_CLASSIFY_HORIZON, FamilyTag, emit_tables
from src.app.verifications import Verifications
from src.domain.exceptions import (
    BudgetExceededError,
    EncodingError,
    HypothesisError,
    InvalidBoardError,
    InvalidPermutationError,
    InvalidPosetError,
    NotShapeWilfEquivalentError,
    RankOverflowError,
    ShapeMismatchError,
    UnknownFamilyError,
)
from src.domain.permutation import count_avoiders
from src.domain.poset import parse_pop

from .config import settings

logger = logging.getLogger(__name__)

USAGE_ERRORS = (InvalidPosetError, UnknownFamilyError, BudgetExceededError)
DOMAIN_ERRORS = (
    EncodingError,
    HypothesisError,
    InvalidBoardError,
    InvalidPermutationError,
    NotShapeWilfEquivalentError,
    RankOverflowError,
    ShapeMismatchError,
)

Subcommand = Literal["enumerate", "classify", "check", "verify-bijection", "conjecture"]
OutputFormat = Literal["md", "csv", "json"]


class RunConfig(BaseModel):
    subcommand: Subcommand
    pop: Optional[str] = None
    family: Optional[str] = None
    check_id: Optional[str] = None
    map_id: Optional[str] = None
    conjecture: Optional[str] = None
    horizon: Optional[int] = Field(default=None, ge=1)
    n_max: Optional[int] = Field(default=None, ge=1)
    format: Optional[OutputFormat] = None
    workers: int = Field(default_factory=lambda: settings.workers, ge=1)
    output: Optional[Path] = None
    unsafe_budget: bool = False

    @model_validator(mode="after")
    def check_caps(self) -> "RunConfig":
        if self.subcommand == "enumerate" and self.format == "md":
            raise ValueError("enumerate writes csv or json")
        if self.unsafe_budget:
            return self
        if self.horizon is not None and self.horizon > settings.max_horizon:
            raise ValueError(
                f"horizon {self.horizon} is above the cap of {settings.max_horizon}; pass --unsafe-budget to run it"
            )
        if self.n_max is not None and self.n_max > settings.max_board_size:
            raise ValueError(
                f"board size {self.n_max} is above the cap of {settings.max_board_size}; pass --unsafe-budget to run it"
            )
        return self

    @property
    def horizon_budget(self) -> int:
        if self.unsafe_budget:
            return max(self.horizon or 0, settings.max_horizon)
        return settings.max_horizon

    @property
    def output_format(self) -> str:
        if self.format is not None:
            return self.format
        return {"enumerate": "csv", "classify": "md"}.get(self.subcommand, "json")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", type=Path, help="write the document here instead of stdout")
    common.add_argument("--log-level", help="override POP_LOG_LEVEL")
    common.add_argument("--unsafe-budget", action="store_true", help="lift the horizon and board size caps")

    parallel = argparse.ArgumentParser(add_help=False)
    parallel.add_argument("--workers", type=int, help="worker processes (default: POP_WORKERS or 1)")

    parser = argparse.ArgumentParser(prog="pops", description="Partially ordered pattern avoidance toolkit.")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    enumerate_parser = subparsers.add_parser(
        "enumerate", parents=[common, parallel], help="count avoiders for n = 1..N"
    )
    enumerate_parser.add_argument("--pop", required=True, help='e.g. "pop 3: c[2>3], i[1]"')
    enumerate_parser.add_argument("--n", dest="horizon", type=int, required=True)
    enumerate_parser.add_argument("--format", choices=("csv", "json"))

    classify_parser = subparsers.add_parser("classify", parents=[common, parallel], help="Wilf classes of a family")
    classify_parser.add_argument("--family", required=True, choices=[tag.value for tag in FamilyTag])
    classify_parser.add_argument("--horizon", type=int, default=DEFAULT_CLASSIFY_HORIZON)
    classify_parser.add_argument("--format", choices=("md", "csv", "json"))

    check_parser = subparsers.add_parser("check", parents=[common], help="run one equivalence check")
    check_parser.add_argument("--theorem", dest="check_id", required=True, choices=sorted(CHECKS))
    check_parser.add_argument("--nmax", dest="n_max", type=int)
    check_parser.add_argument("--horizon", type=int)

    bijection_parser = subparsers.add_parser("verify-bijection", parents=[common], help="exhaustive bijection checks")
    bijection_parser.add_argument("--map", dest="map_id", required=True, choices=BIJECTIONS)
    bijection_parser.add_argument("--nmax", dest="n_max", type=int)

    conjecture_parser = subparsers.add_parser(
        "conjecture", parents=[common, parallel], help="compare a conjecture with the tables"
    )
    conjecture_parser.add_argument("conjecture", choices=("dimitrov",))
    conjecture_parser.add_argument("--horizon", type=int, default=DEFAULT_CLASSIFY_HORIZON)

    return parser


def configure_logging(level_name: Optional[str] = None) -> None:
    log_level = getattr(logging, (level_name or settings.log_level).upper(), logging.INFO)
    logging.basicConfig(level=log_level)
    logger.setLevel(log_level)


def _emit(document: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(document)
    else:
        output.write_text(document, encoding="utf-8")
        logger.info("Wrote %s", output)


def run(config: RunConfig) -> int:
    verifications = Verifications()
    run_id = verifications.start_run(label=config.subcommand)
    fmt = config.output_format

    if config.subcommand == "enumerate":
        sequence = count_avoiders(
            parse_pop(config.pop or ""),
            config.horizon,
            workers=config.workers,
            budget=config.horizon_budget,
        )
        document = sequence.model_dump_json() + "\n" if fmt == "json" else sequence.to_csv()
    elif config.subcommand == "classify":
        report = verifications.run_classify(
            run_id,
            config.family,
            config.horizon or DEFAULT_CLASSIFY_HORIZON,
            workers=config.workers,
            budget=config.horizon_budget,
        )
        document = emit_tables([report], fmt)
    elif config.subcommand == "check":
        verdict = verifications.run_check(run_id, config.check_id, n_max=config.n_max, horizon=config.horizon)
        document = verdict.model_dump_json(indent=2) + "\n"
    elif config.subcommand == "verify-bijection":
        bijection = verifications.run_bijection(run_id, config.map_id, config.n_max)
        document = bijection.model_dump_json(indent=2, by_alias=True) + "\n"
    else:
        verdict = verifications.run_conjecture(
            run_id, config.horizon or DEFAULT_CLASSIFY_HORIZON, workers=config.workers
        )
        document = verdict.model_dump_json(indent=2) + "\n"

    verifications.complete_run(run_id)
    _emit(document, config.output)
    return 0 if verifications.all_passed(run_id) else 1


def _config_fields(args: argparse.Namespace) -> dict[str, Any]:
    fields = {k: v for k, v in vars(args).items() if k != "log_level" and v is not None}
    fields.setdefault("workers", settings.workers)
    return fields


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    configure_logging(args.log_level)

    try:
        config = RunConfig(**_config_fields(args))
    except ValidationError as exc:
        message = "; ".join(error["msg"] for error in exc.errors())
        print(f"pops: error: {message}", file=sys.stderr)
        return 2

    try:
        return run(config)
    except USAGE_ERRORS as exc:
        print(f"pops: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS:
        logger.exception("Run of %s stopped on a domain error", config.subcommand)
        return 1


if __name__ == "__main__":
    sys.exit(main())
