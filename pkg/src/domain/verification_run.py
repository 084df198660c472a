from typing import Optional
from uuid import uuid4

from eventsourcing.domain import Aggregate, AggregateCreated, AggregateEvent

from .exceptions import RunClosedError


class Started(AggregateCreated):
    label: str


class VerdictRecorded(AggregateEvent):
    check: str
    passed: bool
    detail: str
    counterexample: Optional[str]

    def apply(self, aggregate: "VerificationRun") -> None:
        aggregate.verdicts.append(
            {
                "check": self.check,
                "passed": self.passed,
                "detail": self.detail,
                "counterexample": self.counterexample,
            }
        )


class Completed(AggregateEvent):
    def apply(self, aggregate: "VerificationRun") -> None:
        aggregate.is_completed = True


class VerificationRun(Aggregate):
    def __init__(self, label: str):
        self.label = label
        self.verdicts: list[dict] = []
        self.is_completed = False

    @classmethod
    def start(cls, label: str) -> "VerificationRun":
        return cls._create(Started, id=uuid4(), label=label)

    def record_verdict(
        self,
        check: str,
        passed: bool,
        detail: str = "",
        counterexample: Optional[str] = None,
    ) -> None:
        self.check_run_is_open()
        self.trigger_event(
            VerdictRecorded,
            check=check,
            passed=passed,
            detail=detail,
            counterexample=counterexample,
        )

    def check_run_is_open(self) -> None:
        if self.is_completed:
            raise RunClosedError({"run_id": self.id})

    def complete(self) -> None:
        self.check_run_is_open()
        self.trigger_event(Completed)

    @property
    def all_passed(self) -> bool:
        return all(verdict["passed"] for verdict in self.verdicts)

    def failures(self) -> list[dict]:
        return [verdict for verdict in self.verdicts if not verdict["passed"]]
