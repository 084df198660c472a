import inspect
import logging
from typing import Any, Optional
from uuid import UUID

from eventsourcing.application import AggregateNotFound, Application

from src.domain.exceptions import RunNotFoundError
from src.domain.permutation import DEFAULT_MAX_HORIZON
from src.domain.verification_run import VerificationRun

from .checks import CHECKS, BijectionReport, verify_bijection
from .classify import (
    DEFAULT_CLASSIFY_HORIZON,
    FamilyTag,
    WilfClassReport,
    dimitrov_check,
    family_table_check,
    generate_family,
    wilf_classes,
)
from .verdict import Verdict

logger = logging.getLogger(__name__)


class Verifications(Application):
    def start_run(self, label: str) -> UUID:
        run = VerificationRun.start(label=label)
        self.save(run)
        return run.id

    def get_run(self, run_id: UUID) -> VerificationRun:
        try:
            aggregate = self.repository.get(run_id)
        except AggregateNotFound:
            raise RunNotFoundError(run_id)
        else:
            assert isinstance(aggregate, VerificationRun)
            return aggregate

    def record(self, run_id: UUID, verdict: Verdict) -> None:
        run = self.get_run(run_id)
        run.record_verdict(
            check=verdict.check,
            passed=verdict.passed,
            detail=verdict.detail,
            counterexample=verdict.counterexample,
        )
        self.save(run)
        if verdict.passed:
            logger.info("%s passed: %s", verdict.check, verdict.detail)
        else:
            logger.warning("%s failed: %s (%s)", verdict.check, verdict.detail, verdict.counterexample)

    def complete_run(self, run_id: UUID) -> None:
        run = self.get_run(run_id)
        run.complete()
        self.save(run)

    def all_passed(self, run_id: UUID) -> bool:
        return self.get_run(run_id).all_passed

    def run_check(self, run_id: UUID, check_id: str, **options: Optional[int]) -> Verdict:
        check = CHECKS[check_id]
        accepted = inspect.signature(check).parameters
        kwargs = {k: v for k, v in options.items() if v is not None and k in accepted}
        verdict = check(**kwargs)
        self.record(run_id, verdict)
        return verdict

    def run_bijection(self, run_id: UUID, map_id: str, n_max: Optional[int] = None) -> BijectionReport:
        report = verify_bijection(map_id, n_max)
        self.record(run_id, report.verdict())
        return report

    def run_conjecture(
        self, run_id: UUID, horizon: int = DEFAULT_CLASSIFY_HORIZON, *, workers: int = 1
    ) -> Verdict:
        verdict = dimitrov_check(horizon, workers=workers)
        self.record(run_id, verdict)
        return verdict

    def run_classify(
        self,
        run_id: UUID,
        family: FamilyTag | str,
        horizon: int = DEFAULT_CLASSIFY_HORIZON,
        *,
        workers: int = 1,
        budget: int = DEFAULT_MAX_HORIZON,
    ) -> WilfClassReport:
        report = wilf_classes(generate_family(family), horizon, workers=workers, budget=budget)
        self.record(run_id, family_table_check(report))
        return report

    def summary(self, run_id: UUID) -> dict[str, Any]:
        run = self.get_run(run_id)
        return {
            "label": run.label,
            "completed": run.is_completed,
            "passed": run.all_passed,
            "verdicts": list(run.verdicts),
        }
