import pytest

from src.domain.exceptions import RunClosedError
from src.domain.verification_run import VerificationRun


def test_verification_run(fake):
    label = fake.word()
    run = VerificationRun.start(label=label)

    # Check a fresh run.
    assert run.label == label
    assert run.verdicts == []
    assert run.all_passed
    assert not run.is_completed

    # Record a passing and a failing verdict.
    run.record_verdict("1.6", True, "equal counts")
    run.record_verdict("gk-5.1", False, "formula fails", counterexample="n=3")

    # Check verdicts.
    assert [v["check"] for v in run.verdicts] == ["1.6", "gk-5.1"]
    assert not run.all_passed
    assert run.failures() == [
        {"check": "gk-5.1", "passed": False, "detail": "formula fails", "counterexample": "n=3"}
    ]

    # Complete the run.
    run.complete()
    assert run.is_completed

    # Fail to record into a completed run.
    with pytest.raises(RunClosedError):
        run.record_verdict("1.1", True)

    # Fail to complete twice.
    with pytest.raises(RunClosedError):
        run.complete()

    # Check the events.
    events = run.collect_events()
    assert len(events) == 4
