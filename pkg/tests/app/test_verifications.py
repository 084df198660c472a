from uuid import uuid4

import pytest

from src.app.verdict import Verdict
from src.app.verifications import Verifications
from src.domain.exceptions import RunClosedError, RunNotFoundError


def test_verifications(fake):
    verifications = Verifications()

    # Check run not found error.
    with pytest.raises(RunNotFoundError):
        verifications.get_run(uuid4())

    # Start a run.
    label = fake.word()
    run_id = verifications.start_run(label)

    # Check a fresh run.
    assert verifications.all_passed(run_id)
    assert verifications.summary(run_id) == {"label": label, "completed": False, "passed": True, "verdicts": []}

    # Run a named check, dropping options it does not take.
    verdict = verifications.run_check(run_id, "1.6", n_max=3, horizon=None, pairs=2)
    assert verdict.check == "1.6"
    assert verdict.passed

    # Verify a bijection.
    report = verifications.run_bijection(run_id, "west", 4)
    assert report.passed

    # Classify a family against its table.
    report = verifications.run_classify(run_id, "s3-2chain", 6)
    assert len(report.classes) == 2

    # Check verdicts.
    assert verifications.all_passed(run_id)
    assert [v["check"] for v in verifications.summary(run_id)["verdicts"]] == [
        "1.6",
        "bijection-west",
        "table-s3-2chain",
    ]

    # Record a failing verdict.
    verifications.record(run_id, Verdict(check="gk-5.1", passed=False, detail="formula fails", counterexample="n=3"))
    assert not verifications.all_passed(run_id)

    # Complete the run.
    verifications.complete_run(run_id)
    summary = verifications.summary(run_id)
    assert summary["completed"]
    assert not summary["passed"]
    assert summary["verdicts"][-1] == {
        "check": "gk-5.1",
        "passed": False,
        "detail": "formula fails",
        "counterexample": "n=3",
    }

    # Fail to record into a completed run.
    with pytest.raises(RunClosedError):
        verifications.run_check(run_id, "lemma-3.1", max_total=3)

    # Check the run is unchanged.
    assert len(verifications.summary(run_id)["verdicts"]) == 4


def test_unknown_check():
    verifications = Verifications()
    run_id = verifications.start_run("unknown")

    with pytest.raises(KeyError):
        verifications.run_check(run_id, "9.9")
