import pytest

from src.app.checks import BIJECTIONS, CHECKS, verify_bijection
from src.app.classify import FamilyTag, dimitrov_check, family_table_check, generate_family, wilf_classes
from src.entrypoints.cli.config import settings

pytestmark = pytest.mark.slow


@pytest.mark.parametrize("tag", list(FamilyTag))
def test_family_tables_reproduce(tag):
    report = wilf_classes(generate_family(tag), 8, workers=settings.workers)
    verdict = family_table_check(report)

    assert verdict.passed, verdict.detail


def test_dimitrov_conjecture():
    verdict = dimitrov_check(8, workers=settings.workers)

    assert verdict.passed, verdict.counterexample


@pytest.mark.parametrize("map_id", BIJECTIONS)
def test_bijections_at_default_sizes(map_id):
    report = verify_bijection(map_id)

    assert report.passed
    assert report.cardinality_ok


@pytest.mark.parametrize("check_id", sorted(CHECKS))
def test_checks_at_default_sizes(check_id):
    verdict = CHECKS[check_id]()

    assert verdict.passed, verdict.counterexample
