import pytest

from src.app.checks import (
    BIJECTIONS,
    CHECKS,
    BijectionReport,
    chain_component_posets,
    chain_pairs,
    check_gk,
    check_lemma_2_1,
    check_lemma_3_1,
    check_lemma_4_2,
    check_lemma_4_4,
    check_lemma_4_5,
    check_theorem_1_1,
    check_theorem_1_2,
    check_theorem_1_3,
    check_theorem_1_4,
    check_theorem_1_5,
    check_theorem_1_6,
    verify_bijection,
)


def test_chain_component_posets():
    assert [len(chain_component_posets(k)) for k in range(1, 4)] == [1, 3, 13]
    assert all(p.all_chains() for p in chain_component_posets(4))


def test_equivalence_checks_pass():
    assert check_theorem_1_1(n_max=4).passed
    assert check_theorem_1_2(horizon=6).passed
    assert check_theorem_1_3(horizon=6).passed
    assert check_theorem_1_4(horizon=6).passed


def test_theorem_1_5_on_sampled_pairs(fake):
    pairs = fake.random_elements(elements=chain_pairs(4), length=6, unique=True)
    verdict = check_theorem_1_5(horizon=6, pairs=pairs)

    assert verdict.passed
    assert verdict.detail == "6 pairs agree through n=6"


def test_theorem_1_6():
    verdict = check_theorem_1_6(n_max=4)

    assert verdict.passed
    assert "45312 -> 2,1,0,2,0 -> 41532" in verdict.detail
    assert verdict.data["holds"]


def test_lemma_checks_pass():
    assert check_lemma_2_1(n_max=4, max_size=3).passed
    assert check_lemma_3_1(max_total=5).passed
    assert check_lemma_4_2(n_max=4).passed
    assert check_lemma_4_4(n_max=4).passed
    assert check_lemma_4_5(n_max=4).passed


def test_gk_check():
    verdict = check_gk(horizon=6)

    assert verdict.passed
    assert len(verdict.data["samples"]) == 6
    assert "printed case split contradicted" in verdict.detail


def test_check_registry():
    assert set(CHECKS) == {
        "1.1",
        "1.2",
        "1.3",
        "1.4",
        "1.5",
        "1.6",
        "lemma-2.1",
        "lemma-2.2",
        "lemma-3.1",
        "lemma-4.2",
        "lemma-4.4",
        "lemma-4.5",
        "gk-5.1",
    }
    assert CHECKS["lemma-2.2"](n_max=4).check == "bijection-west"


@pytest.mark.parametrize(
    "map_id, n_max",
    [("west", 5), ("f13", 5), ("t12", 4), ("t14", 4), ("t16", 4)],
)
def test_verify_bijection(map_id, n_max):
    report = verify_bijection(map_id, n_max)

    assert report.passed
    assert report.cardinality_ok
    assert report.instances
    assert all(i.roundtrip_ok and i.image_ok for i in report.instances)
    assert report.verdict().passed


def test_verify_bijection_unknown_map():
    assert BIJECTIONS == ("west", "f13", "t12", "t14", "t16")

    with pytest.raises(KeyError):
        verify_bijection("lambda")


def test_bijection_report():
    report = BijectionReport(map_id="west")
    report.add("213", "231", True, True)

    assert report.passed
    assert report.model_dump(by_alias=True) == {
        "map": "west",
        "instances": [{"input": "213", "output": "231", "roundtrip_ok": True, "image_ok": True}],
        "cardinality_ok": True,
        "passed": True,
    }

    # Check the first failure becomes the counterexample.
    report.add("321", "312", False, True)
    verdict = report.verdict()
    assert not verdict.passed
    assert verdict.counterexample == "321 -> 312"
