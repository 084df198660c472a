import json

import pytest

from src.domain.exceptions import RankOverflowError
from src.entrypoints.cli import app as cli
from src.entrypoints.cli.config import settings


def test_enumerate_csv(capsys):
    assert cli.main(["enumerate", "--pop", "pop 2: c[2>1]", "--n", "5"]) == 0

    assert capsys.readouterr().out == "n,count\n1,1\n2,1\n3,1\n4,1\n5,1\n"


def test_enumerate_json(capsys):
    assert cli.main(["enumerate", "--pop", "pop 3: c[3>2>1]", "--n", "5", "--format", "json"]) == 0

    document = json.loads(capsys.readouterr().out)
    assert document["counts"] == [1, 2, 5, 14, 42]


def test_enumerate_malformed_pop(capsys):
    assert cli.main(["enumerate", "--pop", "pop 3: c[2>3], x[1]", "--n", "4"]) == 2

    captured = capsys.readouterr()
    assert captured.out == ""
    assert "position 15" in captured.err


def test_unknown_choices_are_usage_errors(capsys):
    assert cli.main(["classify", "--family", "t6-i"]) == 2
    assert cli.main(["check", "--theorem", "9.9"]) == 2
    assert cli.main(["enumerate", "--pop", "pop 1: i[1]", "--n", "3", "--format", "md"]) == 2
    assert "invalid choice" in capsys.readouterr().err


def test_horizon_cap(capsys, monkeypatch):
    monkeypatch.setattr(settings, "max_horizon", 3)

    # Check the cap refuses the run.
    assert cli.main(["enumerate", "--pop", "pop 2: c[1>2]", "--n", "4"]) == 2
    assert "--unsafe-budget" in capsys.readouterr().err

    # Check the cap can be lifted.
    assert cli.main(["enumerate", "--pop", "pop 2: c[1>2]", "--n", "4", "--unsafe-budget"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "4,1"


def test_check_suites_keep_their_own_budget(capsys):
    assert cli.main(["check", "--theorem", "1.2", "--horizon", "10", "--unsafe-budget"]) == 2

    assert "pops: error:" in capsys.readouterr().err


def test_check_to_file(capsys, tmp_path):
    output = tmp_path / "verdict.json"

    assert cli.main(["check", "--theorem", "1.6", "--nmax", "3", "--output", str(output)]) == 0

    assert capsys.readouterr().out == ""
    verdict = json.loads(output.read_text(encoding="utf-8"))
    assert verdict["check"] == "1.6"
    assert verdict["passed"] is True


def test_classify(capsys):
    assert cli.main(["classify", "--family", "s3-2chain", "--horizon", "6"]) == 0

    markdown = capsys.readouterr().out
    assert markdown.startswith("## s3-2chain")

    # Check a horizon too short for the table fails the run.
    assert cli.main(["classify", "--family", "t4-ii", "--horizon", "4", "--format", "csv"]) == 1
    assert capsys.readouterr().out.startswith("family,class,isolated,pop,counts,oeis")


def test_verify_bijection(capsys):
    assert cli.main(["verify-bijection", "--map", "west", "--nmax", "3"]) == 0

    document = json.loads(capsys.readouterr().out)
    assert document["map"] == "west"
    assert document["passed"] is True
    assert len(document["instances"]) == 1 + 2 + 6


def test_conjecture(capsys):
    assert cli.main(["conjecture", "dimitrov", "--horizon", "6"]) == 0

    verdict = json.loads(capsys.readouterr().out)
    assert verdict["check"] == "dimitrov"
    assert verdict["passed"] is True


@pytest.mark.parametrize("workers", ["0", "-1"])
def test_workers_must_be_positive(capsys, workers):
    assert cli.main(["enumerate", "--pop", "pop 1: i[1]", "--n", "3", "--workers", workers]) == 2
    assert "pops: error:" in capsys.readouterr().err


def test_domain_errors_exit_one(monkeypatch):
    def overflow(*args, **kwargs):
        raise RankOverflowError({"rank": 7})

    monkeypatch.setattr(cli, "count_avoiders", overflow)

    assert cli.main(["enumerate", "--pop", "pop 1: i[1]", "--n", "3"]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--theorem", "1.6", "--nmax", "3", "--workers", "2"],
        ["verify-bijection", "--map", "west", "--nmax", "3", "--workers", "2"],
    ],
)
def test_workers_only_on_parallel_subcommands(capsys, argv):
    assert cli.main(argv) == 2
    assert "unrecognized arguments: --workers 2" in capsys.readouterr().err

    # Check the counting subcommands still take it.
    assert cli.main(["enumerate", "--pop", "pop 1: i[1]", "--n", "3", "--workers", "2"]) == 0
