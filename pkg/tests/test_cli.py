import json
from pathlib import Path

import pytest

from dim_agt.algebra.scalars import make_point
from dim_agt.cli import dump_fixture, main
from dim_agt.reports import read_runs
from dim_agt.suites import SUITE_NAMES, SuiteOptions, run_suite


@pytest.fixture(autouse=True)
def _workdir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.chdir(tmp_path)


def test_suite_names_include_all() -> None:
    assert SUITE_NAMES[-1] == "all"
    assert {"symfunc", "genmac", "rmatrix", "vertical"} <= set(SUITE_NAMES)


def test_run_suite_rejects_unknown_names() -> None:
    with pytest.raises(ValueError):
        run_suite("nonsense")


def test_run_suite_records_options() -> None:
    report = run_suite("rmatrix", SuiteOptions(level=0, points=1, seed=3))
    assert report.passed
    assert report.options["seed"] == 3
    assert report.options["symbolic"] == "none"
    assert any(r.check_id == "rmatrix.yang-baxter.L0" for r in report.results)


def test_run_writes_report_and_history(tmp_path: Path) -> None:
    out = tmp_path / "rmatrix.json"
    code = main(["run", "--suite", "rmatrix", "--level", "0", "--points", "1", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["schema"] == 1
    assert data["suite"] == "rmatrix"
    assert data["passed"] is True
    runs = read_runs(".data/runs.jsonl")
    assert runs and runs[-1]["suite"] == "rmatrix"


def test_run_is_the_default_command(tmp_path: Path) -> None:
    out = tmp_path / "default.json"
    assert main(["--suite", "rmatrix", "--level", "0", "--points", "1", "--out", str(out)]) == 0
    assert out.exists()


def test_same_seed_gives_identical_reports(tmp_path: Path) -> None:
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for out in (first, second):
        args = ["run", "--suite", "rmatrix", "--level", "0", "--points", "1", "--seed", "11", "--no-timings", "--out", str(out)]
        assert main(args) == 0
    assert first.read_bytes() == second.read_bytes()


def test_usage_errors_exit_with_two(tmp_path: Path) -> None:
    out = str(tmp_path / "x.json")
    assert main(["run", "--suite", "nonsense", "--out", out]) == 2
    assert main(["run", "--suite", "rmatrix", "--N", "2", "--out", out]) == 2
    assert main(["run", "--suite", "vertical", "--level", "4", "--points", "1", "--out", out]) == 2


def test_bad_flags_exit_through_argparse() -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["run", "--symbolic", "w"])
    assert excinfo.value.code == 2


def test_dump_fixture_gen_jack(tmp_path: Path) -> None:
    out = tmp_path / "jack.json"
    assert main(["dump-fixture", "gen-jack", "--level", "1", "--out", str(out)]) == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["object"] == "gen-jack"
    assert len(data["value"]["order"]) == 2


def test_dump_fixture_payloads() -> None:
    constants = dump_fixture("k-constants", level=1)["value"]
    assert len(constants) == 3
    assert dump_fixture("genmac-transition", level=1)["value"]["N"] == 2
    assert dump_fixture("r-block", level=1)["value"]["pair"] == [1, 2]
    with pytest.raises(ValueError):
        dump_fixture("k-constants", level=3)
    with pytest.raises(ValueError):
        dump_fixture("nonsense")


@pytest.mark.parametrize(("flag", "recorded"), [("lambda", "Lambda"), ("z", "z")])
def test_series_slots_keep_numeric_scalars(tmp_path: Path, flag: str, recorded: str) -> None:
    out = tmp_path / f"{flag}.json"
    assert main(["run", "--suite", "rmatrix", "--level", "0", "--points", "1", "--symbolic", flag, "--out", str(out)]) == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["options"]["symbolic"] == recorded
    assert data["summary"]["skipped"] == 0
    point = make_point(7, 3, 1, recorded)
    assert not point.symbolic
    assert point.q == make_point(7, 3, 1).q
