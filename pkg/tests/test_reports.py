import json
from pathlib import Path

from sympy import QQ

from dim_agt.algebra.scalars import make_point
from dim_agt.reports import CheckReport, Status, append_run, canonical_json, read_runs, write_report


def test_record_compare_and_skip() -> None:
    point = make_point(1, 1, 1)
    report = CheckReport("symfunc")
    report.record("a", "anchor a", True, point)
    result = report.compare("b", "anchor b", QQ(1, 2), QQ(1, 3), point)
    report.skip("c", "anchor c", "not applicable")
    assert result.status is Status.FAIL
    assert result.details["left"] == QQ(1, 2)
    assert report.summary() == {"pass": 1, "fail": 1, "skipped": 1}
    assert not report.passed
    assert [r.check_id for r in report.failures] == ["b"]


def test_report_json_has_schema_and_rationals(tmp_path: Path) -> None:
    report = CheckReport("genmac", options={"seed": 5})
    report.compare("x", "anchor", QQ(2, 3), QQ(2, 3))
    path = write_report(report, str(tmp_path / "out" / "report.json"), timings=False)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["schema"] == 1
    assert data["passed"] is True
    assert data["results"][0]["id"] == "x"
    assert "seconds" not in data["results"][0]


def test_canonical_json_sorts_keys() -> None:
    assert canonical_json({"b": 1, "a": 2}).index('"a"') < canonical_json({"b": 1, "a": 2}).index('"b"')


def test_run_history_append_and_read(tmp_path: Path) -> None:
    path = tmp_path / "runs.jsonl"
    report = CheckReport("kacdet")
    report.record("ok", "anchor", True)
    append_run(str(path), report)
    with path.open("a", encoding="utf-8") as handle:
        handle.write("not json\n")
    runs = read_runs(str(path))
    assert len(runs) == 1
    assert runs[0]["suite"] == "kacdet"
    assert runs[0]["passed"] is True


def test_read_runs_missing_file(tmp_path: Path) -> None:
    assert read_runs(str(tmp_path / "missing.jsonl")) == []
