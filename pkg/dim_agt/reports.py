from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterator

from dim_agt.algebra.scalars import ScalarPoint, scalar_to_json

SCHEMA_VERSION = 1


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return scalar_to_json(value)


@dataclass
class CheckResult:
    check_id: str
    anchor: str
    status: Status
    details: dict[str, Any] = field(default_factory=dict)
    points: list[dict[str, Any]] = field(default_factory=list)
    seconds: float | None = None

    @property
    def passed(self) -> bool:
        return self.status is not Status.FAIL

    def to_dict(self, timings: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "id": self.check_id,
            "anchor": self.anchor,
            "status": self.status.value,
            "details": _jsonable(self.details),
            "points": self.points,
        }
        if timings and self.seconds is not None:
            data["seconds"] = round(self.seconds, 4)
        return data


@dataclass
class CheckReport:
    """Ordered list of check results for one suite run."""

    suite: str
    results: list[CheckResult] = field(default_factory=list)
    options: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [result for result in self.results if result.status is Status.FAIL]

    def record(
        self,
        check_id: str,
        anchor: str,
        ok: bool,
        point: ScalarPoint | None = None,
        **details: Any,
    ) -> CheckResult:
        result = CheckResult(
            check_id=check_id,
            anchor=anchor,
            status=Status.PASS if ok else Status.FAIL,
            details=details,
            points=[point.describe()] if point is not None else [],
        )
        self.results.append(result)
        return result

    def compare(
        self,
        check_id: str,
        anchor: str,
        left: Any,
        right: Any,
        point: ScalarPoint | None = None,
        **details: Any,
    ) -> CheckResult:
        """Record an exact equality; both sides are kept when they differ."""
        ok = not (left - right)
        if not ok:
            details = {**details, "left": left, "right": right}
        return self.record(check_id, anchor, ok, point, **details)

    def skip(self, check_id: str, anchor: str, reason: str) -> CheckResult:
        result = CheckResult(check_id, anchor, Status.SKIPPED, {"reason": reason})
        self.results.append(result)
        return result

    def extend(self, other: CheckReport) -> None:
        self.results.extend(other.results)

    @contextmanager
    def timed(self) -> Iterator[None]:
        """Attach wall-clock time to every result recorded inside the block."""
        start_index = len(self.results)
        start = time.perf_counter()
        yield
        elapsed = time.perf_counter() - start
        added = self.results[start_index:]
        for result in added:
            result.seconds = elapsed / len(added)

    def summary(self) -> dict[str, int]:
        counts = {status.value: 0 for status in Status}
        for result in self.results:
            counts[result.status.value] += 1
        return counts

    def to_dict(self, timings: bool = True) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "options": _jsonable(self.options),
            "summary": self.summary(),
            "passed": self.passed,
            "results": [result.to_dict(timings) for result in self.results],
        }

    def to_json(self, timings: bool = True) -> str:
        return canonical_json(self.to_dict(timings))


def canonical_json(data: Any) -> str:
    return json.dumps(_jsonable(data), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report(report: CheckReport, path: str, timings: bool = True) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(report.to_json(timings), encoding="utf-8")
    return target


def append_run(path: str, report: CheckReport) -> None:
    line = json.dumps(
        {"suite": report.suite, "passed": report.passed, "summary": report.summary(), "options": _jsonable(report.options)},
        ensure_ascii=False,
        sort_keys=True,
    )
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with file_path.open("a", encoding="utf-8") as f:
        f.write(line + "\n")


def read_runs(path: str, limit: int = 10) -> list[dict[str, Any]]:
    file_path = Path(path)
    if not file_path.exists():
        return []
    try:
        lines = file_path.read_text(encoding="utf-8").splitlines()
    except OSError:
        return []
    entries: list[dict[str, Any]] = []
    for line in lines[-limit:]:
        try:
            item = json.loads(line)
        except json.JSONDecodeError:
            continue
        if isinstance(item, dict) and isinstance(item.get("suite"), str):
            entries.append(item)
    return entries
