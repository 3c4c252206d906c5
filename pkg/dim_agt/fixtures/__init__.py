"""Committed reference tables and their exact evaluation at a ScalarPoint.

Each JSON file holds named tables; every entry gives a row key, an optional
column key and a rational expression in q, t, u1..u3, Q = u1/u2,
s = (t/q)^{1/2}, beta and the Jack weights up1, up2.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Mapping, Optional

from sympy import QQ, Symbol, sympify

from dim_agt.algebra.combinat import PartitionTuple, parse_tuple
from dim_agt.algebra.scalars import ScalarPoint
from dim_agt.config import Settings
from dim_agt.errors import EvaluationError, ScalarModeError
from dim_agt.reports import CheckReport

logger = logging.getLogger(__name__)

SYMBOLS = {name: Symbol(name) for name in ("q", "t", "u1", "u2", "u3", "Q", "s", "beta", "up1", "up2")}

Lookup = Callable[[PartitionTuple, Optional[PartitionTuple]], Any]


@dataclass(frozen=True)
class FixtureEntry:
    row: PartitionTuple
    column: PartitionTuple | None
    expression: str

    @property
    def label(self) -> str:
        row = repr(self.row).replace(" ", "")
        return row if self.column is None else f"{row}|{repr(self.column).replace(' ', '')}"


@lru_cache(maxsize=None)
def load_fixture(name: str, directory: str | None = None) -> dict[str, Any]:
    path = Path(directory or Settings().fixture_dir) / f"{name}.json"
    with path.open(encoding="utf-8") as handle:
        return json.load(handle)


def table_entries(name: str, table: str) -> list[FixtureEntry]:
    layout = load_fixture(name)["tables"][table]
    return [
        FixtureEntry(
            parse_tuple(entry["row"]),
            parse_tuple(entry["column"]) if "column" in entry else None,
            entry["value"],
        )
        for entry in layout["entries"]
    ]


def _values(point: ScalarPoint, extra: Mapping[str, Any] | None) -> dict[Symbol, Any]:
    values: dict[str, Any] = {"q": point.q, "t": point.t, "s": point.p_half(-1)}
    for k, u in enumerate(point.uu, start=1):
        values[f"u{k}"] = u
    if len(point.uu) >= 2:
        values["Q"] = point.uu[0] / point.uu[1]
    values.update(extra or {})
    return {SYMBOLS[name]: QQ.to_sympy(QQ.convert(value)) for name, value in values.items()}


def evaluate(expression: str, point: ScalarPoint, extra: Mapping[str, Any] | None = None) -> Any:
    """Exact value of a table expression at a numeric point."""
    if point.symbolic:
        raise ScalarModeError("reference tables are evaluated at numeric points only")
    value = sympify(expression, locals=SYMBOLS).subs(_values(point, extra))
    if not value.is_Rational:
        raise EvaluationError(f"{expression!r} does not evaluate to a rational number", point.describe())
    return point.convert(QQ.from_sympy(value))


def table_check(
    report: CheckReport,
    name: str,
    table: str,
    lookup: Lookup,
    point: ScalarPoint,
    extra: Mapping[str, Any] | None = None,
) -> None:
    """One exact comparison per table entry, recorded under ``fixture.<name>.<table>.<row>|<column>``."""
    anchor = load_fixture(name)["tables"][table]["anchor"]
    for entry in table_entries(name, table):
        report.compare(
            f"fixture.{name}.{table}.{entry.label}",
            anchor,
            lookup(entry.row, entry.column),
            evaluate(entry.expression, point, extra),
            point,
        )
    logger.debug("compared table %s/%s at seed %s", name, table, point.seed)
