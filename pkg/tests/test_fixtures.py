import pytest
from sympy import QQ

from dim_agt.algebra.combinat import PartitionTuple
from dim_agt.algebra.genmac import gen_hall_littlewood, gen_jack, gen_macdonald, integral_forms
from dim_agt.algebra.scalars import make_point
from dim_agt.errors import EvaluationError, ScalarModeError
from dim_agt.fixtures import evaluate, load_fixture, table_check, table_entries
from dim_agt.reports import CheckReport


def _failures(report):
    return [(r.check_id, r.details) for r in report.failures]


def test_evaluate_uses_the_point() -> None:
    point = make_point(101, 2, 2)
    q, t = point.q, point.t
    u1, u2 = point.uu
    assert evaluate("(q - t)*u2/(u1 - u2)", point) == (q - t) * u2 / (u1 - u2)
    assert evaluate("s**2", point) == t / q
    assert evaluate("Q", point) == u1 / u2
    assert evaluate("beta + 1", point, {"beta": QQ(1, 3)}) == QQ(4, 3)


def test_evaluate_rejects_symbolic_points() -> None:
    with pytest.raises(ScalarModeError):
        evaluate("q", make_point(102, 2, 2, "q"))


def test_evaluate_rejects_free_symbols() -> None:
    with pytest.raises(EvaluationError):
        evaluate("u3", make_point(103, 2, 2))


def test_entries_parse_keys() -> None:
    entries = table_entries("rmatrix", "k-constants")
    assert entries[0].row == PartitionTuple.of((), (1,))
    assert entries[0].column is None
    assert entries[0].label == "(∅,(1))"
    assert "anchor" in load_fixture("rmatrix")["tables"]["boson-12"]


@pytest.mark.parametrize("table", ["monomial-level1", "monomial-level2"])
def test_generalized_macdonald_tables(table: str) -> None:
    point = make_point(104, 2, 2)
    monomials = {n: gen_macdonald(n, point).monomial_transition() for n in (1, 2)}
    report = CheckReport("genmac")
    table_check(report, "genmac_n2", table, lambda row, col: monomials[row.size][row].get(col, point.zero), point)
    assert report.passed, _failures(report)


def test_level_one_integral_table() -> None:
    point = make_point(105, 2, 2)
    alpha = integral_forms(gen_macdonald(1, point)).alpha
    report = CheckReport("genmac")
    table_check(report, "genmac_n2", "integral-level1", lambda row, col: alpha[row].get(col, point.zero), point)
    assert report.passed, _failures(report)


@pytest.mark.parametrize(("table", "level", "dual"), [("ket-level1", 1, False), ("ket-level2", 2, False), ("dual-level1", 1, True), ("dual-level2", 2, True)])
def test_generalized_hall_littlewood_tables(table: str, level: int, dual: bool) -> None:
    point = make_point(106, 2, 2)
    hl = gen_hall_littlewood(level, point)
    values = hl.dual if dual else hl.transition
    report = CheckReport("genmac")
    table_check(report, "gen_hall_littlewood_n2", table, lambda row, col: values[row].get(col, QQ.zero), point)
    assert report.passed, _failures(report)


@pytest.mark.parametrize("level", [1, 2])
def test_generalized_jack_tables(level: int) -> None:
    beta, up1, up2 = QQ(2, 7), QQ(3), QQ(-5, 4)
    basis = gen_jack(level, beta, (up1, up2))
    report = CheckReport("genmac")
    table_check(
        report,
        "gen_jack_n2",
        f"level{level}",
        basis.coefficient,
        make_point(107, 2, 2),
        {"beta": beta, "up1": up1, "up2": up2},
    )
    assert report.passed, _failures(report)


def test_entry_labels_follow_check_ids() -> None:
    entry = next(e for e in table_entries("genmac_n2", "monomial-level2") if e.row == PartitionTuple.of((1,), (1,)))
    assert entry.label == f"{entry.row!r}|{entry.column!r}".replace(" ", "")
    assert entry.label.startswith("((1),(1))|")


def test_level_two_mixed_entry_carries_u2() -> None:
    point = make_point(104, 2, 2)
    q, t = point.q, point.t
    u1, u2 = point.uu
    s = point.p_half(-1)
    row = gen_macdonald(2, point).monomial_transition()[PartitionTuple.of((1,), (1,))]
    expected = s * (q - t) * ((1 + q + (q - 1) * t) * u1 - 2 * t * u2) * u2 / (t * (q * u1 - u2) * (-u1 + t * u2))
    assert row[PartitionTuple.of((1, 1), ())] == expected
    assert row[PartitionTuple.of((2,), ())] == s * (t - q) * u2 / (t * (q * u1 - u2))
