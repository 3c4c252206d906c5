import pytest
from sympy import QQ

from dim_agt.algebra.combinat import EMPTY, Partition, PartitionTuple
from dim_agt.algebra.nekrasov import (
    conjecture_checks,
    crystal_limit_check,
    crystal_n1_check,
    crystal_nek,
    factorization_rhs,
    four_point_aflt,
    four_point_check,
    four_point_closed,
    four_point_fock,
    four_point_pbw,
    grouped_aflt,
    nek_factor,
    norm_conjecture,
    z_pure,
    z_pure_crystal,
)
from dim_agt.algebra.scalars import inv, make_point
from dim_agt.errors import CostGuardError

ONE = Partition.of(1)


def test_nekrasov_factor_small_cases() -> None:
    point = make_point(41, 1)
    q, t = point.q, point.t
    Q = QQ(3, 7)
    assert nek_factor(EMPTY, EMPTY, Q, q, t) == 1
    assert nek_factor(ONE, ONE, Q, q, t) == (1 - Q * t) * (1 - Q / q)
    assert nek_factor(Partition.of(2, 1), EMPTY, Q, q, t) == (1 - Q * q) * (1 - Q) * (1 - Q / t)


def test_crystal_factor_with_empty_second_argument() -> None:
    t = QQ(5, 2)
    for lam in (ONE, Partition.of(2, 1), Partition.of(3)):
        assert crystal_nek(lam, EMPTY, QQ(4, 9), t) == 1
    assert crystal_nek(EMPTY, Partition.of(2), QQ(4, 9), t) == -QQ(4, 9) * (1 - QQ(4, 9))


def test_pure_gauge_low_orders() -> None:
    point = make_point(42, 1)
    q, t = point.q, point.t
    Q = QQ(2, 11)
    series = z_pure(1, Q, point)
    assert series[0] == 1
    first = inv(nek_factor(ONE, ONE, 1, q, t) * nek_factor(ONE, EMPTY, Q, q, t) * nek_factor(EMPTY, ONE, inv(Q), q, t))
    second = inv(nek_factor(ONE, ONE, 1, q, t) * nek_factor(ONE, EMPTY, inv(Q), q, t) * nek_factor(EMPTY, ONE, Q, q, t))
    assert series[4] == (t / q) * (first + second)
    assert series[1] == series[2] == series[3] == 0


def test_crystal_pure_gauge_coefficients() -> None:
    point = make_point(43, 1)
    t = point.t
    for Q in (QQ(3, 5), QQ(-7, 2)):
        series = z_pure_crystal(3, Q, point)
        assert series[4] == inv(1 - inv(t))
        assert series[8] == inv((1 - inv(t)) * (1 - inv(t) ** 2))
        assert series[12] == inv((1 - inv(t)) * (1 - inv(t) ** 2) * (1 - inv(t) ** 3))


def test_crystal_limit_of_pure_gauge() -> None:
    report = crystal_limit_check(2, QQ(5, 3), make_point(44, 1), extra_q=[QQ(-2), QQ(7, 4)])
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


def test_norm_conjecture_n1_level_one_matches_gram() -> None:
    point = make_point(45, 1)
    (u,) = point.uu
    q, t = point.q, point.t
    assert norm_conjecture(PartitionTuple.of((1,)), point) == u**2 * (1 - q) * (inv(t) - 1)
    assert norm_conjecture(PartitionTuple.of(()), point) == 1


@pytest.mark.parametrize("n_components", [1, 2])
def test_integral_form_conjectures_level_one(n_components: int) -> None:
    report = conjecture_checks(1, make_point(46, n_components, 1))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


def test_conjecture_checks_cost_guard() -> None:
    with pytest.raises(CostGuardError):
        conjecture_checks(3, make_point(47, 2, 1))


def test_n1_crystal_vertex_operator() -> None:
    report = crystal_n1_check(2, make_point(48, 1))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


def test_four_point_first_order() -> None:
    point = make_point(49, 2)
    t = point.t
    v, w = point.vv, (QQ(3, 4), QQ(-5, 2))
    series = four_point_closed(2, v, w, t)
    assert series[0] == 1
    assert series[1] == (1 - w[0] * w[1] / (v[0] * v[1])) / (1 - inv(t))


def test_four_point_pbw_and_aflt_expansions() -> None:
    point = make_point(50, 2)
    u, v, t = point.uu, point.vv, point.t
    w = (QQ(2, 7), QQ(9, 5))
    closed = four_point_closed(3, v, w, t)
    assert four_point_pbw(3, u, v, w, t) == closed
    assert four_point_aflt(3, v, w, t) == closed


def test_single_box_group_factorises() -> None:
    point = make_point(51, 2)
    v, t = point.vv, point.t
    w = (QQ(4, 3), QQ(-1, 6))
    assert grouped_aflt(ONE, v, w, t) == factorization_rhs(ONE, v, w, t)
    assert factorization_rhs(ONE, v, w, t) == (1 - w[0] * w[1] / (v[0] * v[1])) / (1 - inv(t))


def test_four_point_from_vertex_operators() -> None:
    point = make_point(52, 2, 1)
    w = (QQ(5, 3), QQ(-2, 9))
    coeffs = four_point_fock(1, point.uu, point.vv, w, point)
    closed = four_point_closed(1, point.vv, w, point.t)
    assert coeffs == [closed[0], closed[1]]


def test_four_point_report() -> None:
    report = four_point_check(2, make_point(53, 2, 1), (QQ(7, 3), QQ(3, 8)), fock_level=1)
    failures = [r.check_id for r in report.failures if not r.check_id.startswith("four-point.grouped")]
    assert not failures
