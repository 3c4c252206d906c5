import pytest

from dim_agt.algebra.combinat import EMPTY, Partition, PartitionTuple, enumerate_tuples
from dim_agt.algebra.genmac import gen_eigenvalue
from dim_agt.algebra.scalars import make_point
from dim_agt.algebra.vertical import (
    VerticalGenerator,
    VerticalState,
    action_conjecture_check,
    apply_hamiltonian,
    closed_coefficient,
    duality_check,
    edge_coefficient,
    edge_series,
    higher_eigenvalue,
    higher_hamiltonian_check,
    plain_coefficient,
    spectral_parameters,
    vertical_action,
    vertical_mode,
    vertical_relation_check,
)
from dim_agt.errors import CostGuardError

ONE = Partition.of(1)
BOX = PartitionTuple.of((1,))
VACUUM = PartitionTuple.empty(1)


def test_edge_coefficients_of_a_single_box() -> None:
    point = make_point(101, 1, 2)
    assert edge_coefficient(EMPTY, 1, 1, point) == 1 - point.t
    assert edge_coefficient(ONE, -1, 1, point) == 1 - 1 / point.q


def test_edge_series_of_the_empty_diagram() -> None:
    point = make_point(102, 1, 2)
    series = edge_series(EMPTY, 1, point, 3)
    assert series[0] == 1
    assert series[1] == 1 - point.t / point.q
    assert series[2] == 1 - point.t / point.q


def test_edge_series_order_is_guarded() -> None:
    with pytest.raises(CostGuardError):
        edge_series(EMPTY, 1, make_point(103, 1, 2), 40)


def test_x_plus_adds_a_box_on_the_vacuum() -> None:
    point = make_point(104, 1, 2)
    u = point.uu[0]
    state = VerticalState.basis(EMPTY, u)
    terms = vertical_action(VerticalGenerator.X_PLUS, state, point)
    assert [(term.target, term.support) for term in terms] == [(ONE, u)]
    image = vertical_mode("x+", 2, state, point)
    assert image.coeffs == {ONE: (1 - point.t) * u**2}


def test_x_minus_annihilates_the_vacuum() -> None:
    point = make_point(105, 1, 2)
    state = VerticalState.basis(EMPTY, point.uu[0])
    assert not vertical_mode("x-", 0, state, point).coeffs
    assert not vertical_mode("psi+", -1, state, point).coeffs


def test_vertical_relations_hold_up_to_two_boxes() -> None:
    report = vertical_relation_check(2, make_point(106, 1, 2), 1)
    assert report.passed, [r.check_id for r in report.failures]
    assert any(r.check_id == "vertical.x-commutator" for r in report.results)
    assert any(r.check_id.startswith("vertical.stabilisation.-") for r in report.results)


def test_vertical_relation_size_is_guarded() -> None:
    with pytest.raises(CostGuardError):
        vertical_relation_check(4, make_point(107, 1, 2))


def test_first_hamiltonian_eigenvalue_matches_x_zero() -> None:
    point = make_point(108, 2, 1)
    for lam in enumerate_tuples(2, 1):
        assert higher_eigenvalue(1, lam, point) == gen_eigenvalue(lam, point)


def test_second_hamiltonian_on_the_vacuum() -> None:
    point = make_point(109, 1, 2)
    u = point.uu[0]
    assert higher_eigenvalue(2, VACUUM, point) == u**2 * (1 - point.q) * (1 - 1 / point.t)
    report = higher_hamiltonian_check(2, 0, point)
    assert report.passed


def test_hamiltonians_on_one_box() -> None:
    point = make_point(110, 2, 2)
    assert higher_hamiltonian_check(1, 1, point).passed
    report = higher_hamiltonian_check(2, 1, make_point(111, 1, 2))
    assert report.passed
    assert any(r.check_id.startswith("vertical.commute.") for r in report.results)


def test_hamiltonian_guards() -> None:
    point = make_point(112, 1, 2)
    with pytest.raises(CostGuardError):
        higher_hamiltonian_check(6, 1, point)
    with pytest.raises(ValueError):
        apply_hamiltonian(0, None, None)


def test_closed_coefficients_for_one_component() -> None:
    point = make_point(113, 1, 2)
    params = spectral_parameters(point)
    q, t = point.q, point.t
    u = point.uu[0]
    assert closed_coefficient(VACUUM, BOX, -1, params) == -u / t
    assert closed_coefficient(BOX, VACUUM, 1, params) == u * (t - 1) * (1 - q)
    assert plain_coefficient(BOX, VACUUM, 1, params) == u * (q - 1)
    assert closed_coefficient(BOX, BOX, 1, params) == 0


def test_action_on_one_box_for_one_component() -> None:
    report = action_conjecture_check(1, make_point(114, 1, 2))
    assert report.passed, [r.details for r in report.failures]
    ids = [r.check_id for r in report.results]
    assert any(i.startswith("vertical.action.plus.") for i in ids)
    assert any(i.startswith("vertical.action.minus.") for i in ids)


def test_action_at_level_zero() -> None:
    report = action_conjecture_check(0, make_point(115, 2, 1))
    assert report.passed
    assert len(report.results) == 1


def test_duality_for_one_component() -> None:
    report = duality_check(1, make_point(116, 1, 2))
    assert report.passed
    assert len(report.results) == 1


def test_duality_at_level_zero_is_skipped() -> None:
    report = duality_check(0, make_point(117, 2, 1))
    assert report.summary()["skipped"] == 1
