import pytest

from dim_agt.algebra.combinat import PartitionTuple
from dim_agt.algebra.rmatrix import (
    RBasis,
    conjectured_constant,
    integral_form_r_check,
    product_route_check,
    reference_check,
    solve_r_block,
    unitarity_check,
    yang_baxter_check,
)
from dim_agt.algebra.scalars import make_point
from dim_agt.errors import CostGuardError, ScalarModeError

E1 = PartitionTuple.of((1,), (), ())
E2 = PartitionTuple.of((), (1,), ())
E3 = PartitionTuple.of((), (), (1,))


def _failures(report):
    return [(r.check_id, r.details) for r in report.failures]


def test_level_zero_is_the_identity() -> None:
    block = solve_r_block(0, 3, (1, 3), make_point(81, 3, 2))
    assert block.matrix() == [[1]]
    assert block.constants == {PartitionTuple.empty(3): 1}


def test_level_one_constant() -> None:
    point = make_point(82, 3, 2)
    q, t = point.q, point.t
    u1, u2, _ = point.uu
    block = solve_r_block(1, 2, (1, 2), point)
    expected = -point.p_half(1) * (q * u2 - t * u1) / (q * (u1 - u2))
    assert block.constants[PartitionTuple.of((), (1,))] == expected


def test_level_one_boson_block() -> None:
    point = make_point(83, 3, 2)
    q, t = point.q, point.t
    u1, u2, _ = point.uu
    block = solve_r_block(1, 3, (1, 2), point)
    diagonal = point.p_half(1) * t * (u1 - u2) / (q * u1 - t * u2)
    assert block.entry(E3, E3) == 1
    assert block.entry(E1, E1) == diagonal
    assert block.entry(E2, E2) == diagonal
    assert block.entry(E2, E1) == (q - t) * u1 / (q * u1 - t * u2)
    assert block.entry(E1, E2) == (q - t) * u2 / (q * u1 - t * u2)
    assert block.entry(E3, E1) == 0


def test_outer_pair_is_trivial_on_the_middle_module() -> None:
    block = solve_r_block(1, 3, (1, 3), make_point(84, 3, 2))
    assert block.entry(E2, E2) == 1
    assert block.entry(E1, E2) == 0


@pytest.mark.parametrize("level", [1, 2])
def test_second_pair_is_built_at_every_level(level: int) -> None:
    point = make_point(84, 3, 2)
    block = solve_r_block(level, 3, (2, 3), point)
    assert block.pair == (2, 3)
    assert len(block.keys) == len(solve_r_block(level, 3, (1, 2), point).keys)


def test_second_pair_level_one_entries() -> None:
    point = make_point(84, 3, 2)
    q, t = point.q, point.t
    _, u2, u3 = point.uu
    block = solve_r_block(1, 3, (2, 3), point)
    diagonal = point.p_half(1) * t * (u2 - u3) / (q * u2 - t * u3)
    assert block.entry(E1, E1) == 1
    assert block.entry(E2, E1) == 0
    assert block.entry(E2, E2) == diagonal
    assert block.entry(E3, E3) == diagonal
    assert block.entry(E2, E3) == (q - t) * u3 / (q * u2 - t * u3)


def test_genmac_basis_has_the_constants_on_swapped_images() -> None:
    point = make_point(85, 3, 2)
    block = solve_r_block(1, 3, (1, 2), point)
    assert block.entry(E2, E2, RBasis.GENMAC) == block.constants[E2]
    assert block.entry(E3, E3, RBasis.GENMAC) == 1


def test_conjectured_constant_of_the_empty_pair() -> None:
    assert conjectured_constant(PartitionTuple.empty(2), make_point(86, 3, 2)) == 1


@pytest.mark.parametrize("level", [0, 1, 2])
def test_yang_baxter(level: int) -> None:
    report = yang_baxter_check(level, make_point(87, 3, 2))
    assert report.passed, _failures(report)


@pytest.mark.parametrize("level", [1, 2])
def test_unitarity(level: int) -> None:
    report = unitarity_check(level, make_point(88, 3, 2))
    assert report.passed, _failures(report)


@pytest.mark.parametrize("level", [1, 2])
def test_integral_forms_and_constants(level: int) -> None:
    report = integral_form_r_check(level, make_point(89, 3, 2))
    assert report.passed, _failures(report)
    assert any(r.check_id.startswith("rmatrix.constant.") for r in report.results)


def test_product_route() -> None:
    report = product_route_check(2, make_point(90, 3, 2))
    assert report.passed, _failures(report)


def test_reference_tables() -> None:
    report = reference_check(make_point(91, 3, 2))
    assert report.passed, _failures(report)
    assert len(report.results) > 50


def test_block_serialises() -> None:
    data = solve_r_block(1, 2, (1, 2), make_point(92, 3, 2)).to_json()
    assert data["N"] == 2
    assert data["keys"] == [[[], [1]], [[1], []]]
    assert set(data["matrices"]) == {"boson", "genmac", "integral"}


def test_guards() -> None:
    point = make_point(93, 3, 2)
    with pytest.raises(CostGuardError):
        solve_r_block(3, 3, (1, 2), point)
    with pytest.raises(ValueError):
        solve_r_block(1, 2, (2, 3), point)
    with pytest.raises(ValueError):
        solve_r_block(1, 2, (1, 2), make_point(94, 2, 2))
    with pytest.raises(ScalarModeError):
        solve_r_block(1, 3, (1, 2), make_point(95, 3, 2, "q"))
