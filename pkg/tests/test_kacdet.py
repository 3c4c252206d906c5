import pytest
from sympy import QQ

from dim_agt.algebra.combinat import PartitionTuple, b_factors, partitions_of
from dim_agt.algebra.kacdet import (
    GramTag,
    crystal_shapovalov,
    crystal_shapovalov_check,
    crystal_whittaker,
    kac_det_check,
    kac_formula,
    multi_singular_check,
    multi_singular_point,
    multi_singular_tuple,
    pbw_gram,
    singular_point,
    singular_vector_check,
    staircase_tuple,
    theta_tuple,
    whittaker,
    whittaker_check,
)
from dim_agt.algebra.nekrasov import z_pure, z_pure_crystal
from dim_agt.algebra.scalars import inv, make_point
from dim_agt.errors import CostGuardError


def test_level_zero_gram_is_the_vacuum_norm() -> None:
    gram = pbw_gram(0, make_point(61, 2, 1))
    assert gram.entries == [[1]]


def test_level_one_gram_for_one_boson() -> None:
    point = make_point(62, 1, 1)
    (u,) = point.uu
    q, t = point.q, point.t
    gram = pbw_gram(1, point)
    assert gram.entries == [[u**2 * (1 - q) * (inv(t) - 1)]]
    assert gram.det() == kac_formula(1, point)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_boson_formula_reduces_to_lengths(n: int) -> None:
    point = make_point(63, 1, 1)
    (u,) = point.uu
    q, t = point.q, point.t
    expected = u ** (2 * sum(lam.length for lam in partitions_of(n)))
    for lam in partitions_of(n):
        expected *= b_factors(lam, q)[0] * b_factors(lam, inv(t))[1]
    assert kac_formula(n, point) == expected


@pytest.mark.parametrize(("n_components", "n"), [(1, 1), (1, 2), (2, 1)])
def test_kac_determinant_low_levels(n_components: int, n: int) -> None:
    points = [make_point(seed, n_components, n) for seed in (64, 65)]
    report = kac_det_check(n, n_components, points)
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


def test_kac_determinant_guard() -> None:
    with pytest.raises(CostGuardError):
        kac_det_check(3, 3, [make_point(66, 3, 1)])


def test_kac_formula_vanishes_at_degenerate_weights() -> None:
    base = make_point(67, 2, 1)
    point = singular_point(base, 2, 1, 1, 1)
    u1, u2 = point.uu
    assert u1 == point.q / point.t * u2
    assert not kac_formula(1, point)
    assert kac_formula(1, base)


def test_whittaker_norm_first_order() -> None:
    point = make_point(68, 1, 1)
    k = point.convert(point.k)
    series = whittaker(1, k, point)
    gram = pbw_gram(1, point, GramTag.VIRASORO, k)
    assert series[0] == 1
    assert series[4] == inv(gram.entries[0][0])
    assert series == z_pure(1, k * k, point)


def test_crystal_whittaker_coefficients() -> None:
    point = make_point(69, 1, 1)
    t = point.t
    series = crystal_whittaker(3, point)
    assert series[4] == inv(1 - inv(t))
    assert series[8] == inv((1 - inv(t)) * (1 - inv(t) ** 2))
    assert series == z_pure_crystal(3, QQ(5, 2), point)


def test_whittaker_report() -> None:
    report = whittaker_check(1, make_point(70, 1, 1))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


@pytest.mark.parametrize("seed", [68, 115, 136, 213, 233, 265, *range(40)])
def test_sampled_k_avoids_nekrasov_poles(seed: int) -> None:
    point = make_point(seed, 1, 2)
    k2 = point.k * point.k
    assert k2 != 1
    for r in range(-4, 5):
        for s in range(-4, 5):
            assert k2 != point.q**r * point.t**s


@pytest.mark.parametrize("seed", [68, 115])
def test_whittaker_report_on_resampled_points(seed: int) -> None:
    report = whittaker_check(1, make_point(seed, 1, 1))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


def test_crystal_shapovalov_closed_forms_invert() -> None:
    point = make_point(71, 2, 2)
    for n in (1, 2, 3):
        forward, backward = crystal_shapovalov(n, point)
        size = len(forward.keys)
        for i in range(size):
            for j in range(size):
                entry = sum((backward.entries[i][k] * forward.entries[k][j] for k in range(size)), point.zero)
                assert entry == (1 if i == j else 0)


def test_crystal_shapovalov_block_structure() -> None:
    point = make_point(72, 2, 2)
    forward, _ = crystal_shapovalov(2, point)
    u1, u2 = point.uu
    t_inv = inv(point.t)
    first = PartitionTuple.of((1,), (1,))
    assert forward.entry(first, PartitionTuple.of((), (2,))) == 0
    assert forward.entry(PartitionTuple.of((2,), ()), PartitionTuple.of((2,), ())) == u1 * u2 * (1 - t_inv)


def test_crystal_shapovalov_against_fock() -> None:
    report = crystal_shapovalov_check(2, make_point(73, 2, 2), lemma_level=4)
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


def test_singular_vector_single_box() -> None:
    report = singular_vector_check(2, 1, 1, 1, make_point(74, 2, 1))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]
    assert any(r.check_id.endswith(".X2.1") for r in report.results)


def test_staircase_and_theta_tuples() -> None:
    assert staircase_tuple((1, 1), (1, 1)) == PartitionTuple.of((), (), (2,))
    assert staircase_tuple((2, 1), (1, 1)) == PartitionTuple.of((), (), (2, 1))
    assert staircase_tuple((2,), (1,)) == PartitionTuple.of((), (1, 1))
    assert theta_tuple((0, 1), (1, 1)) == PartitionTuple.of((), (1,), ())
    assert theta_tuple((1, 2), (1, 1)) == PartitionTuple.of((), (1,), (2,))


def test_multi_constraint_weights() -> None:
    base = make_point(75, 3, 1)
    point = multi_singular_point(base, (0, 1), (1, 1))
    u1, u2, u3 = point.uu
    q, t = point.q, point.t
    assert u3 == base.uu[2]
    assert u2 == q * u3
    assert u1 == q / t * u2


def test_multi_singular_tuples_pick_the_case() -> None:
    assert multi_singular_tuple((2, 1), (1, 1)) == (PartitionTuple.of((), (), (2, 1)), "A")
    assert multi_singular_tuple((1, 2), (1, 1)) == (PartitionTuple.of((), (1,), (2,)), "B")
    with pytest.raises(ValueError):
        multi_singular_tuple((1, 2, 1), (1, 1, 1))


@pytest.mark.parametrize(("r", "s"), [((1,), (1,)), ((1, 1), (1, 1))])
def test_multi_singular_staircase(r: tuple[int, ...], s: tuple[int, ...]) -> None:
    report = multi_singular_check(r, s, make_point(76, 3, 2))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]
    assert all(".singular-A." in result.check_id for result in report.results)


def test_multi_singular_theta() -> None:
    report = multi_singular_check((0, 1), (1, 1), make_point(77, 3, 2))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]
    assert report.results and all(".singular-B." in result.check_id for result in report.results)


def test_multi_singular_cost_guard() -> None:
    with pytest.raises(CostGuardError):
        multi_singular_check((3, 1), (1, 1), make_point(78, 3, 2))
