import pytest
from sympy import QQ

from dim_agt.algebra.combinat import PartitionTuple
from dim_agt.algebra.fock import pair
from dim_agt.algebra.genmac import (
    crystal_integral_forms,
    dual_transition,
    dual_vector,
    gen_eigenvalue,
    gen_hall_littlewood,
    gen_hall_littlewood_check,
    gen_jack,
    gen_jack_check,
    gen_macdonald,
    genmac_check,
    integral_forms,
    ordering_vanishing_check,
    triangular_eigenvectors,
)
from dim_agt.algebra.scalars import make_point
from dim_agt.errors import CostGuardError, EigenvalueCollision

FIRST = PartitionTuple.of((1,), ())
SECOND = PartitionTuple.of((), (1,))


def test_level_one_transition_coefficient() -> None:
    point = make_point(21, 2, 1)
    basis = gen_macdonald(1, point)
    q, t = point.q, point.t
    u1, u2 = point.uu
    assert basis.order == [SECOND, FIRST]
    expected = point.p_half(-1) * (t - q) * u2 / (t * (u1 - u2))
    assert basis.coefficient(SECOND, FIRST) == expected
    assert basis.transition[FIRST] == {FIRST: 1}


def test_eigenvalue_of_second_component_box() -> None:
    point = make_point(22, 2, 1)
    q, t = point.q, point.t
    u1, u2 = point.uu
    assert gen_eigenvalue(SECOND, point) == u1 + u2 * (1 + (t - 1) * (q - 1) / t)


def test_empty_tuple_is_the_highest_weight_vector() -> None:
    point = make_point(23, 2, 1)
    basis = gen_macdonald(0, point)
    assert basis.ket(PartitionTuple.empty(2)).equals(basis.space.vacuum())


def test_dual_basis_is_biorthogonal() -> None:
    point = make_point(24, 2, 2)
    basis = gen_macdonald(2, point)
    dual = dual_transition(basis)
    for lam in basis.order:
        bra = dual_vector(basis, dual, lam)
        for mu in basis.order:
            expected = basis.product_norm(lam) if lam == mu else 0
            assert pair(bra, basis.ket(mu)) == expected


@pytest.mark.parametrize("level", [1, 2])
def test_generalized_macdonald_properties(level: int) -> None:
    report = genmac_check(level, make_point(25, 2, level))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


def test_three_components_level_one() -> None:
    report = genmac_check(1, make_point(26, 3, 1))
    assert report.passed, [r.check_id for r in report.failures]


def test_eta_containment_and_refined_ordering() -> None:
    report = ordering_vanishing_check(2, make_point(27, 2, 2))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


def test_integral_form_coefficients() -> None:
    point = make_point(28, 2, 1)
    forms = integral_forms(gen_macdonald(1, point))
    q, t = point.q, point.t
    u1, u2 = point.uu
    assert forms.alpha[SECOND] == {SECOND: 1, FIRST: -q * u2 / t}
    assert forms.alpha[FIRST][SECOND] == 1
    assert forms.beta[SECOND][FIRST] == -u2
    assert not forms.vanishing


def test_generalized_hall_littlewood_level_one() -> None:
    point = make_point(29, 2, 1)
    hl = gen_hall_littlewood(1, point)
    u1, u2 = point.uu
    assert not hl.poles
    assert hl.transition[SECOND][FIRST] == u2 / (u1 - u2)
    assert hl.dual[FIRST][SECOND] == -u2 / (u1 - u2)


def test_generalized_hall_littlewood_level_two_dual_entry() -> None:
    point = make_point(30, 2, 2)
    hl = gen_hall_littlewood(2, point)
    assert hl.dual[PartitionTuple.of((2,), ())][PartitionTuple.of((1,), (1,))] == 1 - point.t


@pytest.mark.parametrize("n_components", [1, 2])
def test_generalized_hall_littlewood_properties(n_components: int) -> None:
    report = gen_hall_littlewood_check(2, make_point(31, n_components, 2))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


def test_crystal_integral_forms_are_normalised() -> None:
    forms = crystal_integral_forms(2, make_point(32, 2, 2))
    designated = PartitionTuple.of((), (1, 1))
    for lam, row in forms.alpha.items():
        assert row[designated] == 1, lam
    assert not forms.vanishing


def test_jack_level_one_coefficient() -> None:
    beta, u_prime = QQ(1, 3), (QQ(2), QQ(5))
    basis = gen_jack(1, beta, u_prime)
    off = [c for lam, row in basis.transition.items() for mu, c in row.items() if mu != lam]
    assert off == [(1 - beta) / (u_prime[1] - u_prime[0])]


def test_jack_single_component_coefficient() -> None:
    beta = QQ(2, 5)
    basis = gen_jack(2, beta, (QQ(1), QQ(7, 2)))
    assert basis.coefficient(PartitionTuple.of((), (2,)), PartitionTuple.of((), (1, 1))) == 2 * beta / (1 + beta)
    assert gen_jack(0, beta, (QQ(1), QQ(3))).power_sums(PartitionTuple.empty(2)) == {PartitionTuple.empty(2): 1}


def test_jack_eigenfunctions() -> None:
    report = gen_jack_check(2, QQ(1, 3), (QQ(2), QQ(-3, 2)))
    assert report.passed, [r.check_id for r in report.failures]


def test_triangular_solver_rejects_degenerate_spectrum() -> None:
    a, b = PartitionTuple.of((1,)), PartitionTuple.of((2,))
    action = {a: {a: QQ(1), b: QQ(1)}, b: {b: QQ(1)}}
    with pytest.raises(EigenvalueCollision):
        triangular_eigenvectors([a, b], action, {a: QQ(1), b: QQ(1)}, QQ.zero, QQ.one)


def test_level_cap() -> None:
    with pytest.raises(CostGuardError):
        gen_macdonald(99, make_point(33, 2, 1))
