from sympy import QQ

from dim_agt.algebra.combinat import Partition, b_factors, partitions_of
from dim_agt.algebra.scalars import make_point
from dim_agt.algebra.symfunc import (
    Basis,
    SymFunc,
    convert,
    elementary,
    from_basis,
    hall_littlewood,
    hl_pairing_identities,
    inner_hl,
    inner_qt,
    macdonald,
    macdonald_property_checks,
    monomial,
    principal_specialization,
    principal_specialization_closed,
)


def test_monomial_and_elementary_in_power_sums() -> None:
    assert monomial(Partition.of(1)).terms == {Partition.of(1): 1}
    expected = {Partition.of(1, 1): QQ(1, 2), Partition.of(2): QQ(-1, 2)}
    assert monomial(Partition.of(1, 1)).terms == expected
    assert elementary(2).terms == expected


def test_basis_conversion_round_trip() -> None:
    f = SymFunc.p(2, 1) + SymFunc.p(1, 1, 1).scale(QQ(3, 7)) + SymFunc.p(3)
    for basis in Basis:
        assert (from_basis(convert(f, basis), basis) - f).is_zero()


def test_inner_products() -> None:
    point = make_point(1)
    q, t = point.q, point.t
    assert inner_qt(SymFunc.p(1), SymFunc.p(1), point) == (1 - q) / (1 - t)
    assert inner_qt(SymFunc.p(2), SymFunc.p(1, 1), point) == 0
    assert inner_qt(SymFunc.p(2), SymFunc.p(2), point) == 2 * (1 - q**2) / (1 - t**2)


def test_macdonald_two_box_coefficient() -> None:
    point = make_point(2)
    q, t = point.q, point.t
    p2, _ = macdonald(Partition.of(2), point)
    coeffs = convert(p2, Basis.MONOMIAL)
    assert coeffs[Partition.of(2)] == 1
    assert coeffs[Partition.of(1, 1)] == (1 + q) * (1 - t) / (1 - q * t)
    p1, q1 = macdonald(Partition.of(1), point)
    assert p1.terms == {Partition.of(1): 1}
    assert inner_qt(p1, q1, point) == 1


def test_hall_littlewood_normalisation() -> None:
    point = make_point(3)
    t = point.t
    _, q1 = hall_littlewood(Partition.of(1), point)
    assert inner_hl(q1, q1, point) == 1 - t
    for s in range(1, 4):
        column = Partition((1,) * s)
        _, q_col = hall_littlewood(column, point)
        assert (q_col - elementary(s).scale(b_factors(column, t)[0])).is_zero()
    p_empty, _ = hall_littlewood(Partition(), point)
    assert p_empty.terms == {Partition(): 1}


def test_principal_specialization() -> None:
    point = make_point(4)
    r = QQ(5, 11)
    assert principal_specialization(Partition.of(1), r, point) == 1 - r
    assert principal_specialization(Partition(), r, point) == 1
    for n in range(1, 6):
        for lam in partitions_of(n):
            assert principal_specialization(lam, r, point) == principal_specialization_closed(lam, r, point)


def test_hl_pairing_identities_hold() -> None:
    point = make_point(5)
    for n in range(0, 6):
        for lam in partitions_of(n):
            assert hl_pairing_identities(lam, point).passed


def test_orthogonality_and_triangularity() -> None:
    point = make_point(6)
    for n in range(1, 6):
        report = macdonald_property_checks(n, point)
        assert report.passed, report.failures
