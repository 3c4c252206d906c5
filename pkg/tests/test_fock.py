import pytest
from sympy import QQ

from dim_agt.algebra.combinat import Partition, partitions_of
from dim_agt.algebra.fock import (
    BosonKind,
    Current,
    FockSpace,
    VertexOperator,
    apply_word,
    pair,
)
from dim_agt.algebra.generators import (
    Frame,
    crystal_pbw_check,
    crystal_relation_check,
    crystal_space,
    crystal_virasoro_check,
    crystal_X1,
    crystal_X2,
    crystal_virasoro_relation_check,
    generator_X,
    jing_build,
    jing_check,
    virasoro_T,
    virasoro_relation_check,
    x_relation_check,
)
from dim_agt.algebra.scalars import inv, make_point, power
from dim_agt.algebra.vertex_phi import (
    crystal_phi_check,
    crystal_phi_column_closed,
    crystal_phi_column_recursion,
    phi_check,
    vertex_phi,
)
from dim_agt.errors import LevelOverflow


def _eta(space: FockSpace) -> Current:
    t = space.point.t
    return Current.of(
        VertexOperator.build(
            space,
            lambda i, n: (1 - power(t, -n)) * QQ(1, n),
            lambda i, n: -(1 - power(t, n)) * QQ(1, n),
        )
    )


def test_eta_modes_on_highest_weight_vector() -> None:
    point = make_point(1, 1)
    space = FockSpace(point, 1, BosonKind.QT, 3)
    eta = _eta(space)
    vacuum = space.vacuum()
    assert eta.apply(0, vacuum).equals(vacuum)
    expected = space.monomial(space.boson(0, 1), 1 - inv(point.t))
    assert eta.apply(-1, vacuum).equals(expected)
    assert eta.apply(2, space.monomial(space.boson(0, 1))).is_zero()


def test_level_overflow_is_raised() -> None:
    point = make_point(1, 1)
    space = FockSpace(point, 1, BosonKind.QT, 1)
    with pytest.raises(LevelOverflow):
        _eta(space).apply(-2, space.vacuum())


def test_zero_mode_eigenvalue_on_vacuum() -> None:
    point = make_point(2, 2)
    space = FockSpace(point, 2, BosonKind.QT, 2)
    u1, u2 = point.uu
    x1 = generator_X(space, 1)
    assert x1.apply(0, space.vacuum()).equals(space.vacuum(u1 + u2))


def test_level_one_gram_entry() -> None:
    point = make_point(3, 1)
    space = FockSpace(point, 1, BosonKind.QT, 2)
    (u,) = point.uu
    q, t = point.q, point.t
    x = generator_X(space, 1)
    ket = apply_word([(x, 1), (x, -1)], space.vacuum())
    assert pair(space.vacuum(), ket) == u**2 * (1 - q) * (inv(t) - 1)
    bra = x.apply_bra(1, space.vacuum())
    assert pair(bra, x.apply(-1, space.vacuum())) == pair(space.vacuum(), ket)


def test_virasoro_highest_weight() -> None:
    point = make_point(4, 1)
    space = FockSpace(point, 1, BosonKind.QT, 2)
    k = point.convert(point.k)
    current = virasoro_T(space, k)
    assert current.apply(0, space.vacuum()).equals(space.vacuum(k + inv(k)))
    assert current.apply(1, space.vacuum()).is_zero()


def test_jing_first_mode() -> None:
    point = make_point(5, 1)
    space = crystal_space(point, 1, 2)
    expected = space.monomial(space.boson(0, 1), 1 - point.t)
    assert jing_build(Partition.of(1), space).equals(expected)
    assert jing_build(Partition(), space).equals(space.vacuum())


def test_jing_operators_build_hall_littlewood() -> None:
    report = jing_check(3, make_point(6, 1))
    assert report.passed, [r.check_id for r in report.failures]


def test_generic_exchange_relations() -> None:
    point = make_point(7, 2, 2)
    report = x_relation_check(point, level=1, mode_bound=1)
    assert report.passed, [r.details for r in report.failures]


def test_exchange_relations_are_frame_independent() -> None:
    point = make_point(8, 2, 2)
    report = x_relation_check(point, level=1, mode_bound=1, frame=Frame.BALANCED)
    assert report.passed, [r.details for r in report.failures]


def test_deformed_virasoro_relation() -> None:
    report = virasoro_relation_check(make_point(9, 1), level=2, mode_bound=1)
    assert report.passed, [r.details for r in report.failures]


def test_crystal_virasoro_relations() -> None:
    report = crystal_virasoro_relation_check(make_point(10, 1), level=2, mode_bound=2)
    assert report.passed, [r.details for r in report.failures]


def test_crystal_exchange_relations() -> None:
    report = crystal_relation_check(make_point(11, 2), level=1, mode_bound=2)
    assert report.passed, [r.details for r in report.failures]


def test_crystal_zero_mode_commutator_on_the_vacuum() -> None:
    point = make_point(11, 2)
    space = crystal_space(point, 2, 4)
    x1, x2 = crystal_X1(space), crystal_X2(space)
    u1, u2 = point.uu
    a = 1 - inv(point.t)
    vacuum = space.vacuum()
    left = apply_word([(x1, 0), (x1, -1)], vacuum) - apply_word([(x1, -1), (x1, 0)], vacuum)
    expected = space.monomial(space.boson(0, 1), u2 * a * a * (u1 + u2)) - space.monomial(space.boson(1, 1), u2 * u2 * a * a)
    assert left.equals(expected)
    right = x2.apply(-1, vacuum).scale(a) - apply_word([(x1, -1), (x1, 0)], vacuum).scale(a)
    assert left.equals(right)


def test_crystal_zero_mode_commutator_keeps_the_l0_term() -> None:
    point = make_point(11, 2)
    space = crystal_space(point, 2, 4)
    x1 = crystal_X1(space)
    u1, _ = point.uu
    a = 1 - inv(point.t)
    state = space.monomial(space.boson(0, 1))
    left = apply_word([(x1, 1), (x1, 0)], state) - apply_word([(x1, 0), (x1, 1)], state)
    assert left.equals(space.vacuum(a * u1 * u1))


def test_crystal_virasoro_hall_littlewood_and_shapovalov() -> None:
    report = crystal_virasoro_check(3, make_point(12, 1))
    assert report.passed, [r.check_id for r in report.failures]


def test_crystal_pbw_vectors() -> None:
    report = crystal_pbw_check(2, make_point(13, 2))
    assert report.passed, [r.check_id for r in report.failures]


def test_vertex_operator_normalization_and_n1_closed_form() -> None:
    report = phi_check(2, make_point(14, 1, 2))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


def test_vertex_operator_n2_is_unique() -> None:
    table = vertex_phi(make_point(15, 2, 1), 1)
    assert table.status.value == "unique"
    vacuum = table.space.vacuum_key()
    assert table.value(vacuum, vacuum) == 1


def test_crystal_vertex_operator_properties() -> None:
    report = crystal_phi_check(2, make_point(16, 2, 2))
    assert report.passed, [(r.check_id, r.details) for r in report.failures]


def test_column_recursion_matches_closed_form() -> None:
    point = make_point(17, 2)
    z = point.convert(point.x)
    for n in range(0, 6):
        for lam in partitions_of(n):
            assert crystal_phi_column_recursion(lam, point, z) == crystal_phi_column_closed(lam, point, z)
