import itertools

from dim_agt.algebra.combinat import (
    BoxCoord,
    Comparison,
    Ordering,
    Partition,
    PartitionTuple,
    add_remove_sets,
    arm_leg,
    b_factors,
    compare,
    enumerate_tuples,
    partitions_of,
    star_linear_extension,
    stats,
    tuple_count,
)

BIG = Partition.of(8, 8, 5, 3, 3, 3, 1)


def test_arm_leg_inside_and_outside_diagram() -> None:
    assert arm_leg(BIG, 2, 3) == (5, 4)
    assert arm_leg(BIG, 3, 7) == (-2, -1)
    assert arm_leg(Partition(), 1, 1) == (-1, -1)


def test_trailing_zeros_are_ignored() -> None:
    assert Partition.of(3, 2) == Partition.of(3, 2, 0)
    assert Partition.of(3, 2, 0).length == 2


def test_stats() -> None:
    assert stats(Partition.of(5, 3, 3, 1))[1] == Partition.of(4, 2, 2)
    assert stats(Partition()) == (0, Partition())
    assert stats(Partition.of(6, 4, 3, 3, 1))[0] == 23


def test_n_statistic_two_formulas_agree() -> None:
    for n in range(9):
        for lam in partitions_of(n):
            by_columns = sum(c * (c - 1) // 2 for c in lam.conjugate())
            by_boxes = sum(i - 1 for i, _ in lam.boxes())
            assert lam.n() == by_columns == by_boxes
            assert lam.conjugate().conjugate() == lam


def test_b_factors() -> None:
    assert b_factors(Partition.of(1), 5) == (-4, 4)
    assert b_factors(Partition(), 5) == (1, 1)
    assert b_factors(Partition.of(1, 1), 3) == ((1 - 3) * (1 - 9), (3 - 1) * (9 - 1))


def test_enumeration_order_and_counts() -> None:
    assert len(enumerate_tuples(2, 0)) == 1
    assert list(enumerate_tuples(2, 2)) == [
        PartitionTuple.of((), (2,)),
        PartitionTuple.of((), (1, 1)),
        PartitionTuple.of((1,), (1,)),
        PartitionTuple.of((2,), ()),
        PartitionTuple.of((1, 1), ()),
    ]
    assert tuple_count(3, 3) == 22
    assert [len(partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_star_examples() -> None:
    lam = PartitionTuple.of((1,), (2,))
    mu = PartitionTuple.of((2,), (1,))
    assert compare(lam, mu, Ordering.STAR) is Comparison.GREATER
    assert compare(mu, lam, Ordering.STAR) is Comparison.LESS
    lam3 = PartitionTuple.of((), (1,), (2,))
    mu3 = PartitionTuple.of((), (2,), (1,))
    assert compare(lam3, mu3, Ordering.STAR_REFINED) is Comparison.GREATER
    for ordering in Ordering:
        assert compare(lam, lam, ordering) is Comparison.EQUAL


def test_orderings_are_strict_partial_orders() -> None:
    for n in range(1, 5):
        tuples = enumerate_tuples(2, n)
        for ordering in Ordering:
            greater = {
                (a, b) for a, b in itertools.permutations(tuples, 2) if compare(a, b, ordering) is Comparison.GREATER
            }
            for a, b in greater:
                assert (b, a) not in greater
            if ordering is not Ordering.STAR_REFINED:
                for (a, b), (c, d) in itertools.product(greater, repeat=2):
                    if b == c:
                        assert (a, d) in greater


def test_refined_star_implies_star() -> None:
    for n in range(1, 5):
        for a, b in itertools.permutations(enumerate_tuples(3, n) if n <= 3 else enumerate_tuples(2, n), 2):
            if compare(a, b, Ordering.STAR_REFINED) is Comparison.GREATER:
                assert compare(a, b, Ordering.STAR) is Comparison.GREATER


def test_star_linear_extension_respects_order() -> None:
    order = star_linear_extension(3, 3)
    position = {t: k for k, t in enumerate(order)}
    for a, b in itertools.permutations(order, 2):
        if compare(a, b, Ordering.STAR) is Comparison.GREATER:
            assert position[a] < position[b]


def test_add_remove_sets() -> None:
    addable, removable = add_remove_sets(PartitionTuple.of((2, 1)))
    assert addable == [BoxCoord(1, 1, 3), BoxCoord(1, 2, 2), BoxCoord(1, 3, 1)]
    assert removable == [BoxCoord(1, 1, 2), BoxCoord(1, 2, 1)]
    addable, removable = add_remove_sets(PartitionTuple.empty(2))
    assert addable == [BoxCoord(1, 1, 1), BoxCoord(2, 1, 1)]
    assert removable == []
    for n in range(5):
        for tup in enumerate_tuples(3, n) if n <= 3 else enumerate_tuples(2, n):
            a, r = add_remove_sets(tup)
            assert len(a) == len(r) + tup.n_components
