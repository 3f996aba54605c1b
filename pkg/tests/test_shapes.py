import pytest
from hypothesis import given, strategies as st

from qzrp.shapes import (Cell, Partition, arms, compress, conjugate, degenerate_segment,
                         is_compressed, lower_arm, partitions_of, partitions_up_to,
                         reading_order, upper_arm)

partitions = st.lists(st.integers(1, 6), min_size=0, max_size=6).map(
    lambda xs: Partition(sorted(xs, reverse=True)))


@given(partitions)
def test_conjugate_is_an_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).size == lam.size


@given(partitions)
def test_compress_is_idempotent_and_keeps_order(lam):
    c = compress(lam)
    assert is_compressed(c)
    assert compress(c) == c
    assert len(c) == len(lam)
    assert set(c.parts) == set(range(1, len(set(lam.parts)) + 1))


@given(partitions.filter(lambda p: p.size > 0), st.data())
def test_arms_are_dual(lam, data):
    u = data.draw(st.sampled_from(lam.cells))
    lower, _ = arms(lam, u)
    for v in lam.cells:
        assert (v in lower) == (u in upper_arm(lam, v))


def test_arm_shapes_on_a_small_diagram():
    lam = Partition((3, 2, 2, 1))
    assert lower_arm(lam, Cell(2, 2)) == [Cell(2, 1), Cell(1, 3), Cell(1, 4)]
    assert upper_arm(lam, Cell(1, 2)) == [Cell(2, 1), Cell(1, 3), Cell(1, 4)]


def test_degenerate_segment():
    lam = Partition((7, 4, 4, 2, 2, 2, 1))
    assert degenerate_segment(lam, Cell(4, 2)) == (2, 3)
    assert degenerate_segment(lam, Cell(2, 5)) == (4, 6)
    assert degenerate_segment(lam, Cell(7, 1)) == (1, 1)
    with pytest.raises(ValueError):
        degenerate_segment(lam, Cell(1, 1))


def test_reading_order_is_top_down_right_to_left():
    assert reading_order((2, 1)) == (Cell(2, 1), Cell(1, 2), Cell(1, 1))


@pytest.mark.parametrize("m,count", [(1, 1), (4, 5), (6, 11), (8, 22)])
def test_partition_counts(m, count):
    assert len(list(partitions_of(m))) == count


def test_partitions_up_to_six():
    assert len(list(partitions_up_to(6))) == 1 + 2 + 3 + 5 + 7 + 11


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert Partition.parse("3,1,1") == (3, 1, 1)
