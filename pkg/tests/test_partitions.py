import random

import pytest
from hypothesis import given, strategies as st

from orbivertex.partitions import (
    ColoredPartition, MayaDiagram, add_border_strip, color_counts, conjugate,
    enum_partitions, enum_plane_partitions, from_quotient, parse_partition, partition_tuples,
    plane_partitions_by_base, quotient_core, z_factor,
)




def test_partition_counts():
    sizes = [sum(lam) for lam in enum_partitions(8)]
    assert sizes.count(0) == 1
    assert sizes.count(4) == 5
    assert sizes.count(8) == 22
    assert len(set(enum_partitions(8))) == len(sizes)


def test_literals_roundtrip():
    assert parse_partition("2,1") == (2, 1)
    assert parse_partition("") == ()
    with pytest.raises(ValueError):
        parse_partition("1,x")


def test_z_factor():
    assert z_factor((1, 1, 1)) == 6
    assert z_factor((2, 2, 1)) == 8


def test_plane_partition_counts_match_macmahon():
    # coefficients of prod (1 - x^k)^(-k)
    want = [1, 1, 3, 6, 13, 24, 48, 86, 160]
    counts = [0] * len(want)
    for pp in enum_plane_partitions(len(want) - 1):
        counts[pp.size] += 1
    assert counts == want


def test_plane_partitions_are_distinct_and_downward_closed():
    seen = set()
    for pp in enum_plane_partitions(6, 1):
        boxes = set(pp.boxes())
        assert pp.key() not in seen
        seen.add(pp.key())
        for a, b, c in boxes:
            for d in ((a - 1, b, c), (a, b - 1, c), (a, b, c - 1)):
                assert min(d) < 0 or d in boxes


def test_partitioned_iteration_covers_the_stream():
    groups = plane_partitions_by_base(6, 1)
    union = sorted(pp.key() for grp in groups.values() for pp in grp)
    assert union == sorted(pp.key() for pp in enum_plane_partitions(6, 1))


def test_single_box_and_two_box_colorings():
    single = [pp for pp in enum_plane_partitions(1, 2) if pp.size == 1]
    assert len(single) == 1 and single[0].color_counts() == (1, 0, 0)
    assert sum(1 for pp in enum_plane_partitions(2) if pp.size == 2) == 3


def test_color_counts_examples():
    assert color_counts(ColoredPartition((2, 1), 2)) == (1, 2)
    lam = ColoredPartition((2,), 2)
    assert color_counts(lam) == (1, 1) and lam.is_multi_regular()


def test_quotient_examples():
    assert quotient_core(ColoredPartition((), 2)) == ((), ((), ()))
    assert quotient_core(ColoredPartition((2,), 2)) == ((), ((1,), ()))
    assert quotient_core(ColoredPartition((1,), 2)) == ((1,), ((), ()))
    assert from_quotient(((), ())).parts == ()
    assert from_quotient(((1,), ())).parts == (2,)


@pytest.mark.parametrize("n", range(4))
def test_quotient_roundtrip_exhaustive(n):
    k = n + 1
    for total in range(12 // k + 1):
        for t in partition_tuples(total, k):
            lam = from_quotient(t)
            assert lam.size == k * total
            assert quotient_core(lam) == ((), tuple(t))


@pytest.mark.parametrize("n", range(4))
def test_multi_regular_iff_empty_core(n):
    k = n + 1
    for lam in enum_partitions(12):
        colored = ColoredPartition(lam, k)
        core, quot = quotient_core(colored)
        assert sum(core) + k * sum(map(sum, quot)) == sum(lam)
        assert colored.is_multi_regular() == (core == ())
        counts = colored.color_counts()
        assert sum(counts) == sum(lam)
        if colored.is_multi_regular():
            assert from_quotient(quot).parts == lam
            assert set(counts) == {sum(lam) // k}


def test_border_strip_on_empty():
    assert {x.parts for x in add_border_strip(ColoredPartition((), 2), 0)} == {(2,)}
    assert {x.parts for x in add_border_strip(ColoredPartition((), 2), 1)} == {(1, 1)}


def test_border_strip_for_trivial_group_is_box_addition():
    lam = ColoredPartition((2, 1), 1)
    assert {x.parts for x in add_border_strip(lam, 0)} == {(3, 1), (2, 2), (2, 1, 1)}


@pytest.mark.parametrize("n", range(3))
def test_border_strips_match_quotient_box_addition(n):
    k = n + 1
    for total in range(8 // k + 1):
        for t in partition_tuples(total, k):
            lam = from_quotient(t)
            for slot in range(k):
                want = set()
                for lam2 in enum_partitions(sum(t[slot]) + 1):
                    if sum(lam2) == sum(t[slot]) + 1 and _contains(lam2, t[slot]):
                        bigger = list(t)
                        bigger[slot] = lam2
                        want.add(from_quotient(tuple(bigger)).parts)
                got = {x.parts for x in add_border_strip(lam, slot)}
                assert got == want


def _contains(outer, inner):
    return len(inner) <= len(outer) and all(a >= b for a, b in zip(outer, inner))


def test_conjugate_is_an_involution():
    for lam in enum_partitions(8):
        assert conjugate(conjugate(lam)) == lam


@given(st.lists(st.integers(1, 15), max_size=12))
def test_maya_roundtrip(parts):
    lam = tuple(sorted(parts, reverse=True))
    maya = MayaDiagram.from_partition(lam)
    assert maya.charge() == 0
    assert maya.to_partition() == lam


def test_maya_roundtrip_random_large():
    rng = random.Random(5)
    for _ in range(200):
        size = rng.randint(0, 50)
        parts = []
        while size:
            p = rng.randint(1, size)
            parts.append(p)
            size -= p
        lam = tuple(sorted(parts, reverse=True))
        assert MayaDiagram.from_partition(lam).to_partition() == lam
