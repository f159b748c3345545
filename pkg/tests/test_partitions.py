import pytest
from hypothesis import given, strategies as st

from agtcheck.partitions import (Box, MultiPartition, Partition, arm_leg, content,
                                 enumerate_multipartitions, hooks, parse_multipartition,
                                 parse_partition, partitions_of)


LAM = Partition((5, 4, 4, 2, 1))


def test_arm_leg_inside():
    assert arm_leg(LAM, Box(3, 0)) == (1, 2)
    assert arm_leg(Partition((1,)), Box(0, 0)) == (0, 0)


def test_arm_leg_outside():
    assert arm_leg(LAM, Box(4, 2)) == (-1, -2)


def test_arm_leg_counts_inside_boxes():
    for s in LAM.boxes():
        east = sum(1 for t in LAM.boxes() if t.y == s.y and t.x > s.x)
        north = sum(1 for t in LAM.boxes() if t.x == s.x and t.y > s.y)
        assert arm_leg(LAM, s) == (east, north)


def test_contents(ctx1, ctx2):
    lam = Partition((2,))
    assert [content(ctx1, lam, s) for s in lam.boxes()] == [0, 1]
    col = Partition((2, 2, 2))
    assert content(ctx1, col, Box(1, 2)) == 1 - 2 * ctx1.kappa
    single = Partition((1,))
    assert content(ctx2, single, Box(0, 0), "equivariant", 2) == -ctx2.e[1]
    assert content(ctx2, col, Box(1, 2), "equivariant", 1) == ctx2.x + 2 * ctx2.y - ctx2.e[0]


def test_content_errors(ctx1):
    with pytest.raises(ValueError):
        content(ctx1, Partition((2,)), Box(0, 1))
    with pytest.raises(ValueError):
        content(ctx1, Partition((2,)), Box(0, 0), "equivariant", 2)


def test_hooks(ctx1):
    k = ctx1.kappa
    lam = Partition((2,))
    assert hooks(ctx1, lam, Box(0, 0)) == (2, k + 1)
    assert hooks(ctx1, lam, Box(1, 0)) == (1, k)
    assert hooks(ctx1, Partition((1,)), Box(0, 0)) == (1, k)


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    assert Partition((3, 0, 0)) == Partition((3,))


def _gf_coefficient(r, n):
    """Coefficient of q^n in prod_k (1 - q^k)^{-r}."""
    coeffs = [1] + [0] * n
    for _ in range(r):
        for k in range(1, n + 1):
            for m in range(k, n + 1):
                coeffs[m] += coeffs[m - k]
    return coeffs[n]


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("n", range(9))
def test_enumeration_counts(r, n):
    mps = enumerate_multipartitions(r, n)
    assert len(mps) == _gf_coefficient(r, n)
    assert len(set(mps)) == len(mps)
    assert all(mp.size == n and mp.r == r for mp in mps)


def test_enumeration_examples():
    assert len(enumerate_multipartitions(1, 4)) == 5
    assert len(enumerate_multipartitions(2, 2)) == 5
    assert [mp.text() for mp in enumerate_multipartitions(2, 1)] == ["[(1),()]", "[(),(1)]"]
    assert [p.text() for p in partitions_of(3)] == ["(3)", "(2,1)", "(1,1,1)"]


def test_remove_boxes_example():
    mp = MultiPartition([(2,), (1,)])
    removed = mp.remove_boxes()
    assert [(a, s) for a, s, _ in removed] == [(1, Box(1, 0)), (2, Box(0, 0))]
    assert [small.text() for _, _, small in removed] == ["[(1),(1)]", "[(2),()]"]


@pytest.mark.parametrize("r,n", [(1, 5), (2, 3), (3, 2)])
def test_add_remove_are_inverse(r, n):
    for lam in enumerate_multipartitions(r, n):
        for a, s, big in lam.add_boxes():
            assert (a, s, lam) in big.remove_boxes()
            assert big.contains(lam)
        for a, s, small in lam.remove_boxes():
            assert (a, s, lam) in small.add_boxes()
    ups = {(lam, big) for lam in enumerate_multipartitions(r, n) for _, _, big in lam.add_boxes()}
    downs = {(small, big) for big in enumerate_multipartitions(r, n + 1)
             for _, _, small in big.remove_boxes()}
    assert ups == downs


all_partitions = st.integers(min_value=0, max_value=10).flatmap(
    lambda n: st.sampled_from(partitions_of(n)))


@given(all_partitions)
def test_conjugate_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size == lam.size


@given(st.integers(min_value=0, max_value=8).flatmap(lambda n: st.sampled_from(partitions_of(n))))
def test_content_sum(lam):
    from agtcheck import make_params
    ctx = make_params(1)
    total = ctx.zero
    for s in lam.boxes():
        total = total + content(ctx, lam, s)
    assert total == lam.conjugate().n() - ctx.kappa * lam.n()


@given(all_partitions)
def test_n_of_partition(lam):
    assert lam.n() == sum(i * p for i, p in enumerate(lam))


def test_parsing_roundtrip():
    for mp in enumerate_multipartitions(2, 3):
        assert parse_multipartition(mp.text()) == mp
    assert parse_partition("2,1") == Partition((2, 1))
    assert parse_partition("(1,2)") == Partition((2, 1))
    assert parse_partition("21") == Partition((2, 1))
    assert parse_partition("()") == Partition()
    with pytest.raises(ValueError):
        parse_multipartition("(1)")
