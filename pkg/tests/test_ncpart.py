from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from minfact.ncpart import (
    NCPartition,
    Shape,
    block_splits,
    classify_shape,
    from_geodesic_permutation,
    interval_partitions,
    is_noncrossing,
    lower_covers,
    noncrossing_partitions,
    refines,
    set_partitions,
    split_block,
    split_kind,
    split_step,
    to_permutation,
)
from minfact.perm import Permutation, all_permutations, compose, cycle_of, length, long_cycle

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430]


def P(text, n=None):
    blocks = [tuple(int(c) for c in b) for b in text.split("|")]
    ground = range(1, n + 1) if n else None
    return NCPartition.from_blocks(blocks, ground)


def test_noncrossing_examples():
    assert not is_noncrossing([(1, 3), (2, 4)])
    assert is_noncrossing([(1, 3), (2,)])
    with pytest.raises(ValueError):
        P("13|24")


@pytest.mark.parametrize("n", range(1, 9))
def test_catalan_counts(n):
    assert sum(1 for _ in noncrossing_partitions(n)) == CATALAN[n]


def test_bell_vs_catalan_at_four():
    assert sum(1 for _ in set_partitions(4)) == 15


@pytest.mark.parametrize(
    "text,shape",
    [
        ("12|3|45", Shape.INTERVAL),
        ("13|2", Shape.NEAR_INTERVAL),
        ("1245|3", Shape.NEAR_INTERVAL),
        ("135|2|4", Shape.OTHER),
        ("1234", Shape.INTERVAL),
        ("14|23", Shape.NEAR_INTERVAL),
        ("1|24|3", Shape.OTHER),
        ("15|2|34", Shape.NEAR_INTERVAL),
    ],
)
def test_classify_shape(text, shape):
    assert classify_shape(P(text)) is shape


def _near_by_definition(p: NCPartition) -> bool:
    # merge the first and last blocks of some interval partition with >= 3 blocks
    for q in interval_partitions(p.ground):
        if len(q.blocks) >= 3:
            merged = [q.blocks[0] + q.blocks[-1]] + list(q.blocks[1:-1])
            if NCPartition.from_blocks(merged, p.ground) == p:
                return True
    return False


@pytest.mark.parametrize("n", range(1, 8))
def test_shape_matches_definitions(n):
    intervals = set(interval_partitions(n))
    assert len(intervals) == 2 ** (n - 1)
    for p in noncrossing_partitions(n):
        shape = classify_shape(p)
        assert (shape is Shape.INTERVAL) == (p in intervals)
        assert (shape is Shape.NEAR_INTERVAL) == _near_by_definition(p)


@given(st.integers(1, 7), st.data())
def test_shape_invariant_under_relabelling(n, data):
    ps = list(noncrossing_partitions(n))
    p = data.draw(st.sampled_from(ps))
    ground = sorted(data.draw(st.sets(st.integers(1, 30), min_size=n, max_size=n)))
    q = p.relabel(dict(zip(range(1, n + 1), ground)))
    assert classify_shape(q) is classify_shape(p)


def test_refines_examples():
    q = P("13|2")
    assert refines(NCPartition.bottom(3), q)
    assert not refines(P("12|3"), NCPartition.bottom(3))
    with pytest.raises(ValueError):
        refines(P("12|3"), P("12|3|4"))


@pytest.mark.parametrize("n", range(1, 7))
def test_interval_lattice_is_boolean(n):
    # an interval partition corresponds to the set of cut points it does not merge across
    def cuts(p):
        return frozenset(b[-1] for b in p.blocks[:-1])

    ips = list(interval_partitions(n))
    for p in ips:
        for q in ips:
            assert refines(p, q) == (cuts(q) <= cuts(p))


def test_to_permutation_examples():
    assert to_permutation(P("12|3")) == Permutation.from_cycles(3, (1, 2))
    assert to_permutation(NCPartition.top(6)) == long_cycle(6)
    assert to_permutation(NCPartition.bottom(4)).is_identity()


@pytest.mark.parametrize("n", range(1, 7))
def test_geodesic_embedding_is_bijective(n):
    c = long_cycle(n)
    geodesic = [s for s in all_permutations(n) if length(s) + length(compose(c, s.inverse())) == n - 1]
    assert len(geodesic) == CATALAN[n]
    images = {to_permutation(p) for p in noncrossing_partitions(n)}
    assert images == set(geodesic)
    for s in all_permutations(n):
        p = from_geodesic_permutation(s)
        assert (p is not None) == (s in images)
        if p is not None:
            assert to_permutation(p) == s and p.rank == length(s)


def test_from_geodesic_examples():
    assert from_geodesic_permutation(Permutation.identity(3)) == NCPartition.bottom(3)
    assert from_geodesic_permutation(Permutation.from_cycles(3, (1, 3))) == P("13|2")
    assert from_geodesic_permutation(Permutation.from_cycles(3, (1, 3, 2))) is None


@pytest.mark.parametrize("n", range(1, 6))
def test_order_matches_length_additivity(n):
    ps = list(noncrossing_partitions(n))
    for p in ps:
        sp = to_permutation(p)
        for q in ps:
            sq = to_permutation(q)
            assert refines(p, q) == (length(sq) == length(sp) + length(compose(sp.inverse(), sq)))


def test_split_block_examples():
    top3 = NCPartition.top(3)
    assert split_block(top3, (1, 2, 3), [(1, 3), (2,)]) == P("13|2")
    assert split_block(NCPartition.top(4), (1, 2, 3, 4), [(1,), (2,), (3,), (4,)]) == NCPartition.bottom(4)
    with pytest.raises(ValueError):
        split_block(NCPartition.top(4), (1, 2, 3, 4), [(1, 3), (2, 4)])
    with pytest.raises(ValueError):
        split_block(top3, (1, 2), [(1,), (2,)])


@pytest.mark.parametrize("n", range(2, 7))
def test_cofactor_shapes(n):
    """c = y z minimal with z a cycle forces y to be sigma of an (near) interval partition."""
    c = long_cycle(n)
    for s in all_permutations(n):
        z = compose(s.inverse(), c)
        if cycle_of(z) is None or length(s) + length(z) != n - 1:
            continue
        p = from_geodesic_permutation(s)
        assert p is not None and classify_shape(p) is not Shape.OTHER


@pytest.mark.parametrize("n", range(2, 7))
def test_split_minimality_matches_shape(n):
    """A split of a block yields a cycle step on the geodesic iff the parts are (near) interval."""
    for q in noncrossing_partitions(n):
        sq = to_permutation(q)
        for block in q.blocks:
            for parts in set_partitions(block):
                if len(parts) < 2 or not is_noncrossing([b for b in q.blocks if b != block] + list(parts)):
                    continue
                p = split_block(q, block, parts)
                z = compose(to_permutation(p).inverse(), sq)
                cyc = cycle_of(z)
                minimal = cyc is not None and len(cyc) == len(parts)
                assert minimal == (split_kind(parts) is not Shape.OTHER)


@pytest.mark.parametrize("m,k", [(m, k) for m in range(2, 9) for k in range(2, m + 1)])
def test_block_splits_count_and_validity(m, k):
    block = tuple(range(3, 3 + 2 * m, 2))
    splits = list(block_splits(block, k))
    assert len(splits) == comb(m, k)
    assert len({s for s, _ in splits}) == len(splits)
    for parts, is_int in splits:
        assert len(parts) == k
        assert split_kind(parts) is (Shape.INTERVAL if is_int else Shape.NEAR_INTERVAL)


@pytest.mark.parametrize("n", range(1, 9))
def test_interval_lower_covers_equal_rank(n):
    for p in noncrossing_partitions(n):
        assert sum(1 for _, is_int in lower_covers(p) if is_int) == p.rank


def test_split_step():
    big, parts = split_step(P("13|2"), NCPartition.top(3))
    assert big == (1, 2, 3) and parts == ((1, 3), (2,))
    with pytest.raises(ValueError):
        split_step(NCPartition.bottom(4), NCPartition.top(4).__class__.from_blocks([(1, 2), (3, 4)]))
    assert split_step(NCPartition.bottom(4), NCPartition.top(4))[1] == ((1,), (2,), (3,), (4,))


def test_json_and_str():
    p = P("15|23|4")
    assert p.to_json() == {"ground": [1, 2, 3, 4, 5], "blocks": [[1, 5], [2, 3], [4]]}
    assert NCPartition.from_json(p.to_json()) == p
    assert str(p) == "15|23|4"


def test_restrict_and_rank():
    p = P("15|23|4")
    assert p.rank == 2
    assert p.restrict((2, 3, 4)).blocks == ((2, 3), (4,))
    with pytest.raises(ValueError):
        p.restrict((2, 4))
