from itertools import product

import pytest
from hypothesis import given, strategies as st

from minfact.perm import (
    Permutation,
    all_permutations,
    compose,
    cycle_of,
    cycles_of_length,
    is_cycle,
    is_geodesic_triple,
    length,
    long_cycle,
    num_cycles,
)
from minfact.verify import _bfs_lengths


@st.composite
def perms(draw, n=None):
    n = n or draw(st.integers(1, 7))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@pytest.mark.parametrize("n,images", [(1, (1,)), (3, (2, 3, 1)), (5, (2, 3, 4, 5, 1))])
def test_long_cycle(n, images):
    assert long_cycle(n).images == images


def test_long_cycle_rejects_zero():
    with pytest.raises(ValueError):
        long_cycle(0)


def test_product_convention_builds_the_long_cycle():
    t = lambda i, j, n: Permutation.from_cycles(n, (i, j))
    assert compose(t(1, 2, 3), t(2, 3, 3)).images == (2, 3, 1)
    for n in range(2, 8):
        prod = Permutation.identity(n)
        for i in range(1, n):
            prod = compose(prod, t(i, i + 1, n))
        assert prod == long_cycle(n)


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose(Permutation.identity(2), Permutation.identity(3))


@given(perms())
def test_identity_and_inverse_laws(s):
    e = Permutation.identity(s.n)
    assert compose(e, s) == s == compose(s, e)
    assert compose(s, s.inverse()) == e
    assert length(s.inverse()) == length(s)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
def test_associative(triple):
    a, b, c = triple
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_length_examples():
    assert length(Permutation.identity(4)) == 0
    assert length(long_cycle(3)) == 2
    assert length(Permutation.from_cycles(5, (1, 2), (3, 4))) == 2
    assert num_cycles(Permutation.from_cycles(5, (1, 2), (3, 4))) == 3


@pytest.mark.parametrize("n", range(1, 6))
def test_length_is_transposition_distance(n):
    dist = _bfs_lengths(n)
    assert len(dist) == len(list(all_permutations(n)))
    assert all(length(s) == d for s, d in dist.items())


def test_geodesic_triples():
    c = long_cycle(3)
    e = Permutation.identity(3)
    assert is_geodesic_triple(e, c, c)
    t12 = Permutation.from_cycles(3, (1, 2))
    t23 = Permutation.from_cycles(3, (2, 3))
    assert is_geodesic_triple(t12, t23, c)
    with pytest.raises(ValueError):
        is_geodesic_triple(t12, Permutation.from_cycles(3, (1, 3)), c)
    # exhaustive over S_3: only splits with additive length count
    for a in all_permutations(3):
        b = compose(a.inverse(), c)
        assert is_geodesic_triple(a, b, c) == (length(a) + length(b) == 2)


def test_cycle_of():
    assert cycle_of(Permutation.from_cycles(3, (1, 3, 2))) == [1, 3, 2]
    assert cycle_of(Permutation.identity(4)) is None
    assert cycle_of(Permutation.from_cycles(4, (1, 2), (3, 4))) is None
    assert is_cycle(long_cycle(5), 5) and not is_cycle(long_cycle(5), 4)


@pytest.mark.parametrize("n,k", [(4, 2), (5, 3), (5, 5), (6, 4)])
def test_cycles_of_length_counts(n, k):
    from math import comb, factorial

    found = list(cycles_of_length(n, k))
    assert len(found) == len(set(found)) == comb(n, k) * factorial(k - 1)
    assert all(is_cycle(z, k) for z in found)


@given(perms())
def test_json_round_trip(s):
    assert Permutation.from_json(s.to_json()) == s


def test_invalid_images():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Permutation.from_json({"n": 3, "images": [2, 1]})


def test_str_cycle_notation():
    assert str(Permutation.from_cycles(4, (1, 3), (2, 4))) == "(1 3)(2 4)"
    assert str(Permutation.identity(2)) == "()"


@pytest.mark.parametrize("n", [3, 4, 5])
def test_triangle_inequality(n):
    ps = list(all_permutations(n))
    d = lambda s, t: length(compose(s, t.inverse()))
    for s, t, u in product(ps[:24], ps, ps[:24]):
        assert d(s, u) <= d(s, t) + d(t, u)
