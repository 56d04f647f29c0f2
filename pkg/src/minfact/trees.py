"""Andre trees with hook weights and Cayley trees with decreasing-edge weights."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product as cartesian
from typing import Iterator

from .poly import Monomial, Polynomial, hook_rhs, product


@dataclass(frozen=True)
class AndreTree:
    """Decreasingly labelled tree on 1..n, root n, each vertex with 0, 1 or 2 children.

    ``parent`` holds (child, parent) pairs sorted by child.
    """

    n: int
    parent: tuple[tuple[int, int], ...]

    def __post_init__(self):
        par = dict(self.parent)
        object.__setattr__(self, "parent", tuple(sorted(par.items())))
        if set(par) != set(range(1, self.n)):
            raise ValueError("every label below the root needs a parent")
        for child, p in par.items():
            if not child < p <= self.n:
                raise ValueError(f"labels must decrease away from the root: {child} -> {p}")
        arity = {}
        for p in par.values():
            arity[p] = arity.get(p, 0) + 1
        if any(k > 2 for k in arity.values()):
            raise ValueError("a vertex has more than two children")

    def children(self, v: int) -> list[int]:
        return [c for c, p in self.parent if p == v]

    def hook_lengths(self) -> dict[int, int]:
        """h_i: size of the subtree rooted at i."""
        h = {i: 1 for i in range(1, self.n + 1)}
        # children carry smaller labels, so ascending order is bottom-up
        for child, p in self.parent:
            h[p] += h[child]
        return h

    def to_json(self) -> dict:
        return {"n": self.n, "parent": {str(c): p for c, p in self.parent}}

    @classmethod
    def from_json(cls, data: dict) -> AndreTree:
        return cls(data["n"], tuple((int(c), p) for c, p in data["parent"].items()))

    def __str__(self):
        def show(v):
            kids = self.children(v)
            if not kids:
                return str(v)
            return f"{v}(" + ",".join(show(c) for c in sorted(kids, reverse=True)) + ")"

        return show(self.n)


def _andre_shapes(labels: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    """Edge lists of Andre trees on ``labels`` (root = max)."""
    root = labels[-1]
    rest = labels[:-1]
    if not rest:
        yield []
        return
    # one child
    for sub in _andre_shapes(rest):
        yield sub + [(rest[-1], root)]
    # two children: the one holding min(rest) comes first, so each pair once
    low, others = rest[0], rest[1:]
    for k in range(len(others)):
        for extra in combinations(others, k):
            U = tuple(sorted((low,) + extra))
            V = tuple(x for x in rest if x not in U)
            for su in _andre_shapes(U):
                for sv in _andre_shapes(V):
                    yield su + sv + [(U[-1], root), (V[-1], root)]


def enumerate_andre(n: int) -> Iterator[AndreTree]:
    if n < 1:
        raise ValueError("n must be positive")
    for edges in _andre_shapes(tuple(range(1, n + 1))):
        yield AndreTree(n, tuple(edges))


def andre_weight(t: AndreTree) -> Polynomial:
    """prod over vertices i with h_i > 1 of ((h_i - 1) X_{i-1} + 2)."""
    h = t.hook_lengths()
    return product(Polynomial.linear(i - 1, h[i] - 1, 2) for i in sorted(h) if h[i] > 1)


def andre_weighted_sum(n: int) -> Polynomial:
    total = Polynomial()
    for t in enumerate_andre(n):
        total = total + andre_weight(t)
    return total


def count_alternating(n: int) -> int:
    """Permutations w of 1..n with w1 < w2 > w3 < ... (brute force)."""
    from itertools import permutations

    count = 0
    for w in permutations(range(n)):
        if all((w[i] < w[i + 1]) == (i % 2 == 0) for i in range(n - 1)):
            count += 1
    return count


# ---------------------------------------------------------------------------
# the P_n recursion over splits {0..n-2} = I u J


@lru_cache(maxsize=None)
def hook_poly_by_recursion(n: int) -> Polynomial:
    """P_n(X_0, ..., X_{n-1}) computed from the splitting recursion alone.

    2 P_n = ((n-1) X_{n-1} + 2) * sum_{I u J = {0..n-2}} P_{|I|}(X_I) P_{|J|}(X_J),
    where P_m(X_S) renames X_k to X_{s_{k+1}} for S = {s_1 < s_2 < ...}.
    """
    if n <= 1:
        return Polynomial.constant(1)
    return recursion_rhs(n, hook_poly_by_recursion).exact_div(2)


def recursion_rhs(n: int, P) -> Polynomial:
    """((n-1) X_{n-1} + 2) * sum over I u J = {0..n-2} of P(|I|)(X_I) P(|J|)(X_J).

    This is twice P_n when P satisfies the recursion.
    """
    idx = tuple(range(n - 1))
    total = Polynomial()
    for mask in range(1 << (n - 1)):
        I = [i for i in idx if mask >> i & 1]
        J = [i for i in idx if not mask >> i & 1]
        left = P(len(I)).substitute(dict(enumerate(I)))
        right = P(len(J)).substitute(dict(enumerate(J)))
        total = total + left * right
    return Polynomial.linear(n - 1, n - 1, 2) * total


def _closed_hook(m: int) -> Polynomial:
    return hook_rhs(m) if m >= 1 else Polynomial.constant(1)


def check_hook_recursion(n: int) -> bool:
    """Recursion evaluated on the closed products, and recursion-built P_n, both
    agree with prod_{i=1}^{n-1} (i X_i + n + 1 - i)."""
    if n < 2:
        raise ValueError("need n >= 2")
    closed = hook_rhs(n)
    return recursion_rhs(n, _closed_hook) == closed * 2 and hook_poly_by_recursion(n) == closed


# ---------------------------------------------------------------------------
# Cayley trees


@dataclass(frozen=True)
class CayleyTree:
    """Labelled tree on 1..n rooted at n; ``parent[i-1]`` is the parent of i < n."""

    n: int
    parent: tuple[int, ...]

    def __post_init__(self):
        parent = tuple(self.parent)
        object.__setattr__(self, "parent", parent)
        if len(parent) != self.n - 1:
            raise ValueError("need a parent for every vertex but the root")
        if not _is_tree(self.n, parent):
            raise ValueError(f"{parent} has a cycle")

    def decreasing_edges(self) -> list[tuple[int, int]]:
        """Edges i -> parent(i) with i > parent(i)."""
        return [(i, p) for i, p in enumerate(self.parent, start=1) if p < i]

    def to_json(self) -> dict:
        return {"n": self.n, "parent": {str(i): p for i, p in enumerate(self.parent, start=1)}}

    @classmethod
    def from_json(cls, data: dict) -> CayleyTree:
        n = data["n"]
        return cls(n, tuple(data["parent"][str(i)] for i in range(1, n)))


def _is_tree(n: int, parent: tuple[int, ...]) -> bool:
    # every vertex must reach the root n without revisiting
    state = [0] * (n + 1)  # 0 unknown, 1 in progress, 2 reaches root
    state[n] = 2
    for start in range(1, n):
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = parent[v - 1]
        if state[v] == 1:
            return False
        for u in path:
            state[u] = 2
    return True


def enumerate_cayley(n: int) -> Iterator[CayleyTree]:
    """All n^(n-2) trees on 1..n, via parent vectors with cycle rejection."""
    if n < 2:
        raise ValueError("need n >= 2")
    choices = [[p for p in range(1, n + 1) if p != i] for i in range(1, n)]
    for parent in cartesian(*choices):
        if _is_tree(n, parent):
            yield CayleyTree(n, parent)


def cayley_weight(t: CayleyTree) -> Monomial:
    """X_{j-1} for each vertex j whose edge to its parent is decreasing."""
    return Monomial.from_vars(j - 1 for j, _ in t.decreasing_edges())


def cayley_weighted_sum(n: int) -> Polynomial:
    counts: dict[Monomial, int] = {}
    for t in enumerate_cayley(n):
        m = cayley_weight(t)
        counts[m] = counts.get(m, 0) + 1
    return Polynomial(counts)
