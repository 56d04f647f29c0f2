"""Permutations of {1..n}, cycle structure and the transposition length."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise ValueError("a permutation needs n >= 1")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        """Build from disjoint cycles, e.g. ``from_cycles(4, (1, 2), (3, 4))``."""
        images = list(range(1, n + 1))
        seen = set()
        for cyc in cycles:
            for k, x in enumerate(cyc):
                if x in seen or not 1 <= x <= n:
                    raise ValueError(f"bad cycle {cyc} for n={n}")
                seen.add(x)
                images[x - 1] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """All orbits (fixed points included), each started at its minimum."""
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x - 1]
            out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def to_json(self) -> dict:
        return {"n": self.n, "images": list(self.images)}

    @classmethod
    def from_json(cls, data: dict) -> Permutation:
        perm = cls(tuple(data["images"]))
        if "n" in data and data["n"] != perm.n:
            raise ValueError("'n' does not match the length of 'images'")
        return perm

    def __str__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def long_cycle(n: int) -> Permutation:
    """The cycle (1, 2, ..., n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation(tuple(range(2, n + 1)) + (1,))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Functional product ``a * b``: ``b`` acts first, then ``a``.

    With this convention (1 2)(2 3) = (1 2 3), so the long cycle is
    (1 2)(2 3)...(n-1 n).
    """
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} != {b.n}")
    ai = a.images
    return Permutation(tuple(ai[x - 1] for x in b.images))


def num_cycles(s: Permutation) -> int:
    return len(s.cycles())


def length(s: Permutation) -> int:
    """Minimal number of transpositions whose product is ``s``."""
    return s.n - num_cycles(s)


def is_geodesic_triple(prefix: Permutation, mid: Permutation, total: Permutation) -> bool:
    """True iff ``total = prefix * mid`` with l(total) = l(prefix) + l(mid)."""
    if compose(prefix, mid) != total:
        raise ValueError("prefix * mid does not equal total")
    return length(total) == length(prefix) + length(mid)


def cycle_of(s: Permutation) -> list[int] | None:
    """The unique non-trivial orbit of ``s`` read from its minimum, or None."""
    nontrivial = [c for c in s.cycles() if len(c) > 1]
    if len(nontrivial) != 1:
        return None
    return list(nontrivial[0])


def is_cycle(s: Permutation, size: int | None = None) -> bool:
    cyc = cycle_of(s)
    return cyc is not None and (size is None or len(cyc) == size)


def all_permutations(n: int) -> Iterable[Permutation]:
    from itertools import permutations

    for images in permutations(range(1, n + 1)):
        yield Permutation(images)


def cycles_of_length(n: int, k: int) -> Iterable[Permutation]:
    """Every k-cycle of S_n (k >= 2), each exactly once."""
    from itertools import combinations, permutations

    for support in combinations(range(1, n + 1), k):
        first, rest = support[0], support[1:]
        for order in permutations(rest):
            yield Permutation.from_cycles(n, (first,) + order)
