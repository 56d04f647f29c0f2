"""Noncrossing partitions of a totally ordered ground set.

Blocks are stored as sorted tuples and ordered by their minimum, so equal
partitions compare and hash equal. The ground set may be any strictly
increasing sequence of positive integers; shapes are judged under the induced
order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .perm import Permutation, compose, length, long_cycle

Block = tuple[int, ...]


class Shape(enum.Enum):
    INTERVAL = "interval"
    NEAR_INTERVAL = "near_interval"
    OTHER = "other"


def canonical_blocks(blocks: Iterable[Iterable[int]]) -> tuple[Block, ...]:
    return tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))


def is_noncrossing(blocks: Iterable[Iterable[int]]) -> bool:
    """No i < j < k < l with i, k in one block and j, l in another."""
    blocks = [tuple(sorted(b)) for b in blocks]
    for x in range(len(blocks)):
        for y in range(x + 1, len(blocks)):
            merged = sorted([(e, 0) for e in blocks[x]] + [(e, 1) for e in blocks[y]])
            runs = 1
            for (_, u), (_, v) in zip(merged, merged[1:]):
                if u != v:
                    runs += 1
                    if runs >= 4:
                        return False
    return True


def _position_shape(pos_blocks: Sequence[Sequence[int]], m: int) -> Shape:
    """Shape of a partition of {0..m-1} given as sorted position lists."""
    if all(b[-1] - b[0] + 1 == len(b) for b in pos_blocks):
        return Shape.INTERVAL
    wrap = next(b for b in pos_blocks if b[0] == 0)
    if wrap[-1] != m - 1:
        return Shape.OTHER
    # wrap must be a prefix plus a suffix; the rest contiguous
    cut = 0
    while wrap[cut + 1] == wrap[cut] + 1:
        cut += 1
    tail = wrap[cut + 1:]
    if tail[-1] - tail[0] + 1 != len(tail):
        return Shape.OTHER
    if not all(b[-1] - b[0] + 1 == len(b) for b in pos_blocks if b is not wrap):
        return Shape.OTHER
    return Shape.NEAR_INTERVAL


def shape_of(ground: Sequence[int], blocks: Iterable[Sequence[int]]) -> Shape:
    index = {x: i for i, x in enumerate(ground)}
    pos = [sorted(index[x] for x in b) for b in blocks]
    return _position_shape(pos, len(ground))


@dataclass(frozen=True)
class NCPartition:
    """A noncrossing set partition of ``ground``."""

    ground: tuple[int, ...]
    blocks: tuple[Block, ...]

    def __post_init__(self):
        ground = tuple(self.ground)
        if not ground:
            raise ValueError("empty ground set")
        if any(x < 1 for x in ground) or any(u >= v for u, v in zip(ground, ground[1:])):
            raise ValueError(f"ground {ground} is not strictly increasing positive")
        blocks = canonical_blocks(self.blocks)
        flat = sorted(x for b in blocks for x in b)
        if tuple(flat) != ground:
            raise ValueError(f"blocks {blocks} do not partition {ground}")
        if not is_noncrossing(blocks):
            raise ValueError(f"{blocks} is crossing")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def _trusted(cls, ground: tuple[int, ...], blocks: tuple[Block, ...]) -> NCPartition:
        # hot paths: caller guarantees canonical, noncrossing input
        obj = object.__new__(cls)
        object.__setattr__(obj, "ground", ground)
        object.__setattr__(obj, "blocks", blocks)
        return obj

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], ground: Iterable[int] | None = None) -> NCPartition:
        blocks = canonical_blocks(blocks)
        if ground is None:
            ground = sorted(x for b in blocks for x in b)
        return cls(tuple(ground), blocks)

    @classmethod
    def bottom(cls, ground: int | Iterable[int]) -> NCPartition:
        ground = _as_ground(ground)
        return cls._trusted(ground, tuple((x,) for x in ground))

    @classmethod
    def top(cls, ground: int | Iterable[int]) -> NCPartition:
        ground = _as_ground(ground)
        return cls._trusted(ground, (ground,))

    @property
    def rank(self) -> int:
        return len(self.ground) - len(self.blocks)

    def block_of(self, x: int) -> Block:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def is_standard(self) -> bool:
        return self.ground == tuple(range(1, len(self.ground) + 1))

    def relabel(self, mapping) -> NCPartition:
        """Image under ``mapping`` (a callable or dict); must stay noncrossing."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return NCPartition.from_blocks([[f(x) for x in b] for b in self.blocks])

    def restrict(self, subset: Iterable[int]) -> NCPartition:
        """Blocks of ``self`` contained in ``subset``, which must be a union of blocks."""
        subset = set(subset)
        kept = [b for b in self.blocks if subset.issuperset(b)]
        if sum(map(len, kept)) != len(subset):
            raise ValueError("subset is not a union of blocks")
        return NCPartition._trusted(tuple(sorted(subset)), tuple(kept))

    def to_json(self) -> dict:
        return {"ground": list(self.ground), "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data: dict) -> NCPartition:
        return cls.from_blocks(data["blocks"], data.get("ground"))

    def __str__(self):
        if max(self.ground) < 10:
            return "|".join("".join(map(str, b)) for b in self.blocks)
        return "|".join(",".join(map(str, b)) for b in self.blocks)


def _as_ground(ground) -> tuple[int, ...]:
    if isinstance(ground, int):
        return tuple(range(1, ground + 1))
    return tuple(ground)


def classify_shape(p: NCPartition) -> Shape:
    return shape_of(p.ground, p.blocks)


def refines(p: NCPartition, q: NCPartition) -> bool:
    """p <= q in refinement order."""
    if p.ground != q.ground:
        raise ValueError("ground sets differ")
    owner = {}
    for k, b in enumerate(q.blocks):
        for x in b:
            owner[x] = k
    return all(len({owner[x] for x in b}) == 1 for b in p.blocks)


def to_permutation(p: NCPartition, n: int | None = None) -> Permutation:
    """sigma_p: each block i_1 < ... < i_r becomes the cycle (i_1 ... i_r).

    Points of {1..n} outside the ground set are fixed.
    """
    if n is None:
        n = p.ground[-1]
    if p.ground[-1] > n:
        raise ValueError("ground set does not fit in {1..n}")
    images = list(range(1, n + 1))
    for b in p.blocks:
        for k, x in enumerate(b):
            images[x - 1] = b[(k + 1) % len(b)]
    return Permutation(tuple(images))


def from_geodesic_permutation(s: Permutation, n: int | None = None) -> NCPartition | None:
    """Orbit partition of ``s`` if ``s`` lies on a geodesic from id to the long cycle."""
    n = s.n if n is None else n
    if n != s.n:
        raise ValueError("size mismatch")
    c = long_cycle(n)
    if length(s) + length(compose(c, s.inverse())) != n - 1:
        return None
    p = NCPartition.from_blocks(s.cycles(), range(1, n + 1))
    assert to_permutation(p) == s
    return p


def split_block(q: NCPartition, block: Iterable[int], parts: Iterable[Iterable[int]]) -> NCPartition:
    """Replace ``block`` of ``q`` by ``parts``."""
    block = tuple(sorted(block))
    if block not in q.blocks:
        raise ValueError(f"{block} is not a block of {q}")
    parts = canonical_blocks(parts)
    if tuple(sorted(x for b in parts for x in b)) != block:
        raise ValueError(f"{parts} does not partition {block}")
    new = [b for b in q.blocks if b != block] + list(parts)
    if not is_noncrossing(new):
        raise ValueError("split produces a crossing partition")
    return NCPartition._trusted(q.ground, canonical_blocks(new))


def split_kind(parts: Sequence[Sequence[int]]) -> Shape:
    """Shape of ``parts`` as a partition of their union."""
    ground = sorted(x for b in parts for x in b)
    return shape_of(ground, parts)


def merge_blocks(p: NCPartition, blocks: Iterable[Block]) -> NCPartition:
    blocks = set(blocks)
    merged = tuple(sorted(x for b in blocks for x in b))
    rest = [b for b in p.blocks if b not in blocks]
    return NCPartition.from_blocks(rest + [merged], p.ground)


def split_step(lower: NCPartition, upper: NCPartition) -> tuple[Block, tuple[Block, ...]]:
    """The block of ``upper`` that ``lower`` splits, with its parts.

    Exactly one block may differ between the two partitions.
    """
    lower_set = set(lower.blocks)
    changed = [b for b in upper.blocks if b not in lower_set]
    if len(changed) != 1:
        raise ValueError(f"{lower} is not a one-block split of {upper}")
    big = changed[0]
    members = set(big)
    parts = tuple(b for b in lower.blocks if members.issuperset(b))
    if sum(map(len, parts)) != len(big) or len(parts) < 2:
        raise ValueError(f"{lower} is not a one-block split of {upper}")
    return big, parts


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _split_patterns(m: int, k: int) -> tuple[tuple[tuple[tuple[int, ...], ...], bool], ...]:
    """Interval and near-interval partitions of {0..m-1} into k parts.

    Each entry is (parts, is_interval), parts in canonical order; sorted.
    """
    out = []
    if 1 <= k <= m:
        for cuts in combinations(range(1, m), k - 1):
            bounds = (0,) + cuts + (m,)
            parts = tuple(tuple(range(bounds[i], bounds[i + 1])) for i in range(k))
            out.append((parts, True))
    if 2 <= k and k + 1 <= m:
        for cuts in combinations(range(1, m), k):
            bounds = (0,) + cuts + (m,)
            ivs = [tuple(range(bounds[i], bounds[i + 1])) for i in range(k + 1)]
            parts = (ivs[0] + ivs[-1],) + tuple(ivs[1:-1])
            out.append((parts, False))
    out.sort()
    return tuple(out)


def block_splits(block: Sequence[int], k: int) -> Iterator[tuple[tuple[Block, ...], bool]]:
    """Splits of ``block`` into k interval or near-interval parts.

    Yields (parts, is_interval); there are C(len(block), k) of them for k >= 2.
    """
    for pos_parts, is_interval in _split_patterns(len(block), k):
        yield tuple(tuple(block[i] for i in part) for part in pos_parts), is_interval


def set_partitions(ground: int | Iterable[int]) -> Iterator[tuple[Block, ...]]:
    """All set partitions of ``ground`` in canonical form (restricted growth order)."""
    ground = _as_ground(ground)

    def rec(i, blocks):
        if i == len(ground):
            yield tuple(tuple(b) for b in blocks)
            return
        x = ground[i]
        for b in blocks:
            b.append(x)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([x])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def noncrossing_partitions(ground: int | Iterable[int]) -> Iterator[NCPartition]:
    ground = _as_ground(ground)
    for blocks in set_partitions(ground):
        if is_noncrossing(blocks):
            yield NCPartition._trusted(ground, canonical_blocks(blocks))


def interval_partitions(ground: int | Iterable[int]) -> Iterator[NCPartition]:
    ground = _as_ground(ground)
    m = len(ground)
    for k in range(1, m + 1):
        for cuts in combinations(range(1, m), k - 1):
            bounds = (0,) + cuts + (m,)
            blocks = tuple(ground[bounds[i]:bounds[i + 1]] for i in range(k))
            yield NCPartition._trusted(ground, blocks)


def lower_covers(p: NCPartition) -> Iterator[tuple[NCPartition, bool]]:
    """Partitions covered by ``p`` (one block split in two), with an interval flag."""
    for block in p.blocks:
        if len(block) < 2:
            continue
        rest = [b for b in p.blocks if b != block]
        for parts, is_interval in block_splits(block, 2):
            yield NCPartition._trusted(p.ground, canonical_blocks(rest + list(parts))), is_interval
