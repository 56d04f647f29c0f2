"""Chains of noncrossing partitions, minimal factorizations of the long cycle,
the bijection between them and their weights.

Weight convention: the variable X_i (1 <= i <= r-1) marks the step between
pi_i and pi_{i+1} when the split of the block of pi_{i+1} is near-interval.
The first step (pi_0 -> pi_1) always splits a block into singletons, so it
never carries a variable.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .ncpart import (
    NCPartition,
    Shape,
    block_splits,
    from_geodesic_permutation,
    refines,
    split_kind,
    split_step,
    to_permutation,
)
from .perm import Permutation, compose, cycle_of, long_cycle
from .poly import Monomial, Polynomial

RawPartition = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FactorizationType:
    """Cycle lengths (a_1, ..., a_r), each >= 2, with sum(a_i - 1) = n - 1."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts or any(not isinstance(x, int) or x < 2 for x in parts):
            raise ValueError(f"invalid type {parts}: parts must be integers >= 2")

    @classmethod
    def of(cls, *parts) -> FactorizationType:
        if len(parts) == 1 and not isinstance(parts[0], int):
            parts = tuple(parts[0])
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> FactorizationType:
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    @classmethod
    def transpositions(cls, n: int) -> FactorizationType:
        """(2, ..., 2) with n - 1 twos."""
        if n < 2:
            raise ValueError("need n >= 2")
        return cls((2,) * (n - 1))

    @property
    def n(self) -> int:
        return sum(x - 1 for x in self.parts) + 1

    @property
    def r(self) -> int:
        return len(self.parts)

    def b(self, i: int) -> int:
        """b_i = sum_{j <= i} (a_j - 1)."""
        return sum(x - 1 for x in self.parts[:i])

    def fused(self) -> FactorizationType:
        """(a_1, ..., a_{r-2}, a_{r-1} + a_r - 1)."""
        if self.r < 2:
            raise ValueError("need r >= 2")
        return FactorizationType(self.parts[:-2] + (self.parts[-2] + self.parts[-1] - 1,))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))


def compositions(n: int) -> Iterator[FactorizationType]:
    """All types for the long cycle of S_n, i.e. compositions of n-1 shifted by one.

    There are 2^(n-2) of them for n >= 2.
    """
    if n < 2:
        return
    m = n - 1
    for k in range(1, m + 1):
        for cuts in combinations(range(1, m), k - 1):
            bounds = (0,) + cuts + (m,)
            yield FactorizationType(tuple(bounds[i + 1] - bounds[i] + 1 for i in range(k)))


@dataclass(frozen=True)
class Chain:
    """(pi_0, ..., pi_r) in NC_n with pi_0 the bottom and pi_r the top."""

    partitions: tuple[NCPartition, ...]

    @property
    def n(self) -> int:
        return len(self.partitions[0].ground)

    @property
    def r(self) -> int:
        return len(self.partitions) - 1

    @property
    def type(self) -> FactorizationType:
        ps = self.partitions
        return FactorizationType(
            tuple(len(ps[i - 1].blocks) - len(ps[i].blocks) + 1 for i in range(1, len(ps)))
        )

    def step_shapes(self) -> list[Shape]:
        """Shape of the split at step i (pi_{i-1} below pi_i), for i = 1..r."""
        out = []
        for lo, hi in zip(self.partitions, self.partitions[1:]):
            _, parts = split_step(lo, hi)
            out.append(split_kind(parts))
        return out

    def validate(self, a: FactorizationType | None = None) -> None:
        """Raise ValueError unless this chain lies in N(a)."""
        ps = self.partitions
        n = self.n
        if ps[0] != NCPartition.bottom(n) or ps[-1] != NCPartition.top(n):
            raise ValueError("chain must run from the bottom to the top of NC_n")
        shapes = self.step_shapes()
        if Shape.OTHER in shapes:
            raise ValueError("a step splits a block into a non (near) interval partition")
        if a is not None and self.type != a:
            raise ValueError(f"chain has type {self.type}, expected {a}")

    def to_json(self) -> dict:
        a = self.type
        return {"a": list(a.parts), "n": self.n, "chain": [p.to_json() for p in self.partitions]}

    @classmethod
    def from_json(cls, data: dict) -> Chain:
        chain = cls(tuple(NCPartition.from_json(p) for p in data["chain"]))
        chain.validate(FactorizationType(tuple(data["a"])) if "a" in data else None)
        if "n" in data and data["n"] != chain.n:
            raise ValueError("'n' does not match the chain")
        return chain

    def __str__(self):
        return " < ".join(str(p) for p in self.partitions)


@dataclass(frozen=True)
class Factorization:
    """c = z_1 * ... * z_r with each z_i a cycle and sum(|z_i| - 1) = n - 1."""

    factors: tuple[Permutation, ...]

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise ValueError("empty factorization")
        n = factors[0].n
        total = Permutation.identity(n)
        for z in factors:
            if cycle_of(z) is None:
                raise ValueError(f"factor {z} is not a cycle")
            total = compose(total, z)
        if total != long_cycle(n):
            raise ValueError("factors do not multiply to the long cycle")
        if sum(len(cycle_of(z)) - 1 for z in factors) != n - 1:
            raise ValueError("factorization is not minimal")

    @property
    def n(self) -> int:
        return self.factors[0].n

    @property
    def type(self) -> FactorizationType:
        return FactorizationType(tuple(len(cycle_of(z)) for z in self.factors))

    def to_json(self) -> dict:
        return {"a": list(self.type.parts), "n": self.n, "factors": [z.to_json() for z in self.factors]}

    def __str__(self):
        return " ".join(str(z) for z in self.factors)


@dataclass(frozen=True)
class FinalChain:
    """(pi_{n-k}, ..., pi_{n-1}): a saturated chain of length k ending at the top."""

    partitions: tuple[NCPartition, ...]

    @property
    def n(self) -> int:
        return len(self.partitions[0].ground)

    @property
    def k(self) -> int:
        return len(self.partitions)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "chain": [p.to_json() for p in self.partitions]}


# ---------------------------------------------------------------------------
# enumeration of N(a)


def _split(current: RawPartition, index: int, parts) -> RawPartition:
    # minima are distinct, so plain tuple sort orders blocks by minimum
    return tuple(sorted(current[:index] + current[index + 1:] + parts))


def _top_choices(a: FactorizationType) -> list[tuple[RawPartition, bool]]:
    top = tuple(range(1, a.n + 1))
    return [(tuple(parts), is_int) for parts, is_int in block_splits(top, a.parts[-1])]


def _walk(a: FactorizationType, top_indices: Sequence[int] | None = None) -> Iterator[tuple[list[RawPartition], int]]:
    """Depth-first over N(a), top down. Yields (path, mask) with path[i] = pi_i.

    Bit i of ``mask`` stands for X_i. The path list is reused; copy it to keep.
    """
    parts = a.parts
    r = len(parts)
    path: list[RawPartition] = [()] * (r + 1)
    path[r] = (tuple(range(1, a.n + 1)),)

    def rec(i, current, mask):
        # split a block of pi_i = current into a_i parts to get pi_{i-1}
        if i == 0:
            yield path, mask
            return
        k = parts[i - 1]
        for idx, block in enumerate(current):
            if len(block) < k:
                continue
            for split, is_int in block_splits(block, k):
                nxt = _split(current, idx, split)
                path[i - 1] = nxt
                yield from rec(i - 1, nxt, mask if is_int else mask | (1 << (i - 1)))

    choices = _top_choices(a)
    indices = range(len(choices)) if top_indices is None else top_indices
    for t in indices:
        split, is_int = choices[t]
        path[r - 1] = split
        yield from rec(r - 1, split, 0 if is_int else 1 << (r - 1))


def _to_chain(n: int, path: Sequence[RawPartition], cache: dict | None = None) -> Chain:
    ground = tuple(range(1, n + 1))
    if cache is None:
        return Chain(tuple(NCPartition._trusted(ground, p) for p in path))
    # NC_n is small next to N(a), so partitions repeat across chains: share them
    out = []
    for p in path:
        obj = cache.get(p)
        if obj is None:
            obj = cache[p] = NCPartition._trusted(ground, p)
        out.append(obj)
    return Chain(tuple(out))


def enumerate_chains(a: FactorizationType | Sequence[int]) -> Iterator[Chain]:
    """Every element of N(a), once, in a fixed top-down lexicographic order."""
    for chain, _ in enumerate_weighted_chains(a):
        yield chain


def enumerate_weighted_chains(a: FactorizationType | Sequence[int]) -> Iterator[tuple[Chain, Monomial]]:
    """Like enumerate_chains, paired with each chain's weight."""
    a = a if isinstance(a, FactorizationType) else FactorizationType(tuple(a))
    cache: dict = {}
    monos: dict[int, Monomial] = {}
    for path, mask in _walk(a):
        m = monos.get(mask)
        if m is None:
            m = monos[mask] = Monomial.from_vars(i for i in range(mask.bit_length()) if mask >> i & 1)
        yield _to_chain(a.n, path, cache), m


def count_chains(a: FactorizationType | Sequence[int]) -> int:
    a = a if isinstance(a, FactorizationType) else FactorizationType(tuple(a))
    return sum(1 for _ in _walk(a))


def _mask_counts(a: FactorizationType, top_indices: Sequence[int] | None = None) -> Counter:
    """Number of chains per weight mask; the non-generator twin of _walk."""
    parts = a.parts
    r = len(parts)
    counts: Counter = Counter()

    def rec(i, current, mask):
        k = parts[i - 1]
        if i == 1:
            # last step: a block of size exactly a_1 splits into singletons
            hits = sum(1 for block in current if len(block) == k)
            if hits:
                counts[mask] += hits
            return
        for idx, block in enumerate(current):
            if len(block) < k:
                continue
            for split, is_int in block_splits(block, k):
                rec(i - 1, _split(current, idx, split), mask if is_int else mask | (1 << (i - 1)))

    choices = _top_choices(a)
    indices = range(len(choices)) if top_indices is None else top_indices
    for t in indices:
        split, is_int = choices[t]
        mask = 0 if is_int else 1 << (r - 1)
        if r == 1:
            counts[0] += 1
        else:
            rec(r - 1, split, mask)
    return counts


def _mask_counts_job(args):
    parts, indices = args
    return _mask_counts(FactorizationType(parts), indices)


def _mask_poly(counts: Counter) -> Polynomial:
    terms = {}
    for mask, c in counts.items():
        mono = Monomial.from_vars(i for i in range(mask.bit_length()) if mask >> i & 1)
        terms[mono] = c
    return Polynomial(terms)


def default_workers() -> int:
    return os.cpu_count() or 1


def weighted_sum(a: FactorizationType | Sequence[int], parallel: int = 1) -> Polynomial:
    """Sum of wt(Pi) over N(a), by exhaustive enumeration.

    With ``parallel > 1`` the first split is distributed over worker processes;
    the result is identical to the serial one.
    """
    a = a if isinstance(a, FactorizationType) else FactorizationType(tuple(a))
    if parallel <= 1 or a.r == 1:
        return _mask_poly(_mask_counts(a))
    n_top = len(_top_choices(a))
    jobs = [(a.parts, list(range(w, n_top, parallel))) for w in range(parallel)]
    total: Counter = Counter()
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        for counts in pool.map(_mask_counts_job, jobs):
            total.update(counts)
    return _mask_poly(total)


def weight(chain: Chain) -> Monomial:
    """Product of X_i over the steps pi_i -> pi_{i+1} (1 <= i <= r-1) that are not interval splits."""
    shapes = chain.step_shapes()
    # shapes[i] is the step from pi_i to pi_{i+1}
    return Monomial.from_vars(i for i in range(1, chain.r) if shapes[i] is not Shape.INTERVAL)


def weighted_sum_by_objects(a: FactorizationType | Sequence[int]) -> Polynomial:
    """Slow reference: build every Chain object and add up weight()."""
    counts: Counter = Counter(weight(ch) for ch in enumerate_chains(a))
    return Polynomial(dict(counts))


# ---------------------------------------------------------------------------
# chains <-> factorizations


def chain_to_factorization(chain: Chain) -> Factorization:
    """z_i = sigma_{pi_{i-1}}^{-1} sigma_{pi_i}."""
    sig = [to_permutation(p) for p in chain.partitions]
    return Factorization(tuple(compose(lo.inverse(), hi) for lo, hi in zip(sig, sig[1:])))


def factorization_to_chain(f: Factorization | Sequence[Permutation]) -> Chain:
    """pi_i = orbit partition of z_1 ... z_i."""
    factors = f.factors if isinstance(f, Factorization) else tuple(f)
    n = factors[0].n
    prefix = Permutation.identity(n)
    parts = [NCPartition.bottom(n)]
    for z in factors:
        prefix = compose(prefix, z)
        p = from_geodesic_permutation(prefix, n)
        if p is None:
            raise ValueError(f"prefix {prefix} is off the geodesic: factorization not minimal")
        parts.append(p)
    return Chain(tuple(parts))


def enumerate_factorizations(a: FactorizationType | Sequence[int]) -> Iterator[Factorization]:
    for chain in enumerate_chains(a):
        yield chain_to_factorization(chain)


# ---------------------------------------------------------------------------
# final chains


def _final_walk(n: int, k: int):
    """Yields (path, mask); path[j] has rank n-1-j, bit i of mask is X_i."""
    path: list[RawPartition] = [()] * k
    path[0] = (tuple(range(1, n + 1)),)

    def rec(j, current, mask):
        if j == k - 1:
            yield path, mask
            return
        lower_rank = n - 2 - j
        for idx, block in enumerate(current):
            if len(block) < 2:
                continue
            for split, is_int in block_splits(block, 2):
                nxt = _split(current, idx, split)
                path[j + 1] = nxt
                yield from rec(j + 1, nxt, mask if is_int else mask | (1 << lower_rank))

    yield from rec(0, path[0], 0)


def enumerate_final_chains(n: int, k: int) -> Iterator[FinalChain]:
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got n={n}, k={k}")
    ground = tuple(range(1, n + 1))
    for path, _ in _final_walk(n, k):
        yield FinalChain(tuple(NCPartition._trusted(ground, p) for p in reversed(path)))


def final_chain_weight(fc: FinalChain) -> Monomial:
    """X_i for each non-interval cover pi_i < pi_{i+1}, n-k <= i <= n-2."""
    n = fc.n
    out = []
    for j, (lo, hi) in enumerate(zip(fc.partitions, fc.partitions[1:])):
        _, parts = split_step(lo, hi)
        if split_kind(parts) is not Shape.INTERVAL:
            out.append(n - fc.k + j)
    return Monomial.from_vars(out)


def final_weighted_sum(n: int, k: int) -> Polynomial:
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got n={n}, k={k}")
    counts: Counter = Counter(mask for _, mask in _final_walk(n, k))
    return _mask_poly(counts)


def interval_completions(p: NCPartition) -> int:
    """Number of saturated chains bottom = rho_0 < ... < rho_m = p using only interval covers."""

    def rec(blocks):
        total = 0
        found = False
        for idx, block in enumerate(blocks):
            if len(block) < 2:
                continue
            for split, is_int in block_splits(block, 2):
                if is_int:
                    found = True
                    total += rec(_split(blocks, idx, split))
        return total if found else 1

    return rec(p.blocks)


def is_chain_in(chain: Chain, a: FactorizationType) -> bool:
    try:
        chain.validate(a)
    except ValueError:
        return False
    return all(refines(lo, hi) for lo, hi in zip(chain.partitions, chain.partitions[1:]))
