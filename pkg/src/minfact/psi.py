"""The merge map Psi: N(a) -> N(a') together with its bar statistic.

Psi fuses the last two steps of a chain. Writing P = pi_{r-1} and
Q = pi_{r-2}, each of ten structural cases prescribes a target partition
S = sigma(Q) (an interval or near-interval partition of [n]) and a bar
position in {1..n}. The permutation sigma is increasing on every block of Q;
it is built from a "layout": the elements of Q listed in the order in which
they are sent to 1, 2, ..., n.

Bar convention: bar = i sits just left of i (between i-1 and i), read in
the picture of S.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .chains import Chain, FactorizationType
from .ncpart import NCPartition, Shape, shape_of, split_kind, split_step
from .perm import Permutation

Block = tuple[int, ...]


# ---------------------------------------------------------------------------
# constructors


def shift(p: NCPartition, i: int) -> NCPartition:
    """All labels moved up by i."""
    if i < 0:
        raise ValueError("shift must be nonnegative")
    return NCPartition._trusted(tuple(x + i for x in p.ground), tuple(tuple(x + i for x in b) for b in p.blocks))


def one_block(m: int) -> NCPartition:
    return NCPartition.top(m)


def _standard(p) -> NCPartition:
    if isinstance(p, int):
        return one_block(p)
    return p


def oplus(p: NCPartition | int, q: NCPartition | int) -> NCPartition:
    """p on {1..j} followed by q shifted past j."""
    p, q = _standard(p), _standard(q)
    if not p.is_standard():
        raise ValueError("left operand must live on {1..j}")
    j = len(p.ground)
    q = shift(q, j - q.ground[0] + 1) if q.ground[0] != j + 1 else q
    if not q.ground == tuple(range(j + 1, j + 1 + len(q.ground))):
        raise ValueError("right operand must be standard")
    return NCPartition._trusted(p.ground + q.ground, p.blocks + q.blocks)


def concat(*parts) -> NCPartition:
    out = _standard(parts[0])
    for p in parts[1:]:
        out = oplus(out, p)
    return out


def wrap(i: int, j: int, p: NCPartition | int) -> NCPartition:
    """{1..i} u {n-j+1..n} as one block around p shifted by i; n = i + j + |p|."""
    p = _standard(p)
    if i < 1 or j < 1:
        raise ValueError("wrap needs i, j >= 1")
    m = len(p.ground)
    n = i + j + m
    outer = tuple(range(1, i + 1)) + tuple(range(n - j + 1, n + 1))
    inner = shift(p, i - p.ground[0] + 1)
    return NCPartition.from_blocks((outer,) + inner.blocks, range(1, n + 1))


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class CaseTag:
    case_id: int
    params: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"case": self.case_id, "params": self.params}


@dataclass(frozen=True)
class PsiResult:
    gamma: Chain
    bar: int
    sigma: Permutation
    case: CaseTag

    def to_json(self) -> dict:
        return {
            "case": self.case.case_id,
            "params": self.case.params,
            "gamma": self.gamma.to_json(),
            "bar": self.bar,
            "sigma": self.sigma.to_json(),
        }


# ---------------------------------------------------------------------------
# helpers on partitions of [n]


def _runs(block: Sequence[int], n: int) -> tuple[int, int]:
    """Lengths of the initial run 1..x and final run y..n of a wrapping block."""
    lead = 0
    while lead < len(block) and block[lead] == lead + 1:
        lead += 1
    trail = 0
    while trail < len(block) and block[-1 - trail] == n - trail:
        trail += 1
    return lead, trail


def _lead_trail(block: Sequence[int]) -> tuple[int, int]:
    """Initial and final run lengths of a block that wraps inside its own hull."""
    lead = 1
    while block[lead] == block[lead - 1] + 1:
        lead += 1
    trail = 1
    while block[-1 - trail] == block[-trail] - 1:
        trail += 1
    return lead, trail


def _flat(blocks) -> list[int]:
    return [x for b in blocks for x in b]


def _sizes(blocks) -> list[int]:
    return [len(b) for b in blocks]


def _sigma_from_layout(layout: Sequence[int]) -> Permutation:
    images = [0] * len(layout)
    for pos, x in enumerate(layout, start=1):
        images[x - 1] = pos
    return Permutation(tuple(images))


def _apply(sigma: Permutation, p: NCPartition) -> NCPartition:
    return NCPartition.from_blocks([[sigma(x) for x in b] for b in p.blocks], p.ground)


# ---------------------------------------------------------------------------
# forward


def _analyze(P: NCPartition, Q: NCPartition) -> tuple[CaseTag, list[int], object]:
    """Case, layout and bar rule for the top two partitions.

    The bar rule is an int (a position) or ("img", x) meaning sigma(x).
    """
    n = len(P.ground)
    B, parts = split_step(Q, P)
    parts = tuple(sorted(parts))
    p_shape = shape_of(P.ground, P.blocks)
    s_shape = split_kind(parts)
    identity = list(range(1, n + 1))

    if p_shape is Shape.INTERVAL:
        if s_shape is Shape.INTERVAL:
            return CaseTag(1, {"B": list(B)}), identity, B[0]
        s, t = B[0], B[-1]
        D = parts[0]
        b, c = _lead_trail(D)
        K = parts[1:]
        I = [blk for blk in P.blocks if blk[-1] < s]
        J = [blk for blk in P.blocks if blk[0] > t]
        layout = list(D[:b]) + _flat(I) + _flat(K) + _flat(J) + list(D[-c:])
        bar = ("img", I[-1][0]) if I else 1
        tag = CaseTag(5, {"I": _sizes(I), "a": len(B), "b": b, "c": c, "K": _sizes(K), "J": _sizes(J)})
        return tag, layout, bar

    if p_shape is not Shape.NEAR_INTERVAL:
        raise AssertionError(f"top split {P} is neither interval nor near-interval")

    W = P.blocks[0]
    a, b = _runs(W, n)
    M = list(P.blocks[1:])
    right0 = n - b + 1

    if B == W:
        if s_shape is Shape.INTERVAL:
            straddle = [blk for blk in parts if a in blk and right0 in blk]
            if not straddle:
                return CaseTag(2, {"a": a, "b": b, "I": _sizes(M)}), identity, right0
            D = straddle[0]
            a2 = sum(1 for x in D if x <= a)
            b2 = len(D) - a2
            J = [blk for blk in parts if blk[-1] <= a and blk != D]
            K = [blk for blk in parts if blk[0] >= right0 and blk != D]
            layout = _flat(J) + _flat(M) + list(D) + _flat(K)
            tag = CaseTag(4, {"a": a, "b": b, "a'": a2, "b'": b2, "I": _sizes(M), "J": _sizes(J), "K": _sizes(K)})
            return tag, layout, ("img", right0)
        if s_shape is not Shape.NEAR_INTERVAL:
            raise AssertionError(f"split of {B} is neither interval nor near-interval")
        Cq = parts[0]
        pos = {x: k for k, x in enumerate(W)}
        lead, trail = _lead_trail([pos[x] for x in Cq])
        middle = list(parts[1:])
        if lead > a:
            # C = [1..a] u [n-b+1 .. n-b+x] u [n-trail+1 .. n]
            x = lead - a
            layout = list(range(1, a + 1)) + _flat(M) + _flat(middle) + list(Cq[a:])
            tag = CaseTag(10, {"a": a, "b": x, "c": trail, "I": _sizes(M), "J": _sizes(middle)})
            return tag, layout, n - trail + 1
        if trail > b:
            y = trail - b
            second = list(Cq[lead:lead + y])
            layout = list(Cq[:lead]) + second + _flat(middle) + _flat(M) + list(range(right0, n + 1))
            tag = CaseTag(9, {"a": lead, "b": y, "c": b, "I": _sizes(middle), "J": _sizes(M)})
            return tag, layout, lead + 1
        straddle = [blk for blk in middle if a in blk and right0 in blk]
        J = [blk for blk in middle if blk[-1] <= a]
        K = [blk for blk in middle if blk[0] >= right0]
        if not straddle:
            tag = CaseTag(6, {"a": a, "b": b, "a'": lead, "b'": trail, "I": _sizes(M), "J": _sizes(J), "K": _sizes(K)})
            return tag, identity, right0
        D = straddle[0]
        d = sum(1 for x in D if x <= a)
        layout = list(Cq[:lead]) + _flat(J) + _flat(M) + list(D) + _flat(K) + list(Cq[lead:])
        tag = CaseTag(8, {"a": a, "b": b, "a'": lead, "b'": trail, "d": d, "e": len(D) - d,
                          "I": _sizes(M), "J": _sizes(J), "K": _sizes(K)})
        return tag, layout, ("img", right0)

    # B is an inner (interval) block of P
    s, t = B[0], B[-1]
    I = [blk for blk in M if blk[-1] < s]
    J = [blk for blk in M if blk[0] > t]
    if s_shape is Shape.INTERVAL:
        layout = _flat(I) + list(W) + _flat(parts) + _flat(J)
        tag = CaseTag(3, {"a": a, "b": b, "c": len(B), "I": _sizes(I), "K": _sizes(parts), "J": _sizes(J)})
        return tag, layout, s
    if s_shape is not Shape.NEAR_INTERVAL:
        raise AssertionError(f"split of {B} is neither interval nor near-interval")
    D = parts[0]
    d, e = _lead_trail(D)
    K = parts[1:]
    layout = list(W[:a]) + _flat(I) + list(D) + _flat(J) + _flat(K) + list(W[a:])
    tag = CaseTag(7, {"a": a, "b": b, "d": d, "e": e, "I": _sizes(I), "K": _sizes(K), "J": _sizes(J)})
    return tag, layout, ("img", D[-e])


def _forward_top(P: NCPartition, Q: NCPartition) -> tuple[CaseTag, Permutation, int]:
    tag, layout, bar_rule = _analyze(P, Q)
    sigma = _sigma_from_layout(layout)
    for blk in Q.blocks:
        imgs = [sigma(x) for x in blk]
        if imgs != sorted(imgs):
            raise AssertionError(f"case {tag.case_id}: sigma not increasing on {blk}")
    bar = sigma(bar_rule[1]) if isinstance(bar_rule, tuple) else bar_rule
    return tag, sigma, bar


def classify_case(chain: Chain) -> CaseTag:
    """Which of the ten cases applies to the top two steps of ``chain``."""
    if chain.r < 2:
        raise ValueError("need r >= 2")
    ps = chain.partitions
    tag, _, _ = _analyze(ps[-2], ps[-3])
    return tag


def psi(chain: Chain) -> PsiResult:
    """(Psi(chain), bar): Psi(chain) in N(a') and bar in {1..n}."""
    if chain.r < 2:
        raise ValueError("need r >= 2")
    ps = chain.partitions
    tag, sigma, bar = _forward_top(ps[-2], ps[-3])
    n = chain.n
    lower = [_apply(sigma, p) for p in ps[:-2]]
    S = lower[-1]
    if shape_of(S.ground, S.blocks) is Shape.OTHER:
        raise AssertionError(f"case {tag.case_id}: sigma(Q) = {S} is not (near) interval")
    gamma = Chain(tuple(lower) + (NCPartition.top(n),))
    return PsiResult(gamma, bar, sigma, tag)


# ---------------------------------------------------------------------------
# inverse


def _reconstruct(S: NCPartition, bar: int, A: int) -> tuple[int, list[int], list[Block]]:
    """From sigma(Q), the bar and a_{r-1}: (case, layout listing S-elements in
    Q-order, S-blocks whose preimages merge into the split block of P)."""
    n = len(S.ground)
    blocks = list(S.blocks)
    m = len(blocks)
    owner = {x: blk for blk in blocks for x in blk}
    inside = bar >= 2 and owner[bar] is owner[bar - 1]
    identity = list(range(1, n + 1))

    if shape_of(S.ground, S.blocks) is Shape.INTERVAL:
        if not inside:
            j = next(k for k, blk in enumerate(blocks) if blk[0] == bar)
            R = m - j
            if R >= A:
                return 1, identity, blocks[j:j + A]
            return 2, identity, blocks[:A - R] + blocks[j:]
        j = blocks.index(owner[bar])
        D = blocks[j]
        R = m - j - 1
        cut = bar - D[0]
        if R >= A:
            I, K, J = blocks[:j], blocks[j + 1:j + 1 + A], blocks[j + 1 + A:]
            layout = list(D[:cut]) + _flat(I) + _flat(K) + _flat(J) + list(D[cut:])
            return 3, layout, K
        nJ = A - 1 - R
        J, I, K = blocks[:nJ], blocks[nJ:j], blocks[j + 1:]
        layout = _flat(J) + list(D[:cut]) + _flat(I) + list(D[cut:]) + _flat(K)
        return 4, layout, J + [D] + K

    Wr = blocks[0]
    alpha, gamma = _runs(Wr, n)
    inner = blocks[1:]
    if inside and owner[bar] is Wr:
        if bar <= alpha:
            a_ = bar - 1
            I, J = inner[:A - 1], inner[A - 1:]
            layout = list(Wr[:a_]) + _flat(I) + list(Wr[a_:alpha]) + _flat(J) + list(Wr[alpha:])
            return 9, layout, [Wr] + I
        c_ = n - bar + 1
        b_ = gamma - c_
        split = len(inner) - (A - 1)
        I, J = inner[:split], inner[split:]
        layout = list(Wr[:alpha]) + _flat(I) + list(Wr[alpha:alpha + b_]) + _flat(J) + list(Wr[alpha + b_:])
        return 10, layout, [Wr] + J
    if inside:
        j = inner.index(owner[bar])
        D = inner[j]
        R = len(inner) - j - 1
        cut = bar - D[0]
        if R >= A - 1:
            # S = (a,b) wrap (I + (d+e) + J + K) with K the last a_{r-1} - 1 blocks
            tail = len(inner) - (A - 1)
            I, J, K = inner[:j], inner[j + 1:tail], inner[tail:]
            layout = list(Wr[:alpha]) + _flat(I) + list(D[:cut]) + _flat(K) + list(D[cut:]) + _flat(J) + list(Wr[alpha:])
            return 7, layout, [D] + K
        nJ = A - 2 - R
        J, I, K = inner[:nJ], inner[nJ:j], inner[j + 1:]
        layout = list(Wr[:alpha]) + _flat(J) + list(D[:cut]) + _flat(I) + list(D[cut:]) + _flat(K) + list(Wr[alpha:])
        return 8, layout, [Wr] + J + [D] + K
    R = m if bar == 1 else sum(1 for blk in inner if blk[0] >= bar)
    if R >= A:
        j = 0 if bar == 1 else next(k for k, blk in enumerate(inner) if blk[0] == bar) + 1
        I, K, J = inner[:j], inner[j:j + A - 1], inner[j + A - 1:]
        layout = _flat(I) + list(Wr[:alpha]) + _flat(K) + list(Wr[alpha:]) + _flat(J)
        return 5, layout, [Wr] + K
    nJ = A - 1 - R
    return 6, identity, [Wr] + inner[:nJ] + inner[len(inner) - R:]


def psi_inverse(gamma: Chain, bar: int, a: FactorizationType | Sequence[int]) -> Chain:
    """The unique chain Pi in N(a) with psi(Pi) = (gamma, bar)."""
    a = a if isinstance(a, FactorizationType) else FactorizationType(tuple(a))
    n = gamma.n
    if a.r < 2:
        raise ValueError("need r >= 2")
    if gamma.r != a.r - 1 or n != a.n:
        raise ValueError("gamma does not live in N(a')")
    if not 1 <= bar <= n:
        raise ValueError(f"bar must lie in 1..{n}")
    S = gamma.partitions[-2]
    case, layout, merged = _reconstruct(S, bar, a.parts[-2])
    # layout[k] is the S-element whose preimage is k + 1
    inv = [0] * n
    for pos, x in enumerate(layout, start=1):
        inv[x - 1] = pos
    sigma_inv = Permutation(tuple(inv))
    Q = _apply(sigma_inv, S)
    merged_set = {sigma_inv(x) for blk in merged for x in blk}
    rest = [blk for blk in Q.blocks if not merged_set.issuperset(blk)]
    P = NCPartition.from_blocks(rest + [sorted(merged_set)], Q.ground)
    lower = [_apply(sigma_inv, p) for p in gamma.partitions[:-2]]
    return Chain(tuple(lower) + (Q, P, NCPartition.top(n)))


# ---------------------------------------------------------------------------
# case templates built from the constructors, independent of _analyze


def _comps(m: int, min_parts: int = 0) -> list[tuple[int, ...]]:
    """Compositions of m (the empty one for m = 0)."""
    if m == 0:
        return [()] if min_parts == 0 else []
    out = []
    for k in range(1, m + 1):
        for cuts in combinations(range(1, m), k - 1):
            bounds = (0,) + cuts + (m,)
            out.append(tuple(bounds[i + 1] - bounds[i] for i in range(k)))
    return [c for c in out if len(c) >= min_parts]


def _ip(sizes: Sequence[int]):
    return concat(*sizes) if sizes else None


def _cat(*parts):
    parts = [p for p in parts if p is not None and p != ()]
    return concat(*parts) if parts else None


def case_templates(n: int, A: int, a_r: int) -> dict[int, set[tuple[NCPartition, NCPartition]]]:
    """For each case, every (pi_{r-1}, pi_{r-2}) its template produces on [n]
    with a_{r-1} = A and a_r blocks in pi_{r-1}."""
    out: dict[int, set] = {c: set() for c in range(1, 11)}

    def add(case, P, Q):
        if len(P.blocks) == a_r and len(Q.blocks) == a_r + A - 1:
            out[case].add((P, Q))

    for pre in range(0, n):
        for c in range(1, n - pre + 1):
            post = n - pre - c
            for I in _comps(pre):
                for J in _comps(post):
                    # 1: I + c + J over I + K + J
                    for K in _comps(c, A):
                        if len(K) == A:
                            add(1, _cat(_ip(I), c, _ip(J)), _cat(_ip(I), _ip(K), _ip(J)))
                    # 5: I + c + J over I + ((b, e) wrap K) + J
                    for b in range(1, c):
                        for e in range(1, c - b):
                            for K in _comps(c - b - e):
                                if len(K) == A - 1:
                                    add(5, _cat(_ip(I), c, _ip(J)), _cat(_ip(I), wrap(b, e, _ip(K)), _ip(J)))

    for a in range(1, n):
        for b in range(1, n - a):
            m = n - a - b
            for I in _comps(m, 1):
                P = wrap(a, b, _ip(I))
                # 2: Q interval, cut at the gap
                for J1 in _comps(a, 1):
                    for J2 in _comps(b, 1):
                        if len(J1) + len(J2) == A:
                            add(2, P, _cat(_ip(J1), _ip(I), _ip(J2)))
                for a2 in range(1, a + 1):
                    for b2 in range(1, b + 1):
                        for J in _comps(a - a2):
                            for K in _comps(b - b2):
                                # 4 and 6
                                if len(J) + 1 + len(K) == A:
                                    add(4, P, _cat(_ip(J), wrap(a2, b2, _ip(I)), _ip(K)))
                                    add(6, P, wrap(a2, b2, _cat(_ip(J), _ip(I), _ip(K))))
                        # 8: J + (d, e) wrap I + K inside the outer wrap
                        for d in range(1, a - a2 + 1):
                            for e in range(1, b - b2 + 1):
                                for J in _comps(a - a2 - d):
                                    for K in _comps(b - b2 - e):
                                        if len(J) + len(K) + 2 == A:
                                            inner = _cat(_ip(J), wrap(d, e, _ip(I)), _ip(K))
                                            add(8, P, wrap(a2, b2, inner))
            # 3 and 7: the split block is an inner interval
            for pre in range(0, m):
                for c in range(1, m - pre + 1):
                    post = m - pre - c
                    for I in _comps(pre):
                        for J in _comps(post):
                            P = wrap(a, b, _cat(_ip(I), c, _ip(J)))
                            for K in _comps(c, A):
                                if len(K) == A:
                                    add(3, P, wrap(a, b, _cat(_ip(I), _ip(K), _ip(J))))
                            for d in range(1, c):
                                for e in range(1, c - d):
                                    for K in _comps(c - d - e):
                                        if len(K) == A - 1:
                                            Q = wrap(a, b, _cat(_ip(I), wrap(d, e, _ip(K)), _ip(J)))
                                            add(7, P, Q)

    # 9 and 10: a block made of three intervals with groups I and J between them
    for x in range(1, n):
        for y in range(1, n):
            for z in range(1, n):
                rest = n - x - y - z
                for i_size in range(1, rest):
                    j_size = rest - i_size
                    for I in _comps(i_size, 1):
                        for J in _comps(j_size, 1):
                            Ib = shift(_ip(I), x)
                            Jb = shift(_ip(J), x + i_size + y)
                            C = tuple(range(1, x + 1)) + tuple(range(x + i_size + 1, x + i_size + y + 1)) + tuple(range(n - z + 1, n + 1))
                            Q = NCPartition.from_blocks((C,) + Ib.blocks + Jb.blocks, range(1, n + 1))
                            if len(I) == A - 1:
                                add(9, wrap(x + i_size + y, z, _ip(J)), Q)
                            if len(J) == A - 1:
                                add(10, wrap(x, y + j_size + z, _ip(I)), Q)
    return out
