"""Exhaustive checks of every identity, bijection and lemma, with reports.

Each ``check_*`` function returns a CheckReport. A failing report carries a
JSON-ready witness that reproduces the failure when fed back to the module
under test. Polynomials are always compared exactly.
"""

from __future__ import annotations

import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product as cartesian
from math import comb, factorial
from typing import Callable, Iterator

from .chains import (
    Chain,
    Factorization,
    FactorizationType,
    chain_to_factorization,
    compositions,
    count_chains,
    enumerate_chains,
    enumerate_final_chains,
    factorization_to_chain,
    final_chain_weight,
    final_weighted_sum,
    interval_completions,
    weight,
    weighted_sum,
)
from .ncpart import (
    NCPartition,
    Shape,
    classify_shape,
    is_noncrossing,
    noncrossing_partitions,
    refines,
    set_partitions,
    shape_of,
    split_block,
    split_kind,
    to_permutation,
)
from .perm import (
    Permutation,
    all_permutations,
    compose,
    cycle_of,
    cycles_of_length,
    length,
    long_cycle,
)
from .poly import Monomial, Polynomial, cayley_rhs, final_chain_rhs, hook_rhs, theorem1_rhs
from .psi import case_templates, psi, psi_inverse
from .trees import (
    andre_weight,
    cayley_weighted_sum,
    check_hook_recursion,
    count_alternating,
    enumerate_andre,
    hook_poly_by_recursion,
)


@dataclass
class CheckReport:
    check_name: str
    parameters: dict
    status: str = "pass"
    witness: object = None
    counts: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, witness) -> CheckReport:
        self.status = "fail"
        if self.witness is None:
            self.witness = witness
        return self

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "check": self.check_name,
            "parameters": self.parameters,
            "status": self.status,
            "counts": self.counts,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - t0
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _as_type(a) -> FactorizationType:
    return a if isinstance(a, FactorizationType) else FactorizationType(tuple(a))


# ---------------------------------------------------------------------------
# chains: product formula and counting


@_timed
def check_theorem1(a) -> CheckReport:
    """Weighted sum over N(a) equals prod (b_i X_i + n - b_i)."""
    a = _as_type(a)
    rep = CheckReport("theorem1", {"a": list(a.parts), "n": a.n})
    lhs, rhs = weighted_sum(a), theorem1_rhs(a)
    rep.counts = {"chains": lhs.evaluate(1), "terms": len(lhs.terms)}
    if lhs != rhs:
        rep.fail({"lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return rep


@_timed
def check_counts(a) -> CheckReport:
    """|N(a)| = n^(r-1); X = 0 counts the all-interval chains."""
    a = _as_type(a)
    n, r = a.n, a.r
    rep = CheckReport("counts", {"a": list(a.parts), "n": n})
    total = 0
    all_interval = 0
    for ch in enumerate_chains(a):
        total += 1
        if all(s is Shape.INTERVAL for s in ch.step_shapes()):
            all_interval += 1
    ws = weighted_sum(a)
    rep.counts = {"chains": total, "interval_chains": all_interval}
    if total != n ** (r - 1) or ws.evaluate(1) != total:
        rep.fail({"chains": total, "expected": n ** (r - 1)})
    if ws.evaluate(0) != all_interval:
        rep.fail({"interval_chains": all_interval, "at_zero": ws.evaluate(0)})
    if set(a.parts) == {2} and all_interval != factorial(n - 1):
        rep.fail({"interval_chains": all_interval, "expected": factorial(n - 1)})
    return rep


def brute_force_factorizations(a) -> set[tuple[Permutation, ...]]:
    """All (z_1..z_r) with z_i an a_i-cycle and z_1...z_r = c, by search over cycle tuples."""
    a = _as_type(a)
    n = a.n
    c = long_cycle(n)
    pools = [list(cycles_of_length(n, k)) for k in a.parts[:-1]]
    out = set()
    for head in cartesian(*pools):
        prefix = Permutation.identity(n)
        for z in head:
            prefix = compose(prefix, z)
        last = compose(prefix.inverse(), c)
        cyc = cycle_of(last)
        if cyc is not None and len(cyc) == a.parts[-1]:
            out.add(tuple(head) + (last,))
    return out


@_timed
def check_bijection(a) -> CheckReport:
    """Chains <-> minimal factorizations against a brute-force search."""
    a = _as_type(a)
    rep = CheckReport("bijection", {"a": list(a.parts), "n": a.n})
    image = set()
    for ch in enumerate_chains(a):
        f = chain_to_factorization(ch)
        if factorization_to_chain(f) != ch:
            return rep.fail({"chain": ch.to_json()})
        image.add(f.factors)
    oracle = brute_force_factorizations(a)
    rep.counts = {"chains": len(image), "factorizations": len(oracle)}
    if image != oracle:
        missing = sorted(oracle - image, key=str)[:1] or sorted(image - oracle, key=str)[:1]
        rep.fail({"factorization": [z.to_json() for z in missing[0]]})
    for f in oracle:
        if chain_to_factorization(factorization_to_chain(Factorization(f))).factors != f:
            return rep.fail({"factorization": [z.to_json() for z in f]})
    return rep


# ---------------------------------------------------------------------------
# Psi


@_timed
def check_psi(a) -> CheckReport:
    """(Psi, bar) is a bijection N(a) -> N(a') x [n] with the fiber weight relation."""
    a = _as_type(a)
    n, r = a.n, a.r
    a_r = a.parts[-1]
    rep = CheckReport("psi", {"a": list(a.parts), "n": n})
    templates = case_templates(n, a.parts[-2], a_r)
    fibers: dict[Chain, dict[int, Chain]] = defaultdict(dict)
    case_counts = defaultdict(int)
    for ch in enumerate_chains(a):
        res = psi(ch)
        top = (ch.partitions[-2], ch.partitions[-3])
        hits = [c for c, pairs in templates.items() if top in pairs]
        if hits != [res.case.case_id]:
            return rep.fail({"chain": ch.to_json(), "templates": hits, "case": res.case.case_id})
        case_counts[res.case.case_id] += 1
        if res.bar in fibers[res.gamma]:
            return rep.fail({"chain": ch.to_json(), "collides_with": fibers[res.gamma][res.bar].to_json()})
        fibers[res.gamma][res.bar] = ch
        if psi_inverse(res.gamma, res.bar, a) != ch:
            return rep.fail({"chain": ch.to_json(), "bar": res.bar})
        # lower steps keep their interval status
        wt_pi, wt_gamma = set(weight(ch).variables()), set(weight(res.gamma).variables())
        if {i for i in wt_pi if i <= r - 2} != wt_gamma:
            return rep.fail({"chain": ch.to_json(), "weight_mismatch": True})

    factor = Polynomial.linear(r - 1, n - a_r, a_r)
    gammas = 0
    for gamma in enumerate_chains(a.fused()):
        gammas += 1
        fib = fibers.get(gamma, {})
        if sorted(fib) != list(range(1, n + 1)):
            return rep.fail({"gamma": gamma.to_json(), "bars": sorted(fib)})
        for bar in range(1, n + 1):
            back = psi(psi_inverse(gamma, bar, a))
            if back.gamma != gamma or back.bar != bar:
                return rep.fail({"gamma": gamma.to_json(), "bar": bar})
        fiber_sum = Polynomial()
        interval_bars = 0
        for ch in fib.values():
            fiber_sum = fiber_sum + weight(ch)
            if classify_shape(ch.partitions[-2]) is Shape.INTERVAL:
                interval_bars += 1
        if fiber_sum != Polynomial.from_monomial(weight(gamma)) * factor:
            return rep.fail({"gamma": gamma.to_json(), "fiber_sum": fiber_sum.to_json()})
        if interval_bars != a_r:
            return rep.fail({"gamma": gamma.to_json(), "interval_bars": interval_bars})
    rep.counts = {"chains": sum(case_counts.values()), "gammas": gammas,
                  "cases": {str(c): case_counts[c] for c in sorted(case_counts)}}
    return rep


# ---------------------------------------------------------------------------
# trees


@_timed
def check_hook(n: int) -> CheckReport:
    rep = CheckReport("hook", {"n": n})
    total = Polynomial()
    count = 0
    for t in enumerate_andre(n):
        total = total + andre_weight(t)
        count += 1
    rep.counts = {"trees": count}
    if total != hook_rhs(n):
        rep.fail({"lhs": total.to_json(), "rhs": hook_rhs(n).to_json()})
    return rep


@_timed
def check_andre_counts(n: int) -> CheckReport:
    rep = CheckReport("andre_counts", {"n": n})
    trees = sum(1 for _ in enumerate_andre(n))
    alt = count_alternating(n)
    rep.counts = {"trees": trees, "alternating": alt}
    if trees != alt:
        rep.fail({"trees": trees, "alternating": alt})
    return rep


@_timed
def check_recursion(n: int) -> CheckReport:
    rep = CheckReport("recursion", {"n": n})
    rep.counts = {"splits": 2 ** (n - 1)}
    if not check_hook_recursion(n):
        rep.fail({"recursion": hook_poly_by_recursion(n).to_json()})
    elif 0 in hook_poly_by_recursion(n).variables():
        rep.fail({"X0_present": True})
    return rep


@_timed
def check_cayley(n: int) -> CheckReport:
    rep = CheckReport("cayley", {"n": n})
    lhs = cayley_weighted_sum(n)
    rep.counts = {"trees": lhs.evaluate(1)}
    if lhs != cayley_rhs(n) or lhs.evaluate(1) != n ** (n - 2):
        rep.fail({"lhs": lhs.to_json()})
    elif n >= 2 and lhs != weighted_sum(FactorizationType.transpositions(n)):
        rep.fail({"chain_sum_differs": True})
    return rep


# ---------------------------------------------------------------------------
# final chains and the interval-cover lemma


@_timed
def check_final_chains(n: int, k: int) -> CheckReport:
    rep = CheckReport("final_chains", {"n": n, "k": k})
    fast = final_weighted_sum(n, k)
    slow = Polynomial()
    count = 0
    completions_ok = True
    for fc in enumerate_final_chains(n, k):
        count += 1
        slow = slow + final_chain_weight(fc)
        if n <= 6 and interval_completions(fc.partitions[0]) != factorial(n - k):
            completions_ok = False
            rep.fail({"final_chain": fc.to_json()})
    rhs = final_chain_rhs(n, k)
    rep.counts = {"chains": count}
    if count != n ** (k - 2) * comb(n, k):
        rep.fail({"count": count, "expected": n ** (k - 2) * comb(n, k)})
    if fast != slow or fast != rhs:
        rep.fail({"lhs": fast.to_json(), "rhs": rhs.to_json()})
    if completions_ok and n <= 6 and n >= 2:
        # maximal chains with an interval prefix up to rank n-k: X_i := 0 for i < n-k
        zeroed = weighted_sum(FactorizationType.transpositions(n)).specialize({i: 0 for i in range(1, n - k)})
        if zeroed != fast * factorial(n - k):
            rep.fail({"prefix_specialization": zeroed.to_json()})
    return rep


def _interval_lower_covers_brute(p: NCPartition) -> int:
    count = 0
    for block in p.blocks:
        rest = [b for b in p.blocks if b != block]
        for parts in set_partitions(block):
            if len(parts) != 2 or not is_noncrossing(rest + list(parts)):
                continue
            if split_kind(parts) is Shape.INTERVAL:
                count += 1
    return count


@_timed
def check_lemma_des(n: int) -> CheckReport:
    """Each pi in NC_n of rank r has exactly r interval lower covers."""
    rep = CheckReport("lemma_des", {"n": n})
    seen = 0
    for p in noncrossing_partitions(n):
        seen += 1
        got = _interval_lower_covers_brute(p)
        if got != p.rank:
            return rep.fail({"partition": p.to_json(), "covers": got})
    rep.counts = {"partitions": seen}
    return rep


# ---------------------------------------------------------------------------
# geodesics in the symmetric group


def _bfs_lengths(n: int) -> dict[Permutation, int]:
    from collections import deque

    ident = Permutation.identity(n)
    gens = [Permutation.from_cycles(n, (i, j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    dist = {ident: 0}
    queue = deque([ident])
    while queue:
        s = queue.popleft()
        for t in gens:
            u = compose(s, t)
            if u not in dist:
                dist[u] = dist[s] + 1
                queue.append(u)
    return dist


@_timed
def check_geodesic_lemmas(n: int) -> CheckReport:
    """Length = Cayley distance, geodesic and order characterizations, cycle-factor shapes."""
    rep = CheckReport("geodesic_lemmas", {"n": n})
    perms = list(all_permutations(n))
    c = long_cycle(n)
    dist = _bfs_lengths(n)
    for s in perms:
        if dist[s] != length(s):
            return rep.fail({"perm": s.to_json(), "bfs": dist[s]})

    # metric axioms via a multiplication table
    index = {s: i for i, s in enumerate(perms)}
    inv = [index[s.inverse()] for s in perms]
    lens = [length(s) for s in perms]
    table = [[index[compose(s, t)] for t in perms] for s in perms]
    d = [[lens[table[i][inv[j]]] for j in range(len(perms))] for i in range(len(perms))]
    for i in range(len(perms)):
        di = d[i]
        if lens[inv[i]] != lens[i]:
            return rep.fail({"perm": perms[i].to_json(), "inverse_length": lens[inv[i]]})
        for j in range(len(perms)):
            dij = di[j]
            if dij != d[j][i]:
                return rep.fail({"pair": [perms[i].to_json(), perms[j].to_json()]})
            dj = d[j]
            for k in range(len(perms)):
                if di[k] > dij + dj[k]:
                    return rep.fail({"triple": [perms[x].to_json() for x in (i, j, k)]})

    # geodesic characterization of the embedding
    nc = list(noncrossing_partitions(n))
    embedded = {to_permutation(p): p for p in nc}
    geodesic = {s for s in perms if length(s) + length(compose(c, s.inverse())) == n - 1}
    if set(embedded) != geodesic or len(embedded) != len(nc):
        return rep.fail({"geodesic": len(geodesic), "noncrossing": len(nc)})

    # order characterization
    for p in nc:
        sp = to_permutation(p)
        for q in nc:
            sq = to_permutation(q)
            geo = length(sq) == length(sp) + length(compose(sp.inverse(), sq))
            if geo != refines(p, q):
                return rep.fail({"p": p.to_json(), "q": q.to_json()})

    # a middle cycle factor of a geodesic factorization is increasing
    cycles = [z for k in range(2, n + 1) for z in cycles_of_length(n, k)]
    n_increasing = 0
    for a in perms:
        for z in cycles:
            b = compose(compose(z.inverse(), a.inverse()), c)
            if length(a) + length(z) + length(b) == n - 1:
                n_increasing += 1
                cyc = cycle_of(z)
                if sorted(cyc) != cyc:
                    return rep.fail({"a": a.to_json(), "z": z.to_json()})

    # c = y z minimal with z a cycle gives y = sigma of an (near) interval partition
    n_cofactor = 0
    for z in cycles:
        y = compose(c, z.inverse())
        if length(y) + length(z) == n - 1:
            n_cofactor += 1
            p = NCPartition.from_blocks(y.cycles(), range(1, n + 1)) if is_noncrossing(y.cycles()) else None
            if p is None or to_permutation(p) != y or classify_shape(p) is Shape.OTHER:
                return rep.fail({"y": y.to_json(), "z": z.to_json()})

    # a split gives a minimal cycle factorization iff its parts are (near) interval
    n_splits = 0
    for q in nc:
        sq = to_permutation(q)
        for block in q.blocks:
            for parts in set_partitions(block):
                if len(parts) < 2:
                    continue
                try:
                    p = split_block(q, block, parts)
                except ValueError:
                    continue
                n_splits += 1
                z = compose(to_permutation(p).inverse(), sq)
                cyc = cycle_of(z)
                minimal = cyc is not None and len(cyc) == len(parts) and length(sq) == length(to_permutation(p)) + length(z)
                if minimal != (split_kind(parts) is not Shape.OTHER):
                    return rep.fail({"q": q.to_json(), "parts": [list(x) for x in parts]})

    rep.counts = {"perms": len(perms), "noncrossing": len(nc), "increasing_cycles": n_increasing, "cofactor_shapes": n_cofactor, "split_checks": n_splits}
    return rep


# ---------------------------------------------------------------------------
# battery


# name -> (offset added to max_n, generator of argument tuples up to a bound)
def _types_up_to(bound, min_r=1):
    for n in range(2, bound + 1):
        for a in compositions(n):
            if a.r >= min_r:
                yield (a.parts,)


CHECKS: dict[str, tuple[Callable, int, Callable[[int], Iterator[tuple]]]] = {
    "theorem1": (check_theorem1, 0, lambda b: _types_up_to(b)),
    "counts": (check_counts, 0, lambda b: _types_up_to(b)),
    "bijection": (check_bijection, -1, lambda b: _types_up_to(b)),
    "psi": (check_psi, 0, lambda b: _types_up_to(b, min_r=2)),
    "hook": (check_hook, 0, lambda b: ((n,) for n in range(1, b + 1))),
    "andre_counts": (check_andre_counts, 0, lambda b: ((n,) for n in range(1, b + 1))),
    "recursion": (check_recursion, -1, lambda b: ((n,) for n in range(2, b + 1))),
    "final_chains": (check_final_chains, 0, lambda b: ((n, k) for n in range(2, b + 1) for k in range(2, n + 1))),
    "lemma_des": (check_lemma_des, 1, lambda b: ((n,) for n in range(1, b + 1))),
    "cayley": (check_cayley, 0, lambda b: ((n,) for n in range(2, b + 1))),
    "geodesic_lemmas": (check_geodesic_lemmas, -2, lambda b: ((n,) for n in range(1, b + 1))),
}

DEFAULT_MAX_N = 7


def plan(names=None, max_n: int = DEFAULT_MAX_N) -> list[tuple[str, tuple]]:
    names = list(CHECKS) if names is None else list(names)
    jobs = []
    for name in names:
        if name not in CHECKS:
            raise KeyError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
        _, offset, args = CHECKS[name]
        jobs.extend((name, tuple(arg)) for arg in args(max_n + offset))
    return jobs


def _run_job(job) -> CheckReport:
    name, args = job
    return CHECKS[name][0](*args)


def run_battery(names=None, max_n: int = DEFAULT_MAX_N, parallel: int = 1) -> Iterator[CheckReport]:
    """Reports in plan order; parallel execution does not change the order."""
    jobs = plan(names, max_n)
    if parallel <= 1:
        for job in jobs:
            yield _run_job(job)
        return
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        yield from pool.map(_run_job, jobs)


# one exhaustive pass covers both the bijection and the fiber relation
check_psi_bijection = check_psi
check_fiber_weights = check_psi
