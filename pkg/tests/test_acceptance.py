"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import os
import subprocess
import sys
import time
from collections import Counter

import pytest

from minfact import verify
from minfact.chains import FactorizationType, compositions, enumerate_weighted_chains, weighted_sum
from minfact.poly import Polynomial
from minfact.trees import AndreTree, andre_weight, enumerate_andre

X = Polynomial.var


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, text: str):
        with capsys.disabled():
            print(f"\n[criterion {number:>2}] {'PASS' if ok else 'FAIL'}  {text}")
        assert ok, text

    return emit


def _battery(name, max_n):
    t0 = time.perf_counter()
    reports = list(verify.run_battery([name], max_n))
    failed = [r.to_json() for r in reports if not r.passed]
    return reports, failed, time.perf_counter() - t0


def test_criterion_01_product_formula(report):
    reports, failed, secs = _battery("theorem1", 7)
    ok = not failed and len(reports) == sum(2 ** (n - 2) for n in range(2, 8)) and secs <= 60
    report(1, ok, f"weighted chain sums equal the product for {len(reports)} types, n <= 7, exact ({secs:.1f} s, limit 60 s)"
           + (f"; first failure {failed[0]}" if failed else ""))


def test_criterion_02_counting(report):
    reports, failed, secs = _battery("counts", 7)
    report(2, not failed, f"|N(a)| = n^(r-1) and X=0 counts interval chains ((n-1)! for transpositions), {len(reports)} types"
           + (f"; first failure {failed[0]}" if failed else ""))


def test_criterion_03_merge_bijection(report):
    reports, failed, secs = _battery("psi", 7)
    chains = sum(r.counts.get("chains", 0) for r in reports)
    ok = not failed and len(reports) == sum(2 ** (n - 2) - 1 for n in range(3, 8)) and secs <= 120
    report(3, ok, f"Psi bijective, both round trips, one case per input, fiber relation exact: "
           f"{len(reports)} types, {chains} chains ({secs:.1f} s, limit 120 s)"
           + (f"; first failure {failed[0]}" if failed else ""))


def test_criterion_04_hook_formula(report):
    reports, failed, _ = _battery("hook", 7)
    lin = Polynomial.linear
    figure = [
        ({1: 2, 2: 3, 3: 4}, lin(3, 3, 2) * lin(2, 2, 2) * lin(1, 1, 2)),
        ({1: 3, 2: 3, 3: 4}, lin(3, 3, 2) * lin(2, 2, 2)),
        ({1: 2, 2: 4, 3: 4}, lin(3, 3, 2) * lin(1, 1, 2)),
        ({1: 3, 2: 4, 3: 4}, lin(3, 3, 2) * lin(2, 1, 2)),
        ({1: 4, 2: 3, 3: 4}, lin(3, 3, 2) * lin(2, 1, 2)),
    ]
    trees = set(enumerate_andre(4))
    term_ok = len(trees) == 5 and all(
        AndreTree(4, tuple(p.items())) in trees and andre_weight(AndreTree(4, tuple(p.items()))) == term
        for p, term in figure
    )
    total_ok = sum((t for _, t in figure), Polynomial()) == (X(1) + 4) * (X(2, 2) + 3) * (X(3, 3) + 2)
    report(4, not failed and term_ok and total_ok,
           f"hook sums equal the product for n <= 7; n = 4 matches all five displayed terms tree by tree"
           + (f"; first failure {failed[0]}" if failed else ""))


def test_criterion_05_andre_counts(report):
    reports, failed, _ = _battery("andre_counts", 7)
    counts = [r.counts["trees"] for r in reports]
    ok = not failed and counts == [1, 1, 2, 5, 16, 61, 272]
    report(5, ok, f"Andre tree counts {counts} agree with the alternating-permutation counter")


def test_criterion_06_recursion(report):
    reports, failed, _ = _battery("recursion", 7)
    ns = [r.parameters["n"] for r in reports]
    report(6, not failed and ns == [2, 3, 4, 5, 6], f"2 P_n recursion exact for n = {ns[0]}..{ns[-1]}")


def test_criterion_07_final_chains_and_covers(report):
    finals, f_failed, _ = _battery("final_chains", 7)
    lemma, l_failed, _ = _battery("lemma_des", 7)
    sizes = {r.parameters["n"]: r.counts.get("partitions") for r in lemma}
    ok = (not f_failed and not l_failed and len(finals) == sum(n - 1 for n in range(2, 8))
          and sizes.get(8) == 1430)
    report(7, ok, f"final chain counts and sums exact for {len(finals)} (n, k) pairs, n <= 7; "
           f"interval lower covers = rank on all {sizes.get(8)} elements of NC_8"
           + (f"; first failure {(f_failed + l_failed)[0]}" if f_failed or l_failed else ""))


def test_criterion_08_cayley(report):
    reports, failed, _ = _battery("cayley", 7)
    trees = {r.parameters["n"]: r.counts["trees"] for r in reports}
    ok = not failed and trees.get(7) == 16807
    report(8, ok, f"Cayley tree sums equal the product and the transposition chain polynomial, n <= 7 "
           f"({trees.get(7)} trees at n = 7)")


def test_criterion_09_geodesics(report):
    reports, failed, _ = _battery("geodesic_lemmas", 7)
    last = reports[-1]
    ok = not failed and last.parameters["n"] == 5 and last.counts["perms"] == 120
    report(9, ok, f"length = Cayley distance, metric axioms, geodesic and order characterizations, "
           f"cycle-factor lemmas over all of S_n, n <= 5 ({last.counts})")


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "minfact", *args], capture_output=True, text=True,
                          env=dict(os.environ), check=False).stdout


def test_criterion_10_performance(report):
    a = FactorizationType.transpositions(8)
    t0 = time.perf_counter()
    counts = Counter(m for _, m in enumerate_weighted_chains(a))
    total = Polynomial(dict(counts))
    secs = time.perf_counter() - t0
    n_chains = sum(counts.values())
    fast = weighted_sum(a)
    serial = _cli("wsum", "chains", "--n", "8", "--parallel", "1", "--format", "json")
    parallel = _cli("wsum", "chains", "--n", "8", "--parallel", "4", "--format", "json")
    verify_serial = _cli("verify", "--check", "theorem1", "--max-n", "6", "--parallel", "1")
    verify_parallel = _cli("verify", "--check", "theorem1", "--max-n", "6", "--parallel", "3")
    stable = serial == parallel and bool(serial) and verify_serial == verify_parallel and bool(verify_serial)
    ok = n_chains == 8 ** 6 and total == fast and secs < 10 and stable
    report(10, ok, f"n = 8: {n_chains} chains built and weighted in {secs:.2f} s single-threaded (limit 10 s); "
           f"output byte-identical under --parallel: {stable}")
