"""Time maximal-chain enumeration and weighted sums for growing n."""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from minfact.chains import FactorizationType, enumerate_weighted_chains, weighted_sum
from minfact.poly import Polynomial, theorem1_rhs


@dataclass
class TimingConfig:
    n_min: int = 4
    n_max: int = 8
    parallel: int = 1


def main(cfg: TimingConfig) -> None:
    print(f"{'n':>3}{'chains':>10}{'objects s':>11}{'fast s':>9}  match")
    for n in range(cfg.n_min, cfg.n_max + 1):
        a = FactorizationType.transpositions(n)
        t0 = time.perf_counter()
        counts = Counter(m for _, m in enumerate_weighted_chains(a))
        t1 = time.perf_counter()
        fast = weighted_sum(a, parallel=cfg.parallel)
        t2 = time.perf_counter()
        match = Polynomial(dict(counts)) == fast == theorem1_rhs(a)
        print(f"{n:>3}{sum(counts.values()):>10}{t1 - t0:>11.2f}{t2 - t1:>9.2f}  {match}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--parallel", type=int, default=1)
    args = ap.parse_args()
    main(TimingConfig(args.n_min, args.n_max, args.parallel))
