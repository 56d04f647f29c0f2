"""How often each of the ten merge cases fires, per type, with the fiber check."""

import argparse
from collections import Counter
from dataclasses import dataclass

from minfact.chains import compositions, enumerate_chains
from minfact.psi import psi
from minfact.verify import check_psi


@dataclass
class CaseConfig:
    n: int = 6


def main(cfg: CaseConfig) -> int:
    header = "type".ljust(14) + "".join(f"{c:>7}" for c in range(1, 11)) + "  fibers"
    print(header)
    bad = 0
    for a in compositions(cfg.n):
        if a.r < 2:
            continue
        hist = Counter(psi(ch).case.case_id for ch in enumerate_chains(a))
        rep = check_psi(a)
        bad += not rep.passed
        print(str(a).ljust(14) + "".join(f"{hist[c]:>7}" for c in range(1, 11)) + f"  {rep.status}")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    raise SystemExit(main(CaseConfig(ap.parse_args().n)))
