"""Run the full check battery and summarize it per check."""

import argparse
import json
import time
from collections import defaultdict
from dataclasses import dataclass

from minfact.chains import default_workers
from minfact.verify import DEFAULT_MAX_N, run_battery


@dataclass
class BatteryConfig:
    max_n: int = DEFAULT_MAX_N
    parallel: int = 1
    jsonl: str | None = None


def main(cfg: BatteryConfig) -> int:
    t0 = time.perf_counter()
    stats = defaultdict(lambda: [0, 0, 0.0])
    sink = open(cfg.jsonl, "w") if cfg.jsonl else None
    for rep in run_battery(None, cfg.max_n, cfg.parallel):
        s = stats[rep.check_name]
        s[0] += 1
        s[1] += rep.passed
        s[2] += rep.seconds
        if sink:
            sink.write(json.dumps(rep.to_json(timing=True), sort_keys=True) + "\n")
        if not rep.passed:
            print("FAIL", json.dumps(rep.to_json()))
    if sink:
        sink.close()
    print(f"{'check':<18}{'runs':>6}{'passed':>8}{'seconds':>10}")
    for name, (runs, ok, secs) in stats.items():
        print(f"{name:<18}{runs:>6}{ok:>8}{secs:>10.2f}")
    print(f"wall time {time.perf_counter() - t0:.1f} s")
    return 0 if all(ok == runs for runs, ok, _ in stats.values()) else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    ap.add_argument("--parallel", type=int, default=default_workers())
    ap.add_argument("--jsonl", help="also write every report here")
    args = ap.parse_args()
    raise SystemExit(main(BatteryConfig(args.max_n, args.parallel, args.jsonl)))
