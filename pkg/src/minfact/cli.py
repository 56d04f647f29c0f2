"""Command-line front end.

    minfact enumerate {chains|factorizations|andre|cayley|final} ...
    minfact wsum {chains|andre|cayley|final} ...
    minfact psi --chain JSON
    minfact verify [--all | --check NAME ...] [--max-n N]
    minfact export [--max-n N]

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import verify
from .chains import (
    Chain,
    FactorizationType,
    compositions,
    default_workers,
    enumerate_chains,
    enumerate_factorizations,
    enumerate_final_chains,
    final_chain_weight,
    final_weighted_sum,
    weight,
    weighted_sum,
)
from .poly import Polynomial, cayley_rhs, final_chain_rhs, hook_rhs, theorem1_rhs
from .psi import psi
from .trees import andre_weight, andre_weighted_sum, cayley_weight, cayley_weighted_sum, enumerate_andre, enumerate_cayley

OBJECTS = ("chains", "factorizations", "andre", "cayley", "final")
SUMS = ("chains", "andre", "cayley", "final")


class UsageError(Exception):
    pass


@dataclass
class Config:
    command: str
    kind: str | None = None
    a: FactorizationType | None = None
    n: int | None = None
    k: int | None = None
    fmt: str = "text"
    output: Path | None = None
    parallel: int = 1
    max_n: int = verify.DEFAULT_MAX_N
    checks: list[str] | None = None
    chain: str | None = None
    timing: bool = False
    extra: dict = field(default_factory=dict)


def max_n_cap() -> int:
    raw = os.environ.get("MINFACT_MAX_N", "9")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"MINFACT_MAX_N must be an integer, got {raw!r}") from None


def _parse_type(text: str) -> FactorizationType:
    try:
        return FactorizationType.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default=None)
    common.add_argument("--output", "-o", type=Path, help="write here instead of stdout")
    common.add_argument("--parallel", type=int, default=None, help="worker processes (default: all cores)")

    parser = argparse.ArgumentParser(prog="minfact", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list objects one per line")
    p.add_argument("kind", choices=OBJECTS)
    _size_args(p)

    p = sub.add_parser("wsum", parents=[common], help="weighted sum as a polynomial")
    p.add_argument("kind", choices=SUMS)
    _size_args(p)

    p = sub.add_parser("psi", parents=[common], help="apply the merging bijection to a chain")
    p.add_argument("--chain", required=True, help="chain JSON, or @path to a file holding it")

    p = sub.add_parser("verify", parents=[common], help="run the check battery")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="every check (the default)")
    g.add_argument("--check", action="append", choices=sorted(verify.CHECKS), help="repeatable")
    p.add_argument("--max-n", type=int, default=verify.DEFAULT_MAX_N)
    p.add_argument("--timing", action="store_true", help="include seconds per report")

    p = sub.add_parser("export", parents=[common], help="chain counts per type as CSV")
    p.add_argument("--max-n", type=int, default=verify.DEFAULT_MAX_N)
    return parser


def _size_args(p):
    p.add_argument("--a", type=_parse_type, help="factorization type, e.g. 2,3,2")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)


def to_config(ns: argparse.Namespace) -> Config:
    cfg = Config(command=ns.command)
    cfg.kind = getattr(ns, "kind", None)
    cfg.a = getattr(ns, "a", None)
    cfg.n = getattr(ns, "n", None)
    cfg.k = getattr(ns, "k", None)
    cfg.output = ns.output
    cfg.parallel = ns.parallel if ns.parallel is not None else default_workers()
    if cfg.parallel < 1:
        raise UsageError("--parallel must be at least 1")
    default_fmt = {"verify": "json", "export": "csv"}.get(cfg.command, "text")
    cfg.fmt = ns.fmt or default_fmt
    cfg.max_n = getattr(ns, "max_n", cfg.max_n)
    cfg.checks = getattr(ns, "check", None)
    cfg.chain = getattr(ns, "chain", None)
    cfg.timing = getattr(ns, "timing", False)
    _validate(cfg)
    return cfg


def _validate(cfg: Config) -> None:
    cap = max_n_cap()
    if cfg.command in ("enumerate", "wsum"):
        if cfg.kind in ("chains", "factorizations"):
            if cfg.a is None:
                if cfg.n is None:
                    raise UsageError(f"{cfg.kind} needs --a (or --n for transpositions)")
                if cfg.n < 2:
                    raise UsageError("--n must be at least 2")
                cfg.a = FactorizationType.transpositions(cfg.n)
            cfg.n = cfg.a.n
        else:
            if cfg.n is None:
                raise UsageError(f"{cfg.kind} needs --n")
            low = 2 if cfg.kind in ("cayley", "final") else 1
            if cfg.n < low:
                raise UsageError(f"--n must be at least {low}")
            if cfg.kind == "final":
                if cfg.k is None or not 2 <= cfg.k <= cfg.n:
                    raise UsageError("final needs --k with 2 <= k <= n")
        if cfg.n > cap:
            raise UsageError(f"n = {cfg.n} exceeds MINFACT_MAX_N = {cap}")
    if cfg.command in ("verify", "export"):
        if cfg.max_n < 1:
            raise UsageError("--max-n must be positive")
        if cfg.max_n > cap:
            raise UsageError(f"--max-n {cfg.max_n} exceeds MINFACT_MAX_N = {cap}")


# ---------------------------------------------------------------------------
# commands; each returns (rows or lines, exit code)


def _emit_records(cfg: Config, records, out) -> None:
    """records: iterable of (json dict, text line, csv row dict)."""
    writer = None
    for js, text, row in records:
        if cfg.fmt == "json":
            out.write(json.dumps(js, sort_keys=True) + "\n")
        elif cfg.fmt == "text":
            out.write(text + "\n")
        else:
            if writer is None:
                writer = csv.DictWriter(out, fieldnames=list(row), lineterminator="\n")
                writer.writeheader()
            writer.writerow(row)


def cmd_enumerate(cfg: Config, out) -> int:
    kind = cfg.kind
    if kind == "chains":
        def records():
            for i, ch in enumerate(enumerate_chains(cfg.a)):
                w = str(weight(ch))
                js = ch.to_json()
                js["weight"] = w
                yield js, f"{ch}  [{w}]", {"index": i, "chain": str(ch), "weight": w}
    elif kind == "factorizations":
        def records():
            for i, f in enumerate(enumerate_factorizations(cfg.a)):
                yield f.to_json(), str(f), {"index": i, "factors": str(f)}
    elif kind == "andre":
        def records():
            for i, t in enumerate(enumerate_andre(cfg.n)):
                w = str(andre_weight(t))
                js = t.to_json()
                js["weight"] = w
                yield js, f"{t}  [{w}]", {"index": i, "tree": str(t), "weight": w}
    elif kind == "cayley":
        def records():
            for i, t in enumerate(enumerate_cayley(cfg.n)):
                w = str(cayley_weight(t))
                js = t.to_json()
                js["weight"] = w
                par = " ".join(map(str, t.parent))
                yield js, f"{par}  [{w}]", {"index": i, "parent": par, "weight": w}
    else:
        def records():
            for i, fc in enumerate(enumerate_final_chains(cfg.n, cfg.k)):
                w = str(final_chain_weight(fc))
                js = fc.to_json()
                js["weight"] = w
                text = " < ".join(str(p) for p in fc.partitions)
                yield js, f"{text}  [{w}]", {"index": i, "chain": text, "weight": w}
    _emit_records(cfg, records(), out)
    return 0


def compute_wsum(cfg: Config) -> tuple[Polynomial, Polynomial, dict]:
    if cfg.kind == "chains":
        return weighted_sum(cfg.a, parallel=cfg.parallel), theorem1_rhs(cfg.a), {"a": list(cfg.a.parts), "n": cfg.n}
    if cfg.kind == "andre":
        return andre_weighted_sum(cfg.n), hook_rhs(cfg.n), {"n": cfg.n}
    if cfg.kind == "cayley":
        return cayley_weighted_sum(cfg.n), cayley_rhs(cfg.n), {"n": cfg.n}
    return final_weighted_sum(cfg.n, cfg.k), final_chain_rhs(cfg.n, cfg.k), {"n": cfg.n, "k": cfg.k}


def cmd_wsum(cfg: Config, out) -> int:
    lhs, rhs, params = compute_wsum(cfg)
    match = lhs == rhs
    js = {"kind": cfg.kind, "parameters": params, "sum": lhs.to_json(), "formula": rhs.to_json(),
          "match": match, "text": str(lhs)}
    row = {"kind": cfg.kind, "parameters": json.dumps(params, sort_keys=True), "sum": str(lhs),
           "formula": str(rhs), "match": match}
    _emit_records(cfg, [(js, str(lhs), row)], out)
    return 0


def _load_json_arg(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--chain is not valid JSON: {exc}") from None


def cmd_psi(cfg: Config, out) -> int:
    data = _load_json_arg(cfg.chain)
    try:
        chain = Chain.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"--chain is not a valid chain: {exc}") from None
    if chain.r < 2:
        raise UsageError("psi needs a chain with r >= 2")
    if chain.n > max_n_cap():
        raise UsageError(f"n = {chain.n} exceeds MINFACT_MAX_N")
    res = psi(chain)
    text = f"case {res.case.case_id}  bar {res.bar}  gamma {res.gamma}"
    row = {"case": res.case.case_id, "bar": res.bar, "gamma": str(res.gamma), "sigma": str(res.sigma)}
    _emit_records(cfg, [(res.to_json(), text, row)], out)
    return 0


def cmd_verify(cfg: Config, out) -> int:
    failed = False

    def records():
        nonlocal failed
        for rep in verify.run_battery(cfg.checks, cfg.max_n, cfg.parallel):
            failed |= not rep.passed
            js = rep.to_json(timing=cfg.timing)
            params = json.dumps(rep.parameters, sort_keys=True)
            text = f"{rep.status.upper()}  {rep.check_name}  {params}"
            if cfg.timing:
                text += f"  {rep.seconds:.3f}s"
            row = {"check": rep.check_name, "parameters": params, "status": rep.status,
                   "witness": json.dumps(rep.witness, sort_keys=True) if rep.witness is not None else ""}
            yield js, text, row

    _emit_records(cfg, records(), out)
    return 1 if failed else 0


def export_rows(max_n: int, parallel: int = 1):
    for n in range(2, max_n + 1):
        for a in compositions(n):
            count = weighted_sum(a, parallel=parallel).evaluate(1)
            formula = n ** (a.r - 1)
            yield {"n": n, "r": a.r, "a": str(a), "count": count, "formula_count": formula,
                   "match": count == formula}


def cmd_export(cfg: Config, out) -> int:
    bad = False

    def records():
        nonlocal bad
        for row in export_rows(cfg.max_n, cfg.parallel):
            bad |= not row["match"]
            text = " ".join(f"{k}={v}" for k, v in row.items())
            yield row, text, row

    _emit_records(cfg, records(), out)
    return 1 if bad else 0


COMMANDS = {"enumerate": cmd_enumerate, "wsum": cmd_wsum, "psi": cmd_psi, "verify": cmd_verify, "export": cmd_export}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = to_config(ns)
        if cfg.output is not None:
            buf = io.StringIO()
            code = COMMANDS[cfg.command](cfg, buf)
            cfg.output.write_text(buf.getvalue())
            return code
        return COMMANDS[cfg.command](cfg, sys.stdout)
    except UsageError as exc:
        print(f"minfact: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
