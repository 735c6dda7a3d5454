"""Command line: ``lfpwhile run | fuel-scan | check``.

Exit codes: 0 converged or all properties pass, 1 usage or parse error,
2 budget exhausted, 3 a property has a counterexample.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .fixpoint import DEFAULT_BUDGET, Converged
from .imp import MachineState, ParseError, execute, parse, run_fuel
from .linked_list import chain_memory, head, parse_chain
from .order import BOTTOM
from .suites import SUITES, RunConfig, run_suite

EXIT_OK, EXIT_USAGE, EXIT_EXHAUSTED, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _default_budget() -> int:
    raw = os.environ.get("LFPWHILE_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"LFPWHILE_BUDGET must be an integer, got {raw!r}") from None


def parse_memory(text: str) -> dict:
    """``"5:7,7:0"`` -> ``{5: 7, 7: 0}``."""
    mem = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        addr, sep, val = item.partition(":")
        if not sep:
            raise UsageError(f"memory entry {item!r} is not of the form addr:value")
        try:
            mem[int(addr)] = int(val)
        except ValueError:
            raise UsageError(f"memory entry {item!r} is not numeric") from None
    return mem


def _program(args):
    if (args.program is None) == (args.file is None):
        raise UsageError("give exactly one of --program and --file")
    if args.program is not None:
        return parse(args.program)
    try:
        with open(args.file, encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read {args.file}: {e.strerror}") from None


def _state(args) -> MachineState:
    mem = parse_memory(args.mem) if args.mem else {}
    reg1 = args.reg1
    if args.chain is not None:
        try:
            spec = parse_chain(args.chain)
        except ValueError as e:
            raise UsageError(str(e)) from None
        mem.update(chain_memory(spec))
        if reg1 is None:
            reg1 = head(spec)
    try:
        return MachineState(reg1 or 0, args.reg2, mem)
    except (TypeError, ValueError) as e:
        raise UsageError(str(e)) from None


def _state_dict(s: MachineState) -> dict:
    return {"reg1": s.reg1, "reg2": s.reg2, "memory": {str(a): v for a, v in s.mem.items()}}


def _emit(args, payload: dict, text: str):
    if args.output == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_run(args) -> int:
    stmt = _program(args)
    s = _state(args)
    budget = args.budget if args.budget is not None else _default_budget()
    if budget < 1:
        raise UsageError("--budget must be at least 1")
    out = execute(stmt, budget, s)
    if isinstance(out, Converged):
        value, final = out.value
        _emit(args, {"status": "converged", "value": list(value) if isinstance(value, tuple) else value,
                     "state": _state_dict(final), "fuel": out.fuel_used},
              f"Converged fuel={out.fuel_used} {final!r}")
        return EXIT_OK
    _emit(args, {"status": "exhausted", "budget": out.budget}, f"Exhausted budget={out.budget}")
    return EXIT_EXHAUSTED


def cmd_fuel_scan(args) -> int:
    stmt = _program(args)
    s = _state(args)
    if args.max_fuel < 0:
        raise UsageError("--max-fuel must be non-negative")
    rows = []
    for n in range(args.max_fuel + 1):
        r = run_fuel(stmt, n, s)
        rows.append((n, r))
    if args.output == "json":
        print(json.dumps({"rows": [
            {"fuel": n, "result": "bottom"} if r is BOTTOM
            else {"fuel": n, "result": "defined", "state": _state_dict(r.value[1])}
            for n, r in rows]}, sort_keys=True))
    else:
        for n, r in rows:
            print(f"{n}\t" + ("Bottom" if r is BOTTOM else f"Defined {r.value[1]!r}"))
    return EXIT_OK


def _config(args) -> RunConfig:
    budget = args.budget if args.budget is not None else _default_budget()
    try:
        return RunConfig(budget=budget, reg_bound=args.reg_bound, addr_bound=args.addr_bound,
                         val_bound=args.val_bound, seed=args.seed, memories=args.memories)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_check(args) -> int:
    cfg = _config(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    records = []
    for name in names:
        for r in run_suite(name, cfg, args.mutate):
            d = r.to_dict()
            records.append({"suite": name, **d})
    failed = any(r["status"] != "pass" for r in records)
    if args.output == "json":
        print(json.dumps({"results": records, "status": "fail" if failed else "pass"}, sort_keys=True))
    else:
        for r in records:
            line = f"{r['status'].upper():4}  {r['suite']:18} {r['property']}  ({r['states_checked']} checked)"
            if r["status"] != "pass" and r.get("witness") is not None:
                line += f"\n      witness: {r['witness']}"
            print(line)
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def _add_program_flags(p):
    p.add_argument("--program", help="program text")
    p.add_argument("--file", help="file holding the program text (UTF-8)")
    p.add_argument("--reg1", type=int, default=None, help="initial reg1 (default 0, or the chain head)")
    p.add_argument("--reg2", type=int, default=0)
    p.add_argument("--mem", help='initial memory as "addr:value,..."')
    p.add_argument("--chain", help='linked list laid out in memory, e.g. "5,7,9"')


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lfpwhile", description=__doc__.splitlines()[0])
    ap.add_argument("--output", choices=["text", "json"], default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a program")
    _add_program_flags(run)
    run.add_argument("--budget", type=int, default=None)
    run.set_defaults(func=cmd_run)

    scan = sub.add_parser("fuel-scan", help="print the fuel-n approximants of a program")
    _add_program_flags(scan)
    scan.add_argument("--max-fuel", type=int, default=10)
    scan.set_defaults(func=cmd_fuel_scan)

    check = sub.add_parser("check", help="run a property suite")
    check.add_argument("suite", choices=[*SUITES, "all"])
    check.add_argument("--mutate", action="store_true", help="run known-bad variants")
    check.add_argument("--budget", type=int, default=None)
    check.add_argument("--reg-bound", type=int, default=8)
    check.add_argument("--addr-bound", type=int, default=12)
    check.add_argument("--val-bound", type=int, default=12)
    check.add_argument("--memories", type=int, default=12, help="structured memories per universe")
    check.add_argument("--seed", type=int, default=0)
    check.set_defaults(func=cmd_check)

    for p in (run, scan, check):
        p.add_argument("--output", choices=["text", "json"], default=argparse.SUPPRESS)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
