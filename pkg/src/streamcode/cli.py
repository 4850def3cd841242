"""Command-line front end.

Exit codes: 0 success, 2 counterexample or decoding failure, 1 usage or
parameter error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import analysis, codec
from .allocation import allocation_table
from .core import ParameterError, SystemParams, achievable_rate
from .erasure import ErasurePattern, Model, NotCovered, periodic_pattern
from .partition import build_partition, worst_case_base_pattern

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _params(args, need_z=True) -> SystemParams:
    return SystemParams(c=args.c, d=args.d, z=args.z if need_z else 0, n=args.n)


def _rate(text: str, params: SystemParams) -> Fraction:
    if text == "auto":
        return achievable_rate(params)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"rate must be 'auto' or a rational like '13/6', got {text!r}") from None


def _emit(out, fmt: str, data: dict, human: str, rows: list[list] | None = None):
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    elif fmt == "csv":
        if rows is None:
            rows = [[k, v] for k, v in data.items() if not isinstance(v, (list, dict))]
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write(human if human.endswith("\n") else human + "\n")


def cmd_allocate(args, out) -> int:
    params = _params(args, need_z=False)
    table = allocation_table(params)
    rows = [["t", "message", "share"]]
    lines = [f"{'t':>4}  {'share':>6}  messages"]
    for step in table.steps:
        shown = step.active if args.all else step.real
        for k in shown:
            rows.append([step.t, k, str(step.share)])
        lines.append(f"{step.t:>4}  {str(step.share):>6}  " + " ".join(
            str(k) if 1 <= k <= params.n else f"({k})" for k in step.active))
    _emit(out, args.format, table.to_dict(), "\n".join(lines), rows)
    return EXIT_OK


def cmd_partition(args, out) -> int:
    params = _params(args, need_z=False)
    part = build_partition(params)
    rows = [["t", "i"]] + [[t, part.index_of(t)] for t in params.time_steps()]
    width = len(str(params.horizon))
    ts = " ".join(f"{t:>{width}}" for t in params.time_steps())
    idx = " ".join(f"{part.index_of(t):>{width}}" for t in params.time_steps())
    human = f"i: {idx}\nt: {ts}\n" + "".join(
        f"T({i}) = {{{', '.join(map(str, part[i]))}}}\n" for i in range(1, params.d + 1))
    data = part.to_dict()
    data["index"] = [part.index_of(t) for t in params.time_steps()]
    _emit(out, args.format, data, human, rows)
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    params = _params(args)
    report = analysis.theorem_bounds(params, Model.parse(args.model))
    data = report.to_dict()
    human = "\n".join(
        f"{key:<10} {data[key]}" + (f"  (~{float(Fraction(data[key])):.6g})" if key in ("upper", "gap") else "")
        for key in ("lower", "upper", "asymptotic", "gap")
    )
    _emit(out, args.format, data, human, [list(data.keys()), list(data.values())])
    return EXIT_OK


def cmd_lp(args, out) -> int:
    params = _params(args)
    res = analysis.solve_intrasession_lp(params, Model.parse(args.model), guard=args.guard)
    data = res.to_dict()
    rows = [["k", "t", "share"]] + [[a["k"], a["t"], a["share"]] for a in data["allocation"]]
    _emit(out, args.format, data, str(res.rate), rows)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    params = _params(args)
    rate = None if args.rate == "auto" else _rate(args.rate, params)
    verdict = analysis.verify_construction(params, Model.parse(args.model), rate, guard=args.guard)
    data = verdict.to_dict()
    if verdict.ok:
        human = f"ok: rate {verdict.rate} holds under {verdict.patterns_checked} admissible patterns"
    else:
        ce = verdict.counterexample
        human = (f"counterexample: erasing {{{ce.pattern.to_literal()}}} leaves message {ce.k} "
                 f"with {ce.received} < {verdict.rate}")
    flat = {k: v for k, v in data.items() if k != "counterexample"}
    _emit(out, args.format, data, human, [list(flat.keys()), list(flat.values())])
    return EXIT_OK if verdict.ok else EXIT_FAIL


def _pattern(text: str, params: SystemParams) -> ErasurePattern:
    if text == "worst":
        return worst_case_base_pattern(params)
    if text == "periodic":
        return periodic_pattern(params)
    if text == "none":
        return ErasurePattern()
    pattern = ErasurePattern.parse(text)
    if pattern.erased and pattern.erased[-1] > params.horizon:
        raise UsageError(f"pattern step {pattern.erased[-1]} is past the horizon {params.horizon}")
    return pattern


def cmd_simulate(args, out) -> int:
    params = _params(args)
    rate = _rate(args.rate, params)
    schedule = codec.make_schedule(params, rate, L=args.L, seed=args.seed)
    rng = np.random.default_rng(args.seed)
    messages = [rng.integers(0, 256, size=schedule.m, dtype=np.uint8).tobytes() for _ in range(params.n)]
    if args.trace_in:
        with open(args.trace_in, "rb") as fh:
            received = codec.read_trace(fh.read(), schedule)
        pattern = ErasurePattern(set(params.time_steps()) - {p.t for p in received})
    else:
        pattern = _pattern(args.pattern, params)
        received = codec.erase(codec.encode(schedule, messages), pattern)
    if args.trace_out:
        with open(args.trace_out, "wb") as fh:
            fh.write(codec.write_trace(received, schedule.L))

    results = []
    failed = False
    for k in range(1, params.n + 1):
        entry = {"k": k, "received_symbols": schedule.received_symbols(k, pattern), "needed": schedule.m}
        try:
            decoded = codec.decode(schedule, received, k)
        except codec.DecodingError as exc:
            entry.update(decoded=False, error=str(exc))
            failed = True
        else:
            ok = decoded == messages[k - 1]
            entry.update(decoded=ok)
            failed |= not ok
        results.append(entry)

    data = {
        "c": params.c, "d": params.d, "z": params.z, "n": params.n,
        "rate": str(rate), "L": schedule.L, "m": schedule.m, "code": schedule.kind,
        "pattern": list(pattern.erased), "messages": results, "ok": not failed,
    }
    lines = [f"rate {rate}, L={schedule.L}, m={schedule.m} symbols, {schedule.kind} code",
             f"erased: {{{pattern.to_literal()}}}"]
    for r in results:
        status = "decoded" if r["decoded"] else "FAILED"
        lines.append(f"message {r['k']}: {r['received_symbols']}/{r['needed']} symbols, {status}")
    rows = [["k", "received_symbols", "needed", "decoded"]] + [
        [r["k"], r["received_symbols"], r["needed"], r["decoded"]] for r in results]
    _emit(out, args.format, data, "\n".join(lines), rows)
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="streamcode", description="Intrasession streaming erasure code toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, z=True, model=False):
        p.add_argument("-c", type=int, required=True, help="time steps between message creations")
        p.add_argument("-d", type=int, required=True, help="decoding delay in time steps")
        if z:
            p.add_argument("-z", type=int, default=0, help="erasure budget or burst length")
        p.add_argument("-n", type=int, default=1, help="number of messages")
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        if model:
            p.add_argument("--model", default="cw", help="cw, sw or burst")
        p.add_argument("--guard", type=int, default=None, help="enumeration ceiling on horizon length")

    p = sub.add_parser("allocate", help="bandwidth split per time step")
    common(p, z=False)
    p.add_argument("--all", action="store_true", help="include dummy and beyond-horizon messages")
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("partition", help="partition class of each time step")
    common(p, z=False)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("bounds", help="achieved rate and finite-n upper bound")
    common(p, model=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("lp", help="exact finite-horizon intrasession optimum")
    common(p, model=True)
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("verify", help="exhaustively check the construction")
    common(p, model=True)
    p.add_argument("--rate", default="auto")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="encode, erase and decode random messages")
    common(p)
    p.add_argument("--rate", default="auto")
    p.add_argument("--pattern", default="worst", help="worst, periodic, none, or steps like '1,4,9'")
    p.add_argument("--L", type=int, default=None, help="symbols per packet")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace-out", default=None)
    p.add_argument("--trace-in", default=None)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except NotCovered as exc:
        print(f"streamcode: not covered: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, UsageError, OSError, ValueError) as exc:
        print(f"streamcode: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
