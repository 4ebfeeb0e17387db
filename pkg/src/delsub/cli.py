"""Command-line surface: transforms, balls, partitioning, codes, codec, sweeps.

Sequences cross the boundary as digit strings (0-9a-f, position 1 first);
integer sequences as comma-separated signed decimals.  Every subcommand is
deterministic given its flags and seed.  Exit codes: 0 success, 1 decode or
verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import codec
from .channels import BallModel, SplitMix64, sample_corruption
from .codes import CodeParams, best_residues, is_member, enumerate_code, pigeonhole_floor
from .errors import CapExceeded, DecodeFailure, InvariantViolation
from .oracle import CSV_HEADER, verify_family_cell
from .partition import partition_pair
from .sequences import (
    Sequence,
    accumulative,
    accumulative_differential,
    differential,
    format_int_sequence,
    parse_int_sequence,
    sign_preserving_number,
    vt_syndrome,
)


@dataclass
class Config:
    fmt: str = "plain"
    seed: int = 0
    enum_cap: int | None = None
    ball_cap: int | None = None
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.fmt not in ("plain", "json", "csv"):
            raise ValueError(f"unknown output format {self.fmt!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        for cap in (self.enum_cap, self.ball_cap):
            if cap is not None and cap <= 0:
                raise ValueError("caps must be positive")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument(
        "--enum-cap", type=int, default=None,
        help="candidate cap for code enumeration (env DELSUB_ENUM_CAP)",
    )
    common.add_argument(
        "--ball-cap", type=int, default=None,
        help="member cap for ball materialization (env DELSUB_BALL_CAP)",
    )
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    return common


def _build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="delsub",
        description="deletion/substitution error-correcting code toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", parents=[common], help="f/d/g/sigma/VT of a sequence")
    p.add_argument("--op", choices=("f", "d", "g", "sigma", "vt"), required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--k", type=int, default=0, help="syndrome order for --op vt")
    p.add_argument("--mod", type=int, default=None, help="optional modulus for --op vt")
    p.add_argument(
        "value",
        help="digit string for f/d/g; comma-separated integers for sigma/vt",
    )

    p = sub.add_parser("ball", parents=[common], help="emit an error ball")
    p.add_argument("--model", choices=("DS", "DST", "BURST"), required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("x")

    p = sub.add_parser("partition", parents=[common], help="partition a sequence pair")
    p.add_argument("--model", choices=("DS", "DST"), default="DS")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser("code", parents=[common], help="code family operations")
    p.add_argument("action", choices=("enum", "member", "best"))
    p.add_argument("--family", choices=("C1", "C2", "C3", "C4"), required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--a", default=None, help="comma-separated residues (enum/member)")
    p.add_argument("x", nargs="?", help="sequence to test (member)")

    p = sub.add_parser("encode", parents=[common], help="systematic encoder")
    p.add_argument("--s", type=int, default=0)
    p.add_argument("x", nargs="?", help="binary digit string (stdin when omitted)")

    p = sub.add_parser("decode", parents=[common], help="three-stage decoder")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--model", choices=("DS", "DST"), default="DS")
    p.add_argument("y", nargs="?", help="received digit string (stdin when omitted)")

    p = sub.add_parser("verify", parents=[common], help="exhaustive family sweeps")
    p.add_argument("--family", choices=("C1", "C2", "C3", "C4"), required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n", required=True, help="length or inclusive range lo:hi")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--mode", choices=("DS", "DST", "BURST"), default="DS")
    p.add_argument("--mode-t", type=int, default=None, help="deletions for the ball model")
    p.add_argument("--mode-s", type=int, default=None, help="substitutions for the ball model")
    p.add_argument("--strategy", choices=("best", "all"), default="best")

    p = sub.add_parser("simulate", parents=[common], help="channel roundtrip trials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--model", choices=("DS", "DST"), default="DS")
    p.add_argument("--trials", type=int, default=100)
    return parser


def _emit(cfg: Config, plain: str, obj) -> None:
    if cfg.fmt == "json":
        print(json.dumps(obj))
    else:
        print(plain)


def _cmd_transform(args, cfg: Config) -> int:
    if args.op in ("f", "d", "g"):
        x = Sequence.parse(args.value, args.q)
        if args.op == "f":
            result = format_int_sequence(accumulative(x))
        elif args.op == "g":
            result = format_int_sequence(accumulative_differential(x))
        else:
            result = str(differential(x))
    else:
        z = parse_int_sequence(args.value)
        if args.op == "sigma":
            result = str(sign_preserving_number(z))
        else:
            result = str(vt_syndrome(z, args.k, args.mod))
    _emit(cfg, result, {"op": args.op, "input": args.value, "result": result})
    return 0


def _cmd_ball(args, cfg: Config) -> int:
    x = Sequence.parse(args.x, args.q)
    model = BallModel(args.model, args.t, args.s)
    members = model.ball(x, cap=cfg.ball_cap).to_json()
    if cfg.fmt == "json":
        print(json.dumps(members))
    else:
        print("\n".join(members))
    return 0


def _cmd_partition(args, cfg: Config) -> int:
    x = Sequence.parse(args.x, args.q)
    y = Sequence.parse(args.y, args.q)
    result = partition_pair(x, y, args.t, args.s, args.model)
    if result is None:
        _emit(cfg, "disjoint", {"intersects": False})
        return 0
    obj = {"intersects": True, **result.to_json()}
    plain = "cuts: {}\nwitnesses: {}".format(
        ",".join(str(c) for c in result.cuts),
        " ".join("({},{},{})".format(*w) for w in result.witnesses),
    )
    _emit(cfg, plain, obj)
    return 0


def _parse_residues(args) -> CodeParams:
    if args.a is None:
        raise ValueError("--a residues are required for this action")
    return CodeParams(
        args.family, args.q, args.n, args.t, args.s, parse_int_sequence(args.a)
    )


def _cmd_code(args, cfg: Config) -> int:
    if args.action == "enum":
        params = _parse_residues(args)
        words = [str(w) for w in enumerate_code(params, cap=cfg.enum_cap)]
        print(json.dumps(words) if cfg.fmt == "json" else "\n".join(words))
        return 0
    if args.action == "member":
        if args.x is None:
            raise ValueError("member needs a sequence argument")
        params = _parse_residues(args)
        verdict = is_member(Sequence.parse(args.x, args.q), params)
        _emit(cfg, "true" if verdict else "false", {"member": verdict})
        return 0
    params, size = best_residues(args.family, args.q, args.n, args.t, args.s, cap=cfg.enum_cap)
    floor = pigeonhole_floor(args.family, args.q, args.n, args.t, args.s)
    obj = {"params": params.to_json(), "size": size, "pigeonhole_floor": floor}
    if cfg.fmt == "csv":
        import math

        red = args.n * math.log2(args.q) - math.log2(size)
        writer = csv.writer(sys.stdout)
        writer.writerow(
            ["family", "q", "n", "t", "s", "best_size", "pigeonhole_floor", "redundancy_bits"]
        )
        writer.writerow(
            [args.family, args.q, args.n, args.t, args.s, size, floor, f"{red:.4f}"]
        )
        return 0
    plain = "residues: {}\nsize: {}\nfloor: {}".format(
        format_int_sequence(params.residues), size, floor
    )
    _emit(cfg, plain, obj)
    return 0


def _read_word(arg: str | None) -> str:
    if arg is not None:
        return arg
    return sys.stdin.readline().strip()


def _cmd_encode(args, cfg: Config) -> int:
    x = Sequence.parse(_read_word(args.x), 2)
    total, n1, n2 = codec.layout(len(x), args.s)
    word = codec.encode(x, args.s)
    header = {"N": total, "n1": n1, "n2": n2, "n": len(x), "s": args.s}
    print(json.dumps(header))
    print(str(word))
    return 0


def _cmd_decode(args, cfg: Config) -> int:
    y = Sequence.parse(_read_word(args.y), 2)
    x = codec.decode(y, args.n, args.s, args.model)
    print(str(x))
    return 0


def _parse_range(raw: str) -> list[int]:
    if ":" in raw:
        lo, hi = raw.split(":", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(raw)]


def _run_cell(job: tuple) -> dict:
    family, q, n, t, s, mode_kind, mode_t, mode_s, strategy, cap = job
    summary = verify_family_cell(
        family, q, n, t, s, BallModel(mode_kind, mode_t, mode_s), strategy, cap=cap
    )
    return summary.to_json() | {"csv_row": summary.csv_row()}


def _cmd_verify(args, cfg: Config) -> int:
    mode_t = args.mode_t if args.mode_t is not None else args.t
    mode_s = args.mode_s if args.mode_s is not None else args.s
    if args.family == "C2" and args.mode_t is None:
        mode_t, mode_s = (2, args.s - 1) if args.t == 2 else (1, args.s)
    jobs = [
        (args.family, args.q, n, args.t, args.s, args.mode, mode_t, mode_s,
         args.strategy, cfg.enum_cap)
        for n in _parse_range(args.n)
    ]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            summaries = list(pool.map(_run_cell, jobs))
    else:
        summaries = [_run_cell(job) for job in jobs]
    summaries.sort(key=lambda s: s["n"])
    all_ok = all(s["ok"] for s in summaries)
    if cfg.fmt == "json":
        for s in summaries:
            s.pop("csv_row")
        print(json.dumps(summaries))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(CSV_HEADER)
        for s in summaries:
            writer.writerow(s["csv_row"])
    return 0 if all_ok else 1


def _cmd_simulate(args, cfg: Config) -> int:
    rng = SplitMix64(cfg.seed)
    ok = 0
    for _ in range(args.trials):
        x = Sequence(bytes(rng.next_below(2) for _ in range(args.n)), 2)
        word = codec.encode(x, args.s)
        corrupted, _script = sample_corruption(word, 1, args.s, args.model, rng.next())
        try:
            if codec.decode(corrupted, args.n, args.s, args.model) == x:
                ok += 1
        except DecodeFailure:
            pass
    plain = f"{ok}/{args.trials} decoded"
    _emit(cfg, plain, {"ok": ok, "trials": args.trials})
    return 0 if ok == args.trials else 1


_COMMANDS = {
    "transform": _cmd_transform,
    "ball": _cmd_ball,
    "partition": _cmd_partition,
    "code": _cmd_code,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "verify": _cmd_verify,
    "simulate": _cmd_simulate,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = Config(
            fmt=args.format,
            seed=args.seed,
            enum_cap=args.enum_cap,
            ball_cap=args.ball_cap,
            jobs=args.jobs,
        )
        return _COMMANDS[args.command](args, cfg)
    except DecodeFailure as exc:
        print(f"decode failure: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    except (ValueError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
