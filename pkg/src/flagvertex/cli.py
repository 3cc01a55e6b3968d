"""Command-line front end: flagvertex <subcommand> [options]."""
from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .algebra.serialize import to_json
from .envelope import (PreconditionError, StabMatrixError, dump_stab_matrix, load_stab_matrix, stab_matrix_n2,
                       verify_mainthm)
from .flag import FixedPoint, total_order
from .index import index_vertex_enum, index_vertex_limit
from .mirror import as_slope, format_slope, is_big_enough, is_wall
from .suite import run_suite
from .vertexfn import localization_series, vertex_series

DEFAULT_MAX_DEGREE = 4


@dataclass
class RunConfig:
    n: int | None = None
    slope: tuple | None = None
    max_degree: int = DEFAULT_MAX_DEGREE
    fixed_point: FixedPoint | None = None
    method: str = "enum"
    out: str | None = None
    threads: int = 1


class UsageError(ValueError):
    pass


def _read_config(path) -> dict:
    """key = value lines, '#' comments, optional quotes around values."""
    parser = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=("#",))
    try:
        parser.read_string("[run]\n" + Path(path).read_text())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    return {k.replace("-", "_"): v.strip().strip('"').strip("'") for k, v in parser["run"].items()}


def _threads(value) -> int:
    env = os.environ.get("FLAGVERTEX_THREADS")
    raw = env if env else value
    if raw is None:
        return os.cpu_count() or 1
    try:
        k = int(raw)
    except ValueError as exc:
        raise UsageError(f"bad thread count {raw!r}") from exc
    if k < 1:
        raise UsageError("thread count must be >= 1")
    return k


def build_config(args) -> RunConfig:
    merged = _read_config(args.config) if getattr(args, "config", None) else {}
    for key in ("n", "slope", "max_degree", "fixed_point", "method", "out", "threads"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    cfg = RunConfig()
    try:
        if "n" in merged:
            cfg.n = int(merged["n"])
            if not 1 <= cfg.n <= 8:
                raise UsageError("--n must be between 1 and 8")
        if "max_degree" in merged:
            cfg.max_degree = int(merged["max_degree"])
            if cfg.max_degree < 0:
                raise UsageError("--max-degree must be >= 0")
        if "slope" in merged and cfg.n is not None:
            cfg.slope = as_slope(str(merged["slope"]), cfg.n)
        if "fixed_point" in merged:
            cfg.fixed_point = FixedPoint.parse(str(merged["fixed_point"]))
            if cfg.n is not None and cfg.fixed_point.n != cfg.n:
                raise UsageError(f"fixed point {cfg.fixed_point} is not a permutation of 1..{cfg.n}")
    except UsageError:
        raise
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    cfg.method = str(merged.get("method", cfg.method))
    cfg.out = merged.get("out")
    cfg.threads = _threads(merged.get("threads"))
    return cfg


def _require(cfg: RunConfig, *names):
    for name in names:
        if getattr(cfg, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


def _emit(cfg: RunConfig, payload) -> None:
    text = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _series_payload(kind, cfg, series, **extra):
    out = {"kind": kind, "n": cfg.n, "fixed_point": cfg.fixed_point.to_list(), "max_degree": cfg.max_degree,
           "series": to_json(series)}
    out.update(extra)
    return out


def cmd_vertex(cfg: RunConfig, args) -> int:
    _require(cfg, "n", "fixed_point")
    fn = localization_series if args.localization else vertex_series
    series = fn(cfg.fixed_point, cfg.max_degree, args.side)
    _emit(cfg, _series_payload("localization" if args.localization else "vertex", cfg, series, side=args.side))
    return 0


def cmd_index_vertex(cfg: RunConfig, args) -> int:
    _require(cfg, "n", "fixed_point", "slope")
    if cfg.method not in ("enum", "limit", "both"):
        raise UsageError(f"unknown method {cfg.method!r}")
    I, s, D = cfg.fixed_point, cfg.slope, cfg.max_degree
    extra = {"slope": [str(x) for x in s], "method": cfg.method}
    if cfg.method == "limit":
        _emit(cfg, _series_payload("index-vertex", cfg, index_vertex_limit(I, s, D), **extra))
        return 0
    enum = index_vertex_enum(I, s, D)
    if cfg.method == "enum":
        _emit(cfg, _series_payload("index-vertex", cfg, enum, **extra))
        return 0
    bad = enum.first_mismatch(index_vertex_limit(I, s, D))
    extra["agree"] = bad is None
    extra["first_mismatch"] = list(bad) if bad is not None else None
    _emit(cfg, _series_payload("index-vertex", cfg, enum, **extra))
    return 0 if bad is None else 1


def cmd_stab(cfg: RunConfig, args) -> int:
    _require(cfg, "n", "slope")
    if cfg.n != 2:
        raise UsageError("stab computes the rank-two matrix only (--n 2)")
    _emit(cfg, dump_stab_matrix(stab_matrix_n2(cfg.slope, normalized=args.normalized)))
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    _require(cfg, "n", "slope")
    stab = load_stab_matrix(args.stab_file) if args.stab_file else None
    report = verify_mainthm(cfg.n, cfg.slope, cfg.max_degree, stab)
    _emit(cfg, report)
    return 0 if report["verified"] else 1


def cmd_walls(cfg: RunConfig, args) -> int:
    _require(cfg, "n", "slope")
    _emit(cfg, {"slope": format_slope(cfg.slope), "wall": is_wall(cfg.slope), "big_enough": is_big_enough(cfg.slope)})
    return 0


def cmd_order(cfg: RunConfig, args) -> int:
    _require(cfg, "n")
    _emit(cfg, {"n": cfg.n, "order": [I.to_list() for I in total_order(cfg.n)]})
    return 0


def cmd_suite(cfg: RunConfig, args) -> int:
    report = run_suite(args.level, cfg.threads)
    if args.no_timings:
        for r in report["criteria"]:
            r.pop("seconds")
    _emit(cfg, report)
    return 0 if report["passed"] else 1


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; command-line flags take precedence")
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--threads", help="worker processes (env FLAGVERTEX_THREADS overrides)")

    def shape(p, *flags):
        if "n" in flags:
            p.add_argument("--n", help="rank of the flag variety")
        if "slope" in flags:
            p.add_argument("--slope", help="comma-separated fractions, e.g. 3/4,1/2")
        if "fixed_point" in flags:
            p.add_argument("--fixed-point", dest="fixed_point", help='permutation, e.g. "2,1,3"')
        if "max_degree" in flags:
            p.add_argument("--max-degree", dest="max_degree", help=f"truncation degree (default {DEFAULT_MAX_DEGREE})")

    top = argparse.ArgumentParser(prog="flagvertex", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vertex", parents=[common], help="vertex function at a fixed point")
    shape(p, "n", "fixed_point", "max_degree")
    p.add_argument("--localization", action="store_true", help="symmetrized localization form instead")
    p.add_argument("--side", choices=["X", "X!"], default="X")
    p.set_defaults(func=cmd_vertex)

    p = sub.add_parser("index-vertex", parents=[common], help="index vertex of the dual variety")
    shape(p, "n", "fixed_point", "slope", "max_degree")
    p.add_argument("--method", choices=["enum", "limit", "both"])
    p.set_defaults(func=cmd_index_vertex)

    p = sub.add_parser("stab", parents=[common], help="rank-two stable-envelope restriction matrix")
    shape(p, "n", "slope")
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_stab)

    p = sub.add_parser("verify-mainthm", parents=[common], help="check the mirror identity coefficientwise")
    shape(p, "n", "slope", "max_degree")
    p.add_argument("--stab-file", dest="stab_file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("walls", parents=[common], help="wall and big-enough tests for a slope")
    shape(p, "n", "slope")
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("order", parents=[common], help="the total order on fixed points")
    shape(p, "n")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("suite", parents=[common], help="run the acceptance criteria")
    p.add_argument("--level", choices=["smoke", "full"], default="smoke")
    p.add_argument("--no-timings", action="store_true", help="drop timings for byte-stable output")
    p.set_defaults(func=cmd_suite)
    return top


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        cfg = build_config(args)
        return args.func(cfg, args)
    except (UsageError, PreconditionError, StabMatrixError, ValueError, OSError) as exc:
        print(f"flagvertex {args.command}: error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
