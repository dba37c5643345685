"""Command-line front end: run configured checks or describe named objects.

Exit codes: 0 when every selected check passes, 1 when any check fails
(or errors at run time), 2 for configuration and usage problems.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import load_config, run_checks
from .errors import ConfigError
from .verify import ALL_THEOREM_IDS


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatmono",
        description="Numerical checks of quaternionic integral theorems.")
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="run checks from a config file")
    run.add_argument("--config", metavar="PATH", help="TOML run configuration")
    run.add_argument("--only", metavar="ID[,ID...]",
                     help="restrict to the given theorem ids")
    run.add_argument("--tol", type=float, metavar="X",
                     help="override the acceptance tolerance for all checks")
    run.add_argument("--list-checks", action="store_true",
                     help="print available theorem ids and exit")
    run.add_argument("--output", metavar="PATH",
                     help="write the JSON report here (overrides config)")
    run.add_argument("--seed", type=int, default=0, metavar="N",
                     help="seed for sampled validity spot-checks")

    describe = sub.add_parser("describe",
                              help="print derived quantities for a named "
                                   "frame or map")
    describe.add_argument("name", help="frame or map name from the config")
    describe.add_argument("--config", metavar="PATH", required=True)
    describe.add_argument("--seed", type=int, default=0, metavar="N")
    return parser


def _cmd_run(args) -> int:
    if args.list_checks:
        for theorem_id in ALL_THEOREM_IDS:
            print(theorem_id)
        return 0
    if not args.config:
        print("error: --config is required (or use --list-checks)",
              file=sys.stderr)
        return 2
    only = args.only.split(",") if args.only else None
    try:
        cfg = load_config(args.config, seed=args.seed, tol_override=args.tol)
        document = run_checks(cfg, only)
    except ConfigError as exc:
        print(f"config error:\n{exc}", file=sys.stderr)
        return 2

    for row in document["checks"]:
        status = "PASS" if row["passed"] else "FAIL"
        detail = (f"residual {row['residual']:.3e} (tol {row['tol']:.1e})"
                  if row["residual"] is not None else row["error"])
        print(f"{status} {row['theorem_id']:22s} {row['name']}: {detail}")
    total = len(document["checks"])
    failed = sum(1 for row in document["checks"] if not row["passed"])
    print(f"{total - failed}/{total} checks passed")

    output_path = args.output or cfg.output_path
    if output_path:
        with open(output_path, "w") as fh:
            json.dump(document, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"report written to {output_path}")
    return 0 if document["all_passed"] else 1


def _cmd_describe(args) -> int:
    try:
        cfg = load_config(args.config, seed=args.seed)
    except ConfigError as exc:
        print(f"config error:\n{exc}", file=sys.stderr)
        return 2
    if args.name in cfg.frames:
        print(cfg.frames[args.name].describe())
        return 0
    if args.name in cfg.maps:
        gmap = cfg.maps[args.name]
        print(f"{gmap.handedness}-handed monogenic map")
        for label, fn in zip(("F1", "F2", "F3", "F4"), gmap.components):
            print(f"  {label}(xi) = {fn.source}")
        print(gmap.frame.describe())
        return 0
    print(f"error: no frame or map named {args.name!r} in the config",
          file=sys.stderr)
    return 2


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # Bare flags mean "run": `quatmono --config x.toml` works unprefixed.
    if not argv or argv[0].startswith("-"):
        argv = ["run"] + argv
    args = _build_parser().parse_args(argv)
    if args.command == "describe":
        return _cmd_describe(args)
    return _cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
