"""Command-line interface.

    dgbo run <config.json> [--output-dir DIR]
    dgbo verify <suite>
    dgbo export <checkpoint> --csv [PATH]

Exit codes: 0 ok, 1 diagnostic failure, 2 configuration error.  The output
root can be redirected with the DGBO_OUTPUT_ROOT environment variable; run
output directories resolve relative to it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .config import ConfigError, load_config

EXIT_OK = 0
EXIT_DIAGNOSTIC = 1
EXIT_CONFIG = 2


def _cmd_run(args) -> int:
    from dataclasses import replace

    from .evolution import EvolutionAbort
    from .runner import run

    try:
        cfg = load_config(args.config)
        out = args.output_dir or cfg.output_dir
        root = os.environ.get("DGBO_OUTPUT_ROOT")
        if root:
            out = str(Path(root) / out)
        cfg = replace(cfg, output_dir=out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        summary = run(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, EvolutionAbort) as exc:
        print(f"diagnostic failure: {exc}", file=sys.stderr)
        return EXIT_DIAGNOSTIC
    print(json.dumps(summary, indent=2, sort_keys=True))
    return EXIT_OK if summary["status"] == "ok" else EXIT_DIAGNOSTIC


def _cmd_verify(args) -> int:
    from .verify import run_suite

    try:
        rows = run_suite(args.suite)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK if all(r.passed for r in rows) else EXIT_DIAGNOSTIC


def _cmd_export(args) -> int:
    from .checkpoint import read_checkpoint

    try:
        field, alpha, t = read_checkpoint(args.checkpoint)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    lines = [f"# n_points={field.grid.n_points} length={field.grid.length!r} "
             f"alpha={alpha!r} t={t!r}", "x,u"]
    for xv, uv in zip(field.grid.nodes, field.samples):
        lines.append(f"{xv:.17g},{uv:.17g}")
    text = "\n".join(lines) + "\n"
    if args.csv in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.csv).write_text(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgbo",
        description="Pseudospectral laboratory for the dispersion-generalized "
                    "Benjamin-Ono equation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a configured experiment")
    p_run.add_argument("config", help="path to a JSON run configuration")
    p_run.add_argument("--output-dir", help="override the config's output_dir")
    p_run.set_defaults(func=_cmd_run)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument(
        "suite",
        help="operators | weights | commutators | groundstate | evolution | "
             "functionals | all",
    )
    p_verify.set_defaults(func=_cmd_verify)

    p_export = sub.add_parser("export", help="dump a checkpoint")
    p_export.add_argument("checkpoint", help="path to a .ckpt file")
    p_export.add_argument("--csv", nargs="?", const="-", default=None,
                          help="write CSV to PATH (default: stdout)")
    p_export.set_defaults(func=_cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
