"""Command line entry point.

    flint transform|slice|validate|evaluate|attack|report|augment
          --config <path> [--seed N] [--out DIR] [--model SPEC]
          [--resources DIR]

Exit codes: 0 ok, 1 config error, 2 data error, 3 adapter error.
"""
from __future__ import annotations

import argparse
import sys

from .config import load_config
from .errors import AdapterError, ConfigError, DataError, FlintError
from .pipeline import MODES, run_pipeline


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flint",
        description="Robustness evaluation for NLP models: transform, slice, validate, evaluate, attack, report, augment.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        p = sub.add_parser(mode, help=f"run the {mode} stage")
        p.add_argument("--config", help="path to the JSON config file")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--out", help="override the output directory")
        p.add_argument(
            "--model",
            help="model spec: builtin:<name> | exec:<command> | tcp:<host:port>",
        )
        p.add_argument("--resources", help="override the lexicon resources directory")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.seed is not None:
            config.seed = args.seed
        if args.out:
            config.out_dir = args.out
        if args.model:
            config.model = args.model
        if args.resources:
            config.resources_dir = args.resources
        run_pipeline(config, args.mode)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except AdapterError as exc:
        print(f"adapter error: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except FlintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{args.mode} complete -> {config.out_dir}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
