"""Command-line front end: ``run``, ``sweep`` and ``validate``."""
from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .config import TOP_LEVEL, ConfigError, format_raw, parse_raw, validate
from .errors import ContractViolation, ScenarioError
from .runner import run, write_atomic

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SCENARIO = 3
EXIT_NUMERICAL = 4


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None


def _default_output(config_path: str) -> str:
    return os.path.splitext(config_path)[0] + ".csv"


def cmd_run(args) -> int:
    config = validate(parse_raw(_read(args.config)))
    out = args.output or config.output or _default_output(args.config)
    if not os.path.isabs(out) and config.output and not args.output:
        # relative output paths in a config resolve against the config's directory
        out = os.path.join(os.path.dirname(os.path.abspath(args.config)), out)
    text, summary = run(config)
    write_atomic(out, text)
    for line in summary.lines():
        print(line)
    print(f"output = {out}")
    return EXIT_OK


def cmd_validate(args) -> int:
    config = validate(parse_raw(_read(args.config)))
    print(f"ok: scenario {config.scenario}, {len(config.params)} parameters")
    return EXIT_OK


def cmd_sweep(args) -> int:
    raw = parse_raw(_read(args.config))
    validate(raw)
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    if not values:
        raise ConfigError("--values needs at least one value")
    if args.key in raw.params:
        table = raw.params
    elif args.key in raw.top or args.key in TOP_LEVEL:
        table = raw.top
    else:
        table = raw.params  # unknown keys are rejected by validate() below
    stem = os.path.splitext(os.path.basename(args.config))[0]
    outdir = args.outdir or os.path.dirname(os.path.abspath(args.config))
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for value in values:
        table[args.key] = (value, None)
        tag = f"{stem}_{args.key}-{value}"
        raw.top["output"] = (f"{tag}.csv", None)
        validate(raw)
        path = os.path.join(outdir, f"{tag}.cfg")
        write_atomic(path, format_raw(raw))
        paths.append(path)
    for p in paths:
        print(p)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localdetect",
        description="Local detection of system-environment correlations: batch runner.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one configuration and write its CSV")
    p.add_argument("config")
    p.add_argument("-o", "--output", help="CSV path (overrides the config's output key)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="expand one key over several values into config files")
    p.add_argument("config")
    p.add_argument("--key", required=True)
    p.add_argument("--values", required=True, help="comma-separated values")
    p.add_argument("--outdir", help="directory for generated configs (default: next to config)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="parse and validate a configuration only")
    p.add_argument("config")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ContractViolation as exc:
        print(f"numerical contract violation: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ScenarioError, ValueError) as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return EXIT_SCENARIO


if __name__ == "__main__":
    sys.exit(main())
