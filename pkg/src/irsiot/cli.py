"""Command-line front end: ``irsiot {simulate,compare,sweep,associate}``.

Every command writes ``<command>.csv``, ``<command>.json`` and
``manifest.json`` into ``--out``; ``--format`` picks which of the first two
is echoed to stdout.

Exit codes: 0 success, 2 configuration error, 3 numeric/domain error,
4 I/O error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .config import config_digest, dumps_config, parse_config
from .errors import ConfigInvalid, DomainError
from .output import (association_table, comparison_dict, comparison_table, dumps_json, summary_dict,
                     summary_table, sweep_dict, sweep_table)
from .scenario import SweepSpec, associate, compare_scenarios, run_scenario, sweep

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4


def _u64(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _values(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", required=True, help="scenario TOML file")
    shared.add_argument("--seed", type=_u64, default=0)
    shared.add_argument("--replications", type=_positive_int, default=1000,
                        help="Monte Carlo replications (samples for 'associate')")
    shared.add_argument("--out", default="out", help="output directory")
    shared.add_argument("--format", choices=("csv", "json"), default="csv", help="what to echo on stdout")
    shared.add_argument("--fading", choices=("on", "off"), default=None,
                        help="override the config's fading switch")
    shared.add_argument("--workers", type=_positive_int, default=1)

    parser = argparse.ArgumentParser(prog="irsiot", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[shared], help="run one scenario")
    p.add_argument("--mode", choices=("conventional", "irs"), default=None)
    sub.add_parser("compare", parents=[shared], help="conventional vs IRS on common random numbers")
    p = sub.add_parser("sweep", parents=[shared], help="sweep one parameter")
    p.add_argument("--param", required=True, help="dotted parameter path, e.g. irs.M")
    p.add_argument("--values", required=True, type=_values, help="comma-separated values")
    p = sub.add_parser("associate", parents=[shared], help="region-averaged association probability")
    p.add_argument("--radius", type=float, default=None, help="coverage disc radius in meters")
    p.add_argument("--order", choices=("after", "before"), default="after",
                   help="average the probability ('after') or the powers ('before')")
    return parser


def _manifest(args, argv, cfg) -> dict:
    return {
        "tool": "irsiot",
        "version": __version__,
        "command": ["irsiot", *argv],
        "seed": args.seed,
        "replications": args.replications,
        "workers": args.workers,
        "config_digest": config_digest(cfg),
        "config": dumps_config(cfg),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def run_command(args, argv) -> int:
    cfg = parse_config(args.config)
    if args.fading is not None:
        cfg = dataclasses.replace(cfg, fading=args.fading == "on")

    if args.command == "simulate":
        summary = run_scenario(cfg, args.replications, args.seed, args.workers, mode=args.mode)
        table, doc = summary_table(summary), summary_dict(summary)
    elif args.command == "compare":
        report = compare_scenarios(cfg, args.replications, args.seed, args.workers)
        table, doc = comparison_table(report), comparison_dict(report)
    elif args.command == "sweep":
        spec = SweepSpec(args.param, args.values, args.replications, args.seed)
        result = sweep(cfg, spec, args.workers)
        table, doc = sweep_table(result), sweep_dict(result)
    else:
        modes = ["conventional", "irs"] if cfg.irs is not None else ["conventional"]
        results = {m: associate(cfg, args.radius, args.replications, args.seed, mode=m, order=args.order)
                   for m in modes}
        radius = args.radius if args.radius is not None else _default_radius(cfg)
        table = association_table(results, radius, args.replications)
        doc = {"region_radius": radius, "samples": args.replications, "order": args.order,
               "modes": {m: dataclasses.asdict(r) for m, r in results.items()}}

    csv_text, json_text = table.to_csv(), dumps_json(doc)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write(out / f"{args.command}.csv", csv_text)
    _write(out / f"{args.command}.json", json_text)
    _write(out / "manifest.json", json.dumps(_manifest(args, argv, cfg), indent=2) + "\n")
    sys.stdout.write(csv_text if args.format == "csv" else json_text)
    return EXIT_OK


def _default_radius(cfg) -> float:
    if cfg.device.kind == "disc":
        return cfg.device.radius
    ref, bs = cfg.device.positions[0], cfg.serving_position
    return math.hypot(ref.x - bs.x, ref.y - bs.y)


def _write(path: Path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        return run_command(args, argv)
    except ConfigInvalid as exc:
        print(f"irsiot: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"irsiot: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"irsiot: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
