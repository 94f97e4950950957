"""Command-line front end.

    sbmocz run --preset fig3a_ber --out-dir results --format csv
    sbmocz run --config my_run.json --seed 7 --workers 4
    sbmocz gaps results/fig3a_ber.csv --preset fig3a_ber

Exit codes: 0 success, 1 validation error, 2 runtime error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .presets import PRESETS
from .report import ConfigError, emit_results, load_curves, parse_config, report_gaps
from .sim import run_sweep

log = logging.getLogger("sbmocz")

EXIT_OK, EXIT_VALIDATION, EXIT_RUNTIME = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sbmocz", description="BMOCZ / SBMOCZ error-rate simulator")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a preset or a config file")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(PRESETS))
    src.add_argument("--config", type=Path, help="flat JSON config (object or list of objects)")
    run.add_argument("--seed", type=int, help="master seed (overrides config)")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--out-dir", type=Path, default=Path("results"))
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--max-trials", type=int, help="override max_trials for every curve")
    run.add_argument("--min-trials", type=int, help="override min_trials for every curve")
    run.add_argument("--grid", type=float, nargs="+", metavar="DB", help="override the Eb/N0 grid")
    run.add_argument("--quiet", action="store_true")

    gaps = sub.add_parser("gaps", help="measure dB gaps in a results file")
    gaps.add_argument("results", type=Path)
    gaps.add_argument("--preset", choices=sorted(PRESETS))
    return p


def _cmd_run(args) -> int:
    overrides = {
        "master_seed": args.seed,
        "max_trials": args.max_trials,
        "min_trials": args.min_trials,
        "ebn0_grid_db": tuple(args.grid) if args.grid else None,
    }
    configs = parse_config(args.config, preset=args.preset, overrides=overrides)
    for c in configs:
        log.info("config %s", json.dumps(c.to_dict()))

    def progress(cfg, pr):
        log.info("%-45s %6.2f dB  trials=%-7d ber=%.3e bler=%.3e",
                 cfg.label, pr.ebn0_db, pr.trials, pr.ber, pr.bler)

    t0 = time.perf_counter()
    results = [run_sweep(c, workers=args.workers, progress=progress) for c in configs]
    wall = time.perf_counter() - t0
    stem = args.preset or args.config.stem
    path = args.out_dir / f"{stem}.{args.format}"
    emit_results(results, args.format, path, wall_time=wall)
    print(f"wrote {path} ({len(results)} curves, {wall:.1f} s)")
    if args.preset:
        print(report_gaps(results, preset=args.preset))
    return EXIT_OK


def _cmd_gaps(args) -> int:
    curves = load_curves(args.results)
    print(report_gaps(curves, preset=args.preset))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING if getattr(args, "quiet", False) else logging.INFO
    logging.basicConfig(level=level, format="%(message)s")
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_gaps(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, RuntimeError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
