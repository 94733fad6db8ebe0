"""Command-line entry point."""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from algebra.linkage import HARNESSES, run_all
from utils.logging import configure_logging, get_logger

from .core.config import Settings, build_settings
from .schemas.records import Bounds, OutputRecord, Provenance, RunSummary
from .services.emitter import emit_all, make_record
from .services.reproduction import run_reproduction
from .services.session import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, run_source

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkage",
        description="Linkage of modules over local quotient rings: scripts, reproduction and harnesses.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON records, one per line")
    common.add_argument("--bound", type=int, help="resolution and window bound")
    common.add_argument("--char", type=int, dest="characteristic", help="field characteristic, 0 or a prime")
    common.add_argument("--seed", type=int, help="seed for sampled instances")
    common.add_argument("--log-level", help="log level on stderr")

    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="run a session script")
    run.add_argument("script", type=Path)
    run.add_argument("--fail-fast", action="store_true", help="stop at the first failed check")

    repro = sub.add_parser("repro", parents=[common], help="run the counterexample pipeline")
    repro.add_argument("--deep", action="store_true", help="include the heavy linkage stage")

    harness = sub.add_parser("harness", parents=[common], help="run the randomized acceptance harnesses")
    harness.add_argument("--count", type=int, default=50, help="instances per harness (default: 50)")
    harness.add_argument("--only", action="append", choices=sorted(HARNESSES), help="harness to run; repeatable")

    sub.add_parser("schema", help="print the JSON schema of output records")
    return parser


def settings_from_args(args: argparse.Namespace) -> Settings:
    overrides = {
        "CHARACTERISTIC": getattr(args, "characteristic", None),
        "SEED": getattr(args, "seed", None),
        "LOG_LEVEL": getattr(args, "log_level", None),
        "OUTPUT_FORMAT": "json" if getattr(args, "json", False) else None,
    }
    bound = getattr(args, "bound", None)
    if bound is not None:
        overrides["RESOLUTION_BOUND"] = bound
        overrides["WINDOW"] = (min(2, bound), bound)
    return build_settings(**overrides)


def _harness_summary(settings: Settings, count: int, names: Optional[List[str]]) -> RunSummary:
    provenance = Provenance(
        characteristic=settings.CHARACTERISTIC,
        order=settings.ORDER,
        bounds=Bounds(resolution=settings.RESOLUTION_BOUND, window=settings.WINDOW),
        seed=settings.SEED,
    )
    reports = run_all(count, settings.SEED, names)
    records = [make_record(r, provenance) for r in reports]
    failed = sum(1 for r in reports if not r.ok)
    return RunSummary(
        exit_code=EXIT_CHECK_FAILED if failed else EXIT_OK,
        records=records,
        checks_total=len(reports),
        checks_failed=failed,
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "schema":
        sys.stdout.write(json.dumps(OutputRecord.model_json_schema(by_alias=True), indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    try:
        settings = settings_from_args(args)
    except ValidationError as e:
        sys.stderr.write(f"invalid options: {e}\n")
        return EXIT_USAGE
    configure_logging(settings.LOG_LEVEL)

    if args.command == "run":
        try:
            source = args.script.read_text(encoding="utf-8")
        except OSError as e:
            sys.stderr.write(f"cannot read {args.script}: {e}\n")
            return EXIT_USAGE
        summary = run_source(source, settings, fail_fast=args.fail_fast)
    elif args.command == "repro":
        summary = run_reproduction(settings, deep=args.deep)
    else:
        summary = _harness_summary(settings, args.count, args.only)

    sys.stdout.buffer.write(emit_all(summary.records, settings.OUTPUT_FORMAT))
    sys.stdout.flush()
    logger.info("exit %d: %d/%d checks failed", summary.exit_code, summary.checks_failed, summary.checks_total)
    return summary.exit_code


if __name__ == "__main__":
    sys.exit(main())
