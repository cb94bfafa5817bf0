"""Command-line interface."""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from pydantic import ValidationError

from .baseline.poc import run_poc
from .bench.generator import InstanceSpec, generate_instance_with_witness, published_suite
from .bench.protocol import METHODS, run_phase1, run_phase2
from .bench.reports import RunLog
from .config import RunConfig, load_run_config
from .const import (
    DEFAULT_PHASE2_RUNS,
    DOMAIN,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    VERSION,
    BackendName,
    InitMode,
)
from .core.feasibility import is_feasible, validate_instance
from .core.io import dump_instance, dump_solution, dumps, load_instance, load_solution, write_text
from .core.models import FeasibilityReport, Instance
from .exceptions import WOPError
from .postprocess.pipeline import run_qi4wop
from .solvers.factory import make_backend

_LOGGER = logging.getLogger(__name__)

FORMAT_JSON = "json"
FORMAT_CSV = "csv"


def _global_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=None, help="seed for every random draw")
    parent.add_argument("--out", type=Path, default=None, help="output file (default stdout)")
    parent.add_argument(
        "--format", choices=(FORMAT_JSON, FORMAT_CSV), default=FORMAT_JSON, help="report format"
    )
    parent.add_argument(
        "--backend",
        choices=[b.value for b in BackendName],
        default=BackendName.ANNEAL.value,
        help="sub-WOP backend",
    )
    parent.add_argument("--config", type=Path, default=None, help="JSON run configuration")
    parent.add_argument(
        "--log-level",
        choices=("debug", "info", "warning", "error"),
        default="warning",
        help="logging level on stderr",
    )
    return parent


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser."""
    parent = _global_flags()
    parser = argparse.ArgumentParser(
        prog=DOMAIN, description="Warehouse Optimization Problem solvers and benchmarks"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", parents=[parent], help="generate an LX_IY_TZ instance")
    gen.add_argument("--locations", type=int, required=True)
    gen.add_argument("--items", type=int, required=True)
    gen.add_argument("--types", type=int, required=True)

    solve = commands.add_parser("solve", parents=[parent], help="build a population")
    solve.add_argument("instance", type=Path)
    solve.add_argument("--num-samples", type=int, default=None)

    poc = commands.add_parser("poc", parents=[parent], help="run the PoC once")
    poc.add_argument("instance", type=Path)
    poc.add_argument("--mode", choices=[m.value for m in InitMode], default=None)

    bench = commands.add_parser("bench", help="run a benchmark phase")
    phases = bench.add_subparsers(dest="phase", required=True)
    phase1 = phases.add_parser("phase1", parents=[parent], help="population size comparison")
    phase1.add_argument("instances", type=Path, nargs="*")
    phase1.add_argument("--suite", choices=("published",), default=None)
    phase1.add_argument("--methods", nargs="+", choices=METHODS, default=list(METHODS))
    phase1.add_argument("--runs", type=int, default=None)
    phase1.add_argument(
        "--match-wall-time",
        action="store_true",
        help="give each classical run the wall time of the paired qi4wop run",
    )
    phase1.add_argument("--log", type=Path, default=None, help="run log (NDJSON)")
    phase2 = phases.add_parser("phase2", parents=[parent], help="paired PoC comparison")
    phase2.add_argument("instance", type=Path)
    phase2.add_argument("--runs", type=int, default=DEFAULT_PHASE2_RUNS)
    phase2.add_argument("--log", type=Path, default=None, help="run log (NDJSON)")

    validate = commands.add_parser(
        "validate", parents=[parent], help="check an instance or a solution"
    )
    validate.add_argument("file", type=Path)
    validate.add_argument(
        "--instance", type=Path, default=None, help="treat FILE as a solution of this instance"
    )
    return parser


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_text(out, text)
        _LOGGER.info("Wrote %s", out)


def _seeded(value: Optional[int], fallback: int) -> int:
    return fallback if value is None else value


def cmd_gen(args: argparse.Namespace, config: RunConfig) -> int:
    """Generate an instance and its witness."""
    base = config.instance_spec.model_dump() if config.instance_spec else {}
    base.update(num_locations=args.locations, num_items=args.items, num_types=args.types)
    if args.seed is not None:
        base["seed"] = args.seed
    instance, witness = generate_instance_with_witness(InstanceSpec(**base))
    _emit(dump_instance(instance), args.out)
    if args.out is not None:
        write_text(args.out.with_suffix(".witness.json"), dump_solution(witness))
    return EXIT_OK


async def cmd_solve(args: argparse.Namespace, config: RunConfig) -> int:
    """Run the sampling pipeline and write the population."""
    instance = _load_valid_instance(args.instance)
    pipeline = config.pipeline()
    pipeline = pipeline.with_seed(_seeded(args.seed, pipeline.seed))
    if args.num_samples is not None:
        sampler = pipeline.sampler.model_copy(update={"num_samples": args.num_samples})
        pipeline = pipeline.model_copy(update={"sampler": sampler})
    async with make_backend(args.backend, config.limits, config.remote_dir) as backend:
        population = await run_qi4wop(instance, pipeline, backend)
    _emit(dumps(population.to_dict()), args.out)
    return EXIT_OK


async def cmd_poc(args: argparse.Namespace, config: RunConfig) -> int:
    """Run one PoC and write the result."""
    instance = _load_valid_instance(args.instance)
    poc = config.poc_config(args.seed)
    if args.mode is not None:
        poc = poc.model_copy(update={"init_mode": InitMode(args.mode)})
    async with make_backend(args.backend, config.limits, config.remote_dir) as backend:
        result = await run_poc(instance, poc, backend)
    _emit(dumps(result.to_dict()), args.out)
    return EXIT_OK


def _report_text(report: Any, fmt: str) -> str:
    return report.to_csv() if fmt == FORMAT_CSV else report.to_json()


async def cmd_phase1(args: argparse.Namespace, config: RunConfig) -> int:
    """Run phase one over files and/or a preset suite."""
    phase1 = config.phase1_config(args.seed)
    if args.runs is not None:
        phase1 = phase1.model_copy(update={"runs": args.runs})
    if args.match_wall_time:
        phase1 = phase1.model_copy(update={"match_wall_time": True})
    instances = [_load_valid_instance(path) for path in args.instances]
    if args.suite == "published":
        instances.extend(
            generate_instance_with_witness(spec)[0] for spec in published_suite(phase1.seed)
        )
    if not instances:
        raise WOPError("no instances given; pass files or --suite published")
    log = RunLog(args.log) if args.log is not None else None
    async with make_backend(args.backend, config.limits, config.remote_dir) as backend:
        report = await run_phase1(instances, args.methods, phase1, backend, log)
    _emit(_report_text(report, args.format), args.out)
    return EXIT_FAILURE if any(row.failed for row in report.rows) else EXIT_OK


async def cmd_phase2(args: argparse.Namespace, config: RunConfig) -> int:
    """Run phase two on one instance."""
    instance = _load_valid_instance(args.instance)
    poc = config.poc_config(args.seed)
    log = RunLog(args.log) if args.log is not None else None
    async with make_backend(args.backend, config.limits, config.remote_dir) as backend:
        report = await run_phase2(instance, args.runs, poc, backend, log)
    _emit(_report_text(report, args.format), args.out)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, config: RunConfig) -> int:
    """Check an instance, or a solution against an instance."""
    if args.instance is None:
        report = validate_instance(load_instance(args.file))
    else:
        report = is_feasible(load_solution(args.file), _load_valid_instance(args.instance))
    _emit(dumps(report.to_dict()), args.out)
    return EXIT_OK if report.feasible else EXIT_FAILURE


def _load_valid_instance(path: Path) -> Instance:
    instance = load_instance(path)
    report: FeasibilityReport = validate_instance(instance)
    if not report.feasible:
        details = "; ".join(v.detail for v in report.violations)
        raise WOPError(f"invalid instance {path}: {details}")
    return instance


async def _dispatch(args: argparse.Namespace, config: RunConfig) -> int:
    if args.command == "gen":
        return cmd_gen(args, config)
    if args.command == "validate":
        return cmd_validate(args, config)
    if args.command == "solve":
        return await cmd_solve(args, config)
    if args.command == "poc":
        return await cmd_poc(args, config)
    if args.phase == "phase1":
        return await cmd_phase1(args, config)
    return await cmd_phase2(args, config)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.format == FORMAT_CSV and args.command != "bench":
            parser.error("--format csv is only available for bench reports")
    except SystemExit as exc:
        return EXIT_OK if exc.code in (None, 0) else EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, args.log_level.upper()),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = load_run_config(args.config)
        return asyncio.run(_dispatch(args, config))
    except WOPError as err:
        _LOGGER.error("%s failed: %s", args.command, err)
        print(str(err), file=sys.stderr)
        return EXIT_FAILURE
    except ValidationError as err:
        print(f"invalid settings: {err}", file=sys.stderr)
        return EXIT_FAILURE
