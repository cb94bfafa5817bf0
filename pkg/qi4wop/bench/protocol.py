"""The two-phase benchmark protocol."""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..baseline.initialization import classical_initialization
from ..baseline.poc import PocConfig, run_poc
from ..const import (
    DEFAULT_INIT_TIME_BUDGET_MS,
    DEFAULT_MAX_ATTEMPTS,
    DEFAULT_PHASE1_RUNS,
    METHOD_CLASSICAL,
    METHOD_QI4WOP,
    InitMode,
)
from ..core.models import Instance
from ..exceptions import NoInitialSolutionError, WOPError
from ..postprocess.pipeline import QI4WOPConfig, run_qi4wop
from ..solvers.base import BaseSolverBackend
from .reports import (
    OUTCOME_SKIPPED,
    Phase1Report,
    Phase2Report,
    Phase2Run,
    RunLog,
    RunRecord,
    compare_scores,
    phase1_report_from_records,
)

_LOGGER = logging.getLogger(__name__)

METHODS = (METHOD_QI4WOP, METHOD_CLASSICAL)


class Phase1Config(BaseModel):
    """Settings of the population-size comparison."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    runs: int = Field(DEFAULT_PHASE1_RUNS, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)
    init_time_budget_ms: int = Field(DEFAULT_INIT_TIME_BUDGET_MS, ge=0)
    init_max_draws: Optional[int] = Field(None, ge=1)
    max_attempts: int = Field(DEFAULT_MAX_ATTEMPTS, ge=1)
    match_wall_time: bool = False
    qi4wop: QI4WOPConfig = QI4WOPConfig()


def run_seed(base: int, run: int) -> int:
    """Return the seed of the ``run``-th execution."""
    return (base + run) % 2**64


async def _phase1_once(
    instance: Instance,
    method: str,
    seed: int,
    config: Phase1Config,
    backend: Optional[BaseSolverBackend],
    budget_ms: int,
) -> tuple[int, float]:
    if method == METHOD_CLASSICAL:
        population = classical_initialization(
            instance,
            budget_ms,
            np.random.default_rng(seed),
            max_draws=config.init_max_draws,
            max_attempts=config.max_attempts,
        )
        return len(population), population.timings["init"] / 1000
    if backend is None:
        raise ValueError("the qi4wop method needs a backend")
    population = await run_qi4wop(instance, config.qi4wop.with_seed(seed), backend)
    return len(population), population.timings["total"] / 1000


def _matched_budget(hybrid: Optional[RunRecord], fallback_ms: int) -> int:
    if hybrid is None or hybrid.failed or hybrid.runtime_s is None:
        return fallback_ms
    return math.ceil(hybrid.runtime_s * 1000)


async def run_phase1(
    instances: Sequence[Instance],
    methods: Sequence[str],
    config: Phase1Config,
    backend: Optional[BaseSolverBackend] = None,
    log: Optional[RunLog] = None,
) -> Phase1Report:
    """Measure population size and wall time per instance and method.

    Run ``r`` of every (instance, method) pair uses seed ``config.seed + r``.
    With ``match_wall_time`` the qi4wop runs of an instance go first and
    classical run ``r`` gets the wall time of qi4wop run ``r`` as its budget.
    A run that raises is recorded as failed and the report is still built.

    Args:
        instances: Validated instances
        methods: ``qi4wop`` and/or ``classical``
        config: Protocol settings
        backend: Sampler for the qi4wop method
        log: Optional run log receiving every record

    Returns:
        One row per (instance, method), in argument order
    """
    methods = list(dict.fromkeys(methods))
    order = methods
    if config.match_wall_time:
        order = sorted(methods, key=lambda method: method != METHOD_QI4WOP)

    records = []
    for instance in instances:
        by_method: dict[str, list[RunRecord]] = {}
        for method in order:
            for run in range(config.runs):
                seed = run_seed(config.seed, run)
                budget_ms = config.init_time_budget_ms
                if config.match_wall_time and method == METHOD_CLASSICAL:
                    hybrid = by_method.get(METHOD_QI4WOP, [])
                    budget_ms = _matched_budget(
                        hybrid[run] if run < len(hybrid) else None, budget_ms
                    )
                try:
                    solutions, runtime_s = await _phase1_once(
                        instance, method, seed, config, backend, budget_ms
                    )
                    record = RunRecord(
                        1, instance.name, method, run, seed, solutions, runtime_s
                    )
                except (WOPError, ValueError) as err:
                    _LOGGER.warning("%s run %d on %s failed: %s", method, run, instance.name, err)
                    record = RunRecord(1, instance.name, method, run, seed, error=str(err))
                by_method.setdefault(method, []).append(record)
                if log is not None:
                    log.append(record)
        for method in methods:
            records.extend(by_method[method])
    return phase1_report_from_records(records)


async def run_phase2(
    instance: Instance,
    runs: int,
    poc_config: PocConfig,
    backend: BaseSolverBackend,
    log: Optional[RunLog] = None,
) -> Phase2Report:
    """Compare classical and hybrid-initialized PoC runs on paired seeds.

    Each run first executes the hybrid PoC, then the classical PoC with
    ``target_init_count`` set to the hybrid population size. The classical
    side still stops at ``init_time_budget_ms``; runs where it falls short of
    the target are kept, flagged through their init sizes and logged. Runs
    where either side has no initial solution are skipped.

    Args:
        instance: Validated instance
        runs: Number of paired runs
        poc_config: Base PoC settings; mode, seed and target are overridden
        backend: Sampler for the hybrid side
        log: Optional run log receiving every record

    Returns:
        Win, loss, tie and skip accounting
    """
    results = []
    for run in range(runs):
        seed = run_seed(poc_config.seed, run)
        try:
            hybrid = await run_poc(
                instance,
                poc_config.model_copy(
                    update={"init_mode": InitMode.QI4WOP, "seed": seed, "target_init_count": None}
                ),
                backend,
            )
            classical = await run_poc(
                instance,
                poc_config.model_copy(
                    update={
                        "init_mode": InitMode.CLASSICAL,
                        "seed": seed,
                        "target_init_count": hybrid.init_population_size,
                    }
                ),
            )
        except NoInitialSolutionError as err:
            _LOGGER.warning("Skipping phase-two run %d on %s: %s", run, instance.name, err)
            results.append(Phase2Run(run, seed, None, None, OUTCOME_SKIPPED))
            if log is not None:
                log.append(RunRecord(2, instance.name, OUTCOME_SKIPPED, run, seed, error=str(err)))
            continue

        if classical.init_population_size != hybrid.init_population_size:
            _LOGGER.warning(
                "Phase-two run %d on %s: classical initialization stopped at %d of %d solutions",
                run,
                instance.name,
                classical.init_population_size,
                hybrid.init_population_size,
            )
        results.append(
            Phase2Run(
                run,
                seed,
                classical.best_final.score,
                hybrid.best_final.score,
                compare_scores(classical.best_final.score, hybrid.best_final.score),
                init_size_classical=classical.init_population_size,
                init_size_hybrid=hybrid.init_population_size,
            )
        )
        if log is not None:
            for method, result in ((METHOD_QI4WOP, hybrid), (METHOD_CLASSICAL, classical)):
                log.append(
                    RunRecord(
                        2,
                        instance.name,
                        method,
                        run,
                        seed,
                        solutions=result.init_population_size,
                        runtime_s=result.init_wall_time_ms / 1000,
                        score=str(result.best_final.score),
                    )
                )

    report = Phase2Report(instance.name, tuple(results))
    _LOGGER.info(
        "Phase two on %s: %d wins, %d losses, %d ties, %d skipped, %d with unequal init sizes",
        instance.name,
        report.wins_qi4wop,
        report.losses,
        report.ties,
        report.skipped,
        report.unequal_init_runs,
    )
    return report
