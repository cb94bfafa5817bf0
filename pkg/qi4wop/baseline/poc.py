"""Classical proof-of-concept: initialize, pick the best, improve."""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..const import (
    DEFAULT_INIT_TIME_BUDGET_MS,
    DEFAULT_LOCAL_SEARCH_BUDGET_MS,
    DEFAULT_MAX_ATTEMPTS,
    DEFAULT_WEIGHTS,
    InitMode,
)
from ..core.io import solution_to_dict
from ..core.models import Instance, WopSolution
from ..core.objectives import canonical_key, objective_o1, objective_o2, scalarize
from ..exceptions import InvalidWeightsError, NoInitialSolutionError
from ..postprocess.pipeline import QI4WOPConfig, run_qi4wop
from ..postprocess.population import Population
from ..solvers.base import BaseSolverBackend
from .initialization import classical_initialization
from .local_search import local_search

_LOGGER = logging.getLogger(__name__)


class PocConfig(BaseModel):
    """Settings of one PoC run."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    init_mode: InitMode = InitMode.CLASSICAL
    init_time_budget_ms: int = Field(DEFAULT_INIT_TIME_BUDGET_MS, ge=0)
    target_init_count: Optional[int] = Field(None, ge=1)
    init_max_draws: Optional[int] = Field(None, ge=1)
    max_attempts: int = Field(DEFAULT_MAX_ATTEMPTS, ge=1)
    local_search_budget_ms: int = Field(DEFAULT_LOCAL_SEARCH_BUDGET_MS, ge=0)
    weights: tuple[float, float] = DEFAULT_WEIGHTS
    seed: int = Field(0, ge=0, lt=2**64)
    qi4wop: QI4WOPConfig = QI4WOPConfig()

    @field_validator("weights")
    @classmethod
    def _check_weights(cls, value: tuple[float, float]) -> tuple[float, float]:
        try:
            scalarize(0, 0, value)
        except InvalidWeightsError as err:
            raise ValueError(str(err)) from err
        return value


@dataclass(frozen=True)
class ObjectiveSummary:
    """Objective values of one solution."""

    o1: int
    o2: int
    score: Fraction

    @classmethod
    def of(
        cls, solution: WopSolution, instance: Instance, weights: tuple[float, float]
    ) -> "ObjectiveSummary":
        """Evaluate a feasible solution."""
        o1 = objective_o1(solution, instance)
        o2 = objective_o2(solution, instance)
        return cls(o1, o2, scalarize(o1, o2, weights))

    def to_dict(self) -> dict[str, Any]:
        """Convert summary to dictionary."""
        return {"o1": self.o1, "o2": self.o2, "score": str(self.score)}


@dataclass(frozen=True)
class RunResult:
    """Outcome of one PoC run."""

    init_mode: InitMode
    init_population_size: int
    init_wall_time_ms: float
    best_initial: ObjectiveSummary
    best_final: ObjectiveSummary
    final_solution: WopSolution

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        """Convert result to its JSON document."""
        data: dict[str, Any] = {
            "init_mode": self.init_mode.value,
            "init_population_size": self.init_population_size,
            "best_initial": self.best_initial.to_dict(),
            "best_final": self.best_final.to_dict(),
            "final_solution": solution_to_dict(self.final_solution),
        }
        if include_timing:
            data["init_wall_time_ms"] = self.init_wall_time_ms
        return data


def select_best(
    population: Population, instance: Instance, weights: tuple[float, float]
) -> tuple[WopSolution, ObjectiveSummary]:
    """Return the lowest-scoring solution, ties broken by canonical key.

    Raises:
        NoInitialSolutionError: If the population is empty
    """
    if not population.solutions:
        raise NoInitialSolutionError(f"no initial solution for {instance.name}")
    scored = [
        (ObjectiveSummary.of(solution, instance, weights), canonical_key(solution), solution)
        for solution in population.solutions
    ]
    summary, _, best = min(scored, key=lambda entry: (entry[0].score, entry[1]))
    return best, summary


async def initial_population(
    instance: Instance,
    config: PocConfig,
    backend: Optional[BaseSolverBackend],
    rng: np.random.Generator,
) -> tuple[Population, float]:
    """Run the configured initialization module.

    Returns:
        Population (cut to ``target_init_count`` if set) and its wall time in
        milliseconds

    Raises:
        ValueError: If QI4WOP mode is requested without a backend
    """
    started = time.perf_counter()
    if config.init_mode == InitMode.QI4WOP:
        if backend is None:
            raise ValueError("QI4WOP initialization needs a backend")
        population = await run_qi4wop(instance, config.qi4wop.with_seed(config.seed), backend)
        if config.target_init_count is not None:
            population = population.head(config.target_init_count)
        wall_time_ms = (time.perf_counter() - started) * 1000
        wall_time_ms += config.qi4wop.sampler.queue_latency_offset_ms
    else:
        population = classical_initialization(
            instance,
            config.init_time_budget_ms,
            rng,
            target_init_count=config.target_init_count,
            max_draws=config.init_max_draws,
            max_attempts=config.max_attempts,
        )
        wall_time_ms = (time.perf_counter() - started) * 1000
    return population, wall_time_ms


async def run_poc(
    instance: Instance,
    config: PocConfig,
    backend: Optional[BaseSolverBackend] = None,
) -> RunResult:
    """Run the PoC: initialize, select the best solution, local search.

    Args:
        instance: Validated instance
        config: Run settings
        backend: Sampler used in QI4WOP mode

    Returns:
        Run result with the best initial and final objective values

    Raises:
        NoInitialSolutionError: If initialization produced no solution
    """
    init_seed, search_seed = np.random.SeedSequence(config.seed).spawn(2)
    population, init_wall_time_ms = await initial_population(
        instance, config, backend, np.random.default_rng(init_seed)
    )
    start, best_initial = select_best(population, instance, config.weights)

    final = local_search(
        start,
        instance,
        config.local_search_budget_ms,
        config.weights,
        np.random.default_rng(search_seed),
    )
    best_final = ObjectiveSummary.of(final, instance, config.weights)
    _LOGGER.info(
        "PoC %s on %s: %d initial solutions, score %s -> %s",
        config.init_mode.value,
        instance.name,
        len(population),
        best_initial.score,
        best_final.score,
    )
    return RunResult(
        init_mode=config.init_mode,
        init_population_size=len(population),
        init_wall_time_ms=init_wall_time_ms,
        best_initial=best_initial,
        best_final=best_final,
        final_solution=final,
    )
