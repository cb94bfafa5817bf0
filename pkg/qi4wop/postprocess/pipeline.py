"""The full sample, complete, mutate and filter pipeline."""

import logging
import time
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..const import DEFAULT_MUTANT_PROBABILITY
from ..core.models import Instance, WopSolution
from ..cqm.builder import assignment_to_partial, build_subwop_model
from ..solvers.base import BaseSolverBackend, SamplerConfig
from .population import Population, filter_population
from .stacking import complete_solution, create_mutant

_LOGGER = logging.getLogger(__name__)


class QI4WOPConfig(BaseModel):
    """Settings of one pipeline run."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    sampler: SamplerConfig = SamplerConfig()
    mutant_probability: float = Field(DEFAULT_MUTANT_PROBABILITY, ge=0, le=1)
    seed: int = Field(0, ge=0, lt=2**64)

    def with_seed(self, seed: int) -> "QI4WOPConfig":
        """Return a copy whose sampler and mutant seeds are both ``seed``."""
        sampler = self.sampler.model_copy(update={"seed": seed})
        return self.model_copy(update={"seed": seed, "sampler": sampler})


async def run_qi4wop(
    instance: Instance, config: QI4WOPConfig, backend: BaseSolverBackend
) -> Population:
    """Build a population of feasible solutions for an instance.

    The backend samples N ground-level assignments; each feasible one is
    completed by stacking and mutated, giving two candidates per sample.
    Infeasible samples contribute two empty candidates.

    Args:
        instance: Validated instance
        config: Pipeline settings
        backend: Sampler for the ground-level model

    Returns:
        Population of at most 2N solutions with ``sample`` and ``complete``
        wall times in milliseconds

    Raises:
        StructurallyInfeasibleError: If the ground-level model cannot be built
    """
    started = time.perf_counter()
    model = build_subwop_model(instance)
    sample_set = await backend.sample(model, config.sampler)
    sampled = time.perf_counter()
    _LOGGER.debug(
        "%s returned %d samples for %s", backend.name, len(sample_set), instance.name
    )

    seeds = np.random.SeedSequence(config.seed).spawn(len(sample_set.samples))
    candidates: list[Optional[WopSolution]] = []
    for sample, seed in zip(sample_set.samples, seeds):
        if not sample.feasible:
            candidates.extend((None, None))
            continue
        partial = assignment_to_partial(sample.assignment, model, instance)
        completed = complete_solution(partial, instance)
        if completed is None:
            candidates.extend((None, None))
            continue
        rng = np.random.default_rng(seed)
        candidates.extend(
            (completed, create_mutant(completed, instance, config.mutant_probability, rng))
        )

    population = filter_population(candidates, instance)
    finished = time.perf_counter()
    _LOGGER.info(
        "Pipeline on %s kept %d of %d candidates", instance.name, len(population), len(candidates)
    )
    return population.with_timings(
        sample=sample_set.wall_time_ms,
        complete=(finished - sampled) * 1000,
        total=(finished - started) * 1000 + config.sampler.queue_latency_offset_ms,
    )
