"""Simulated-annealing sampler over categorical item placements."""

import asyncio
import logging
import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..const import PENALTY_AREA_FACTOR, SWEEPS_PER_ITEM
from ..cqm.model import CqmModel, evaluate
from .base import BaseSolverBackend, Sample, SampleSet, SamplerConfig
from .structure import SubWopView

_LOGGER = logging.getLogger(__name__)

BACKEND_NAME = "anneal"


@dataclass(frozen=True)
class _Schedule:
    """Resolved annealing parameters for one model."""

    initial_temperature: float
    cooling_factor: float
    proposals: int
    stage_length: int
    penalty_weight: float


@dataclass(frozen=True)
class _Problem:
    """Float copy of the view used in the inner loop."""

    locations: tuple[tuple[int, ...], ...]
    areas: tuple[tuple[float, ...], ...]
    gains: tuple[tuple[float, ...], ...]
    must_place: tuple[bool, ...]
    capacities: tuple[float, ...]


def _resolve(view: SubWopView, config: SamplerConfig) -> tuple[_Problem, _Schedule]:
    params = config.sa_params
    num_items = max(1, len(view.items))
    penalty = params.penalty_weight
    if penalty is None:
        penalty = float(PENALTY_AREA_FACTOR * view.max_area)
    problem = _Problem(
        locations=tuple(item.locations for item in view.items),
        areas=tuple(tuple(float(a) for a in item.areas) for item in view.items),
        gains=tuple(tuple(float(g) for g in item.gains) for item in view.items),
        must_place=tuple(item.must_place for item in view.items),
        capacities=tuple(float(c) for c in view.capacities),
    )
    schedule = _Schedule(
        initial_temperature=params.initial_temperature,
        cooling_factor=params.cooling_factor,
        proposals=params.sweeps_per_restart or SWEEPS_PER_ITEM * num_items,
        stage_length=num_items,
        penalty_weight=penalty,
    )
    return problem, schedule


def _overflow(loads: list[float], capacities: tuple[float, ...]) -> float:
    return sum(max(0.0, load - cap) for load, cap in zip(loads, capacities))


def _temperatures(schedule: _Schedule) -> list[float]:
    stages = np.arange(schedule.proposals) // schedule.stage_length
    temperatures = schedule.initial_temperature * schedule.cooling_factor**stages
    return np.maximum(temperatures, np.finfo(float).tiny).tolist()


def anneal_restart(
    problem: _Problem, schedule: _Schedule, seed: int, deadline: Optional[float]
) -> Optional[list[int]]:
    """Run one annealing restart and return the lowest-energy choice vector.

    Energy is the objective plus ``penalty_weight`` times the capacity overflow
    and the number of unplaced must-place items. A choice of -1 means unplaced.
    All random numbers of the restart are drawn up front from its own
    generator, so the result depends on ``seed`` only.

    Args:
        problem: Categorical problem data
        schedule: Temperature schedule and penalty
        seed: Seed of this restart
        deadline: Wall-clock time after which the restart is not started

    Returns:
        Choice per item, or None if the deadline had already passed
    """
    if deadline is not None and time.time() >= deadline:
        return None

    rng = np.random.default_rng(seed)
    num_items = len(problem.locations)
    capacities = problem.capacities
    loads = [0.0] * len(capacities)
    choice = [-1] * num_items

    for i, u in enumerate(rng.random(num_items).tolist()):
        k = int(u * (len(problem.locations[i]) + 1)) - 1
        choice[i] = k
        if k >= 0:
            loads[problem.locations[i][k]] += problem.areas[i][k]

    penalty = schedule.penalty_weight
    energy = sum(problem.gains[i][k] for i, k in enumerate(choice) if k >= 0)
    energy += penalty * _overflow(loads, capacities)
    energy += penalty * sum(1 for i, k in enumerate(choice) if k < 0 and problem.must_place[i])
    best_energy = energy
    best_choice = list(choice)

    movable = [i for i in range(num_items) if problem.locations[i]]
    if not movable:
        return best_choice

    proposals = schedule.proposals
    picks = rng.integers(len(movable), size=proposals).tolist()
    moves = rng.random(proposals).tolist()
    coins = rng.random(proposals).tolist()
    temperatures = _temperatures(schedule)

    for step in range(proposals):
        i = movable[picks[step]]
        locs, areas, gains = problem.locations[i], problem.areas[i], problem.gains[i]
        current = choice[i]
        # Uniform over {-1, 0, .., k-1} without the current value.
        new = int(moves[step] * len(locs)) - 1
        if new >= current:
            new += 1

        # Eligible locations of an item are distinct, so source and target
        # rows never coincide.
        delta = 0.0
        if current >= 0:
            source = locs[current]
            load, cap = loads[source], capacities[source]
            delta += penalty * (max(0.0, load - areas[current] - cap) - max(0.0, load - cap))
            delta -= gains[current]
        if new >= 0:
            target = locs[new]
            load, cap = loads[target], capacities[target]
            delta += penalty * (max(0.0, load + areas[new] - cap) - max(0.0, load - cap))
            delta += gains[new]
        if problem.must_place[i]:
            delta += penalty * ((new < 0) - (current < 0))

        if delta <= 0 or coins[step] < math.exp(-delta / temperatures[step]):
            if current >= 0:
                loads[locs[current]] -= areas[current]
            if new >= 0:
                loads[locs[new]] += areas[new]
            choice[i] = new
            energy += delta
            if energy < best_energy:
                best_energy = energy
                best_choice = list(choice)

    return best_choice


def restart_seeds(config: SamplerConfig) -> list[int]:
    """Return the seed of every restart (seed xor restart index)."""
    return [config.seed ^ index for index in range(config.num_samples)]


def _deadline(config: SamplerConfig) -> float:
    return time.time() + config.time_budget_ms / 1000


def _collect(
    model: CqmModel,
    view: SubWopView,
    states: list[Optional[list[int]]],
    started: float,
    config: SamplerConfig,
) -> SampleSet:
    samples = []
    for state in states:
        if state is None:
            continue
        assignment = view.assignment(state)
        samples.append(Sample(assignment, evaluate(model, assignment)))
    truncated = len(samples) < config.num_samples
    if truncated:
        _LOGGER.warning(
            "Annealing time budget exhausted: %d of %d restarts completed",
            len(samples),
            config.num_samples,
        )
    wall_time_ms = (time.perf_counter() - started) * 1000 + config.queue_latency_offset_ms
    sample_set = SampleSet(
        samples=tuple(samples),
        backend_name=BACKEND_NAME,
        wall_time_ms=wall_time_ms,
        truncated=truncated,
    )
    _LOGGER.debug(
        "Annealing on %s: %d samples, %d feasible",
        model.name,
        len(samples),
        len(sample_set.feasible_samples()),
    )
    return sample_set


def sample_annealing(model: CqmModel, config: SamplerConfig) -> SampleSet:
    """Sample a sub-WOP model with independent annealing restarts.

    Each item either stays unplaced or takes one eligible location, so the
    one-location constraints hold by construction.

    Args:
        model: Model from ``build_subwop_model``
        config: Sampler settings

    Returns:
        One sample per completed restart, in restart order
    """
    started = time.perf_counter()
    view = SubWopView.from_model(model)
    problem, schedule = _resolve(view, config)
    deadline = _deadline(config)
    states = [anneal_restart(problem, schedule, seed, deadline) for seed in restart_seeds(config)]
    return _collect(model, view, states, started, config)


class AnnealingBackend(BaseSolverBackend):
    """Classical stand-in for a cloud hybrid CQM sampler."""

    @property
    def name(self) -> str:
        """Return backend name."""
        return BACKEND_NAME

    async def sample(self, model: CqmModel, config: SamplerConfig) -> SampleSet:
        """Run the restarts, in parallel when more than one worker is set.

        Results are merged in restart order so the output does not depend on
        scheduling.
        """
        executor = self._get_executor(config.workers)
        if executor is None:
            return sample_annealing(model, config)

        started = time.perf_counter()
        view = SubWopView.from_model(model)
        problem, schedule = _resolve(view, config)
        deadline = _deadline(config)
        loop = asyncio.get_running_loop()
        states = await asyncio.gather(
            *(
                loop.run_in_executor(executor, anneal_restart, problem, schedule, seed, deadline)
                for seed in restart_seeds(config)
            )
        )
        return _collect(model, view, list(states), started, config)
