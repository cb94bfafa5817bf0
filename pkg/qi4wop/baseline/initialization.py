"""Random feasible construction and the classical initialization module."""

import logging
import time
from typing import Optional

import numpy as np

from ..const import DEFAULT_MAX_ATTEMPTS
from ..core.layout import StackLayout
from ..core.models import Instance, WopSolution
from ..core.objectives import canonical_key
from ..postprocess.population import Population, filter_population

_LOGGER = logging.getLogger(__name__)


def _construct(instance: Instance, rng: np.random.Generator) -> Optional[WopSolution]:
    layout = StackLayout(instance)
    for index in rng.permutation(len(instance.items)):
        item = instance.items[int(index)]
        item_type = instance.type_of(item.id)
        footprints = [
            location.id
            for location in instance.eligible_locations(item.id)
            if layout.can_open(item.id, location.id)
        ]
        tops = [
            stack.key
            for stack in layout.stacks_of_type(item_type.id)
            if layout.can_push(stack, item.id)
        ]
        if not footprints and not tops:
            return None
        pick = int(rng.integers(len(footprints) + len(tops)))
        if pick < len(footprints):
            layout.open_stack(item.id, footprints[pick])
        else:
            layout.push(tops[pick - len(footprints)], item.id)
    return layout.to_solution()


def random_feasible_solution(
    instance: Instance,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> Optional[WopSolution]:
    """Build a random feasible solution item by item.

    Items are taken in random order; each goes to a uniformly chosen option
    among new footprints at eligible locations with room and tops of
    non-full stacks of its type. A dead end restarts the construction.

    Args:
        instance: Validated instance
        rng: Random generator
        max_attempts: Constructions tried before giving up

    Returns:
        Feasible solution, or None if every attempt hit a dead end
    """
    for attempt in range(max_attempts):
        solution = _construct(instance, rng)
        if solution is not None:
            return solution
        _LOGGER.debug("Construction attempt %d hit a dead end", attempt + 1)
    return None


def classical_initialization(
    instance: Instance,
    budget_ms: int,
    rng: np.random.Generator,
    target_init_count: Optional[int] = None,
    max_draws: Optional[int] = None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> Population:
    """Draw random feasible solutions until a budget or target is reached.

    Args:
        instance: Validated instance
        budget_ms: Wall-time budget; 0 yields an empty population
        rng: Random generator
        target_init_count: Stop once this many distinct solutions exist
        max_draws: Stop after this many constructor calls
        max_attempts: Attempts per constructor call

    Returns:
        Filtered population with its ``init`` wall time in milliseconds
    """
    started = time.perf_counter()
    deadline = started + budget_ms / 1000
    candidates: list[Optional[WopSolution]] = []
    distinct: set[bytes] = set()

    while time.perf_counter() < deadline:
        if max_draws is not None and len(candidates) >= max_draws:
            break
        if target_init_count is not None and len(distinct) >= target_init_count:
            break
        solution = random_feasible_solution(instance, rng, max_attempts)
        candidates.append(solution)
        if solution is not None:
            distinct.add(canonical_key(solution))

    population = filter_population(candidates, instance)
    elapsed_ms = (time.perf_counter() - started) * 1000
    _LOGGER.info(
        "Classical initialization on %s: %d solutions from %d draws in %.0f ms",
        instance.name,
        len(population),
        len(candidates),
        elapsed_ms,
    )
    return population.with_timings(init=elapsed_ms)
