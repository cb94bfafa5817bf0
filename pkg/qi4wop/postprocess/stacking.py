"""Completing partial solutions by stacking, and mutating complete ones."""

import logging
from typing import Optional

import numpy as np

from ..core.feasibility import check_partial, is_feasible
from ..core.layout import StackLayout
from ..core.models import Instance, PartialSolution, WopSolution
from ..exceptions import InfeasibleSolutionError

_LOGGER = logging.getLogger(__name__)


def complete_solution(partial: PartialSolution, instance: Instance) -> Optional[WopSolution]:
    """Stack every unplaced item on a ground item of its own type.

    Each placed item opens one stack, slots numbered in instance item order.
    Unplaced items, in instance order, go on the cheapest non-full stack of
    their type (lowest per-level time, then location id, then slot). No new
    footprints are opened.

    Args:
        partial: Ground-level assignment
        instance: Instance the assignment belongs to

    Returns:
        Complete solution, or None if some item has no stack left
    """
    if not check_partial(partial, instance).feasible:
        _LOGGER.debug("Partial solution breaks ground-level rules, not completing")
        return None

    layout = StackLayout(instance)
    for item in instance.items:
        location_id = partial.location_of(item.id)
        if location_id is not None:
            layout.open_stack(item.id, location_id)

    for item_id in partial.unplaced_items(instance):
        item_type = instance.type_of(item_id)
        target = layout.cheapest(
            s for s in layout.stacks_of_type(item_type.id) if layout.can_push(s, item_id)
        )
        if target is None:
            _LOGGER.debug("No open %s stack left for item %s", item_type.id, item_id)
            return None
        layout.push(target.key, item_id)

    return layout.to_solution()


def eligible_movers(solution: WopSolution, instance: Instance) -> list[str]:
    """Return ground items of stackable types with nothing above them, by id."""
    stacks = solution.stacks()
    return sorted(
        item_id
        for item_id in solution.ground_items()
        if len(stacks[solution.placement(item_id).stack]) == 1
        and instance.type_of(item_id).stackable
    )


def create_mutant(
    solution: WopSolution,
    instance: Instance,
    mutant_probability: float,
    rng: np.random.Generator,
) -> WopSolution:
    """Move lone ground items onto other stacks at random.

    Every eligible mover draws exactly one coin. On success it goes on top of
    the cheapest non-full stack of its type in its own location, freeing its
    footprint; a mover that another mover landed on stays put.

    Args:
        solution: Feasible solution
        instance: Instance the solution belongs to
        mutant_probability: Success probability of each coin
        rng: Random generator

    Returns:
        Feasible solution with the same item locations

    Raises:
        InfeasibleSolutionError: If the input solution is infeasible
    """
    report = is_feasible(solution, instance)
    if not report.feasible:
        raise InfeasibleSolutionError(f"cannot mutate: {', '.join(report.rules)}")

    layout = StackLayout.from_solution(solution, instance)
    moved = 0
    for item_id in eligible_movers(solution, instance):
        if rng.random() >= mutant_probability:
            continue
        key = solution.placement(item_id).stack
        if layout.stack(key).height != 1:
            continue
        item_type = instance.type_of(item_id)
        target = layout.cheapest(
            s
            for s in layout.stacks_of_type(item_type.id, key[0])
            if s.key != key and layout.can_push(s, item_id)
        )
        if target is None:
            continue
        layout.pop(key)
        layout.push(target.key, item_id)
        moved += 1

    _LOGGER.debug("Mutant moved %d items", moved)
    return layout.to_solution()
