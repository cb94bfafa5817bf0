"""First-improvement hill climbing over stack moves."""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from ..core.feasibility import is_feasible
from ..core.layout import StackKey, StackLayout
from ..core.models import Instance, WopSolution
from ..core.objectives import Number, occupied_area, scalarize, storage_time, to_fraction
from ..exceptions import InfeasibleSolutionError

_LOGGER = logging.getLogger(__name__)

RELOCATE = "relocate"
RESTACK = "restack"
UNSTACK = "unstack"


@dataclass(frozen=True)
class Move:
    """One neighbourhood move.

    ``relocate`` moves a whole stack to a new footprint at ``location_id``;
    ``restack`` moves the top item of ``source`` onto ``target``; ``unstack``
    moves the top item of ``source`` to a new footprint at ``location_id``.
    """

    kind: str
    source: StackKey
    target: Optional[StackKey] = None
    location_id: Optional[str] = None


def neighbourhood(layout: StackLayout) -> list[Move]:
    """Return every feasible move of a layout in a fixed order."""
    instance = layout.instance
    moves: list[Move] = []
    for stack in layout.stacks():
        bottom, top = stack.items[0], stack.top
        area = layout.stack_area(stack)
        for location in instance.locations:
            if location.id == stack.location_id:
                continue
            if instance.eligible(bottom, location.id) and layout.residual(location.id) >= area:
                moves.append(Move(RELOCATE, stack.key, location_id=location.id))
        for other in layout.stacks_of_type(stack.type_id):
            if other.key != stack.key and layout.can_push(other, top):
                moves.append(Move(RESTACK, stack.key, target=other.key))
        if stack.height > 1:
            for location in instance.locations:
                if layout.can_open(top, location.id):
                    moves.append(Move(UNSTACK, stack.key, location_id=location.id))
    return moves


def move_delta(layout: StackLayout, move: Move) -> tuple[int, int]:
    """Return the change of (o1, o2) a move would cause."""
    instance = layout.instance
    stack = layout.stack(move.source)
    source = instance.location(stack.location_id)
    area = layout.stack_area(stack)

    if move.kind == RELOCATE:
        target = instance.location(move.location_id)  # type: ignore[arg-type]
        levels = stack.height * (stack.height - 1) // 2
        delta_o1 = stack.height * (target.base_place_time - source.base_place_time) + levels * (
            target.per_level_time - source.per_level_time
        )
        return delta_o1, 0

    removed = source.place_time(stack.height - 1)
    if move.kind == RESTACK:
        other = layout.stack(move.target)  # type: ignore[arg-type]
        added = instance.location(other.location_id).place_time(other.height)
        return added - removed, -area if stack.height == 1 else 0

    added = instance.location(move.location_id).base_place_time  # type: ignore[arg-type]
    return added - removed, area


def apply_move(layout: StackLayout, move: Move) -> None:
    """Apply a move in place."""
    if move.kind == RELOCATE:
        layout.move_stack(move.source, move.location_id)  # type: ignore[arg-type]
        return
    item_id = layout.pop(move.source)
    if move.kind == RESTACK:
        layout.push(move.target, item_id)  # type: ignore[arg-type]
    else:
        layout.open_stack(item_id, move.location_id)  # type: ignore[arg-type]


def local_search(
    start: WopSolution,
    instance: Instance,
    budget_ms: int,
    weights: tuple[Number, Number],
    rng: np.random.Generator,
) -> WopSolution:
    """Improve a feasible solution until no move helps or the budget ends.

    Moves are scanned in a freshly shuffled order each round and the first one
    that strictly lowers ``scalarize(o1, o2, weights)`` is taken.

    Args:
        start: Feasible solution
        instance: Instance the solution belongs to
        budget_ms: Wall-time budget; 0 returns ``start``
        weights: Objective weights
        rng: Random generator for the scan order

    Returns:
        Feasible solution scoring no worse than ``start``

    Raises:
        InfeasibleSolutionError: If ``start`` is infeasible
        InvalidWeightsError: If the weights are invalid
    """
    report = is_feasible(start, instance)
    if not report.feasible:
        raise InfeasibleSolutionError(f"cannot search from: {', '.join(report.rules)}")
    w1, w2 = (to_fraction(weight) for weight in weights)
    score: Union[Fraction, int] = scalarize(
        storage_time(start, instance), occupied_area(start, instance), (w1, w2)
    )
    if budget_ms <= 0:
        return start

    deadline = time.perf_counter() + budget_ms / 1000
    layout = StackLayout.from_solution(start, instance)
    accepted = 0
    improved = True
    while improved and time.perf_counter() < deadline:
        improved = False
        moves = neighbourhood(layout)
        for index in rng.permutation(len(moves)):
            if time.perf_counter() >= deadline:
                break
            move = moves[int(index)]
            delta_o1, delta_o2 = move_delta(layout, move)
            delta = w1 * delta_o1 + w2 * delta_o2
            if delta < 0:
                apply_move(layout, move)
                score += delta
                accepted += 1
                improved = True
                break

    if accepted == 0:
        return start
    _LOGGER.debug("Local search accepted %d moves, score %s", accepted, score)
    return layout.to_solution()
