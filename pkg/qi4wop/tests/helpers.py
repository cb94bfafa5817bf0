"""Independent brute-force oracles and instance factories for tests."""

import itertools
from fractions import Fraction
from typing import Iterator, Optional

from ..bench.generator import InstanceSpec, generate_instance
from ..core.feasibility import is_feasible
from ..core.models import Instance, Placement, WopSolution
from ..core.objectives import occupied_area, scalarize, storage_time
from ..cqm.model import CqmModel, evaluate


def enumerate_optimum(model: CqmModel) -> tuple[Optional[Fraction], int]:
    """Return the best feasible objective and how many assignments reach it."""
    ids = [variable.id for variable in model.variables]
    best, count = None, 0
    for bits in itertools.product((0, 1), repeat=len(ids)):
        evaluation = evaluate(model, dict(zip(ids, bits)))
        if not evaluation.feasible:
            continue
        if best is None or evaluation.objective_value < best:
            best, count = evaluation.objective_value, 1
        elif evaluation.objective_value == best:
            count += 1
    return best, count


def brute_force_optimum(model: CqmModel) -> Optional[Fraction]:
    """Return the best feasible objective over all 0/1 assignments."""
    return enumerate_optimum(model)[0]


def all_solutions(instance: Instance) -> Iterator[WopSolution]:
    """Yield every complete placement, feasible or not, up to slot labels.

    Each item either opens a new footprint at some location or goes on top of
    an existing footprint.
    """
    items = [item.id for item in instance.items]

    def extend(index: int, stacks: list[tuple[str, list[str]]]) -> Iterator[WopSolution]:
        if index == len(items):
            assignments = {}
            slots: dict[str, int] = {}
            for location_id, members in stacks:
                slot = slots.get(location_id, 0)
                slots[location_id] = slot + 1
                for level, item_id in enumerate(members):
                    assignments[item_id] = Placement(location_id, slot, level)
            yield WopSolution(assignments)
            return
        item_id = items[index]
        for location in instance.locations:
            yield from extend(index + 1, stacks + [(location.id, [item_id])])
        for position, (location_id, members) in enumerate(stacks):
            grown = list(stacks)
            grown[position] = (location_id, members + [item_id])
            yield from extend(index + 1, grown)

    yield from extend(0, [])


def brute_force_min_score(instance: Instance, weights=(1, 1)) -> Optional[Fraction]:
    """Return the lowest scalarized score over every feasible solution."""
    best = None
    for solution in all_solutions(instance):
        if not is_feasible(solution, instance).feasible:
            continue
        score = scalarize(
            storage_time(solution, instance), occupied_area(solution, instance), weights
        )
        if best is None or score < best:
            best = score
    return best


def small_instances(count: int, seed: int = 0, max_items: int = 4) -> list[Instance]:
    """Return generated instances with at most 3 locations and ``max_items`` items."""
    instances = []
    for index in range(count):
        locations = 1 + index % 3
        items = 1 + (index // 3) % max_items
        types = 1 + index % min(2, items)
        instances.append(
            generate_instance(
                InstanceSpec(
                    num_locations=locations,
                    num_items=items,
                    num_types=types,
                    seed=seed + index,
                )
            )
        )
    return instances
