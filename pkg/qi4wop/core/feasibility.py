"""Instance validation and solution feasibility checks."""

import logging
from collections import Counter

from ..const import (
    RULE_CAPACITY,
    RULE_DANGLING_TYPE,
    RULE_DUPLICATE_ID,
    RULE_INVALID_STACK_HEIGHT,
    RULE_MISSING_ITEM,
    RULE_NEGATIVE_TIME,
    RULE_NO_ITEMS,
    RULE_NO_LOCATIONS,
    RULE_NON_POSITIVE_AREA,
    RULE_NON_POSITIVE_CAPACITY,
    RULE_SHELF_PROHIBITED,
    RULE_STACK_CONTIGUITY,
    RULE_STACK_HEIGHT,
    RULE_STACK_MIXED_TYPES,
)
from ..exceptions import MalformedSolutionError
from .models import FeasibilityReport, Instance, PartialSolution, Violation, WopSolution

_LOGGER = logging.getLogger(__name__)


def _duplicates(ids: list[str]) -> list[str]:
    return sorted(key for key, count in Counter(ids).items() if count > 1)


def validate_instance(instance: Instance) -> FeasibilityReport:
    """Check an instance against the structural rules of the problem.

    Args:
        instance: Instance to check

    Returns:
        Report listing every problem found (empty when valid)
    """
    violations: list[Violation] = []

    if not instance.locations:
        violations.append(Violation(RULE_NO_LOCATIONS, "instance has no locations"))
    if not instance.items:
        violations.append(Violation(RULE_NO_ITEMS, "instance has no items"))

    for kind, ids in (
        ("location", [loc.id for loc in instance.locations]),
        ("item type", [t.id for t in instance.item_types]),
        ("item", [item.id for item in instance.items]),
    ):
        for duplicate in _duplicates(ids):
            violations.append(
                Violation(RULE_DUPLICATE_ID, f"{kind} id {duplicate!r} is not unique")
            )

    for location in instance.locations:
        if location.capacity < 1:
            violations.append(
                Violation(
                    RULE_NON_POSITIVE_CAPACITY,
                    f"location {location.id!r} has capacity {location.capacity}",
                )
            )
        if location.base_place_time < 0 or location.per_level_time < 0:
            violations.append(
                Violation(
                    RULE_NEGATIVE_TIME,
                    f"location {location.id!r} has a negative placement time",
                )
            )

    type_ids = {item_type.id for item_type in instance.item_types}
    for item_type in instance.item_types:
        if item_type.area < 1:
            violations.append(
                Violation(
                    RULE_NON_POSITIVE_AREA,
                    f"item type {item_type.id!r} has area {item_type.area}",
                )
            )
        if item_type.max_stack_height < 1:
            violations.append(
                Violation(
                    RULE_INVALID_STACK_HEIGHT,
                    f"item type {item_type.id!r} has max_stack_height "
                    f"{item_type.max_stack_height}",
                )
            )

    for item in instance.items:
        if item.type_id not in type_ids:
            violations.append(
                Violation(
                    RULE_DANGLING_TYPE,
                    f"item {item.id!r} references unknown type {item.type_id!r}",
                )
            )

    report = FeasibilityReport(tuple(violations))
    if not report.feasible:
        _LOGGER.debug(
            "Instance %s failed validation: %s", instance.name, ", ".join(report.rules)
        )
    return report


def is_feasible(solution: WopSolution, instance: Instance) -> FeasibilityReport:
    """Check a complete solution against every placement rule.

    Args:
        solution: Solution to check
        instance: Validated instance the solution belongs to

    Returns:
        Report listing every broken rule

    Raises:
        MalformedSolutionError: If the solution references unknown items or
            locations, or uses negative slots or levels
    """
    for item_id, placement in solution:
        if not instance.has_item(item_id):
            raise MalformedSolutionError(f"unknown item {item_id!r}")
        if not instance.has_location(placement.location_id):
            raise MalformedSolutionError(
                f"item {item_id!r} placed at unknown location {placement.location_id!r}"
            )
        if placement.stack_slot < 0 or placement.level < 0:
            raise MalformedSolutionError(
                f"item {item_id!r} has negative slot or level"
            )

    violations: list[Violation] = []

    for item in instance.items:
        if item.id not in solution.assignments:
            violations.append(Violation(RULE_MISSING_ITEM, f"item {item.id!r} is unplaced"))

    for item_id, placement in solution:
        item_type = instance.type_of(item_id)
        if placement.level >= item_type.max_stack_height:
            violations.append(
                Violation(
                    RULE_STACK_HEIGHT,
                    f"item {item_id!r} at level {placement.level} exceeds height "
                    f"{item_type.max_stack_height} of type {item_type.id!r}",
                )
            )
        if not instance.eligible(item_id, placement.location_id):
            violations.append(
                Violation(
                    RULE_SHELF_PROHIBITED,
                    f"item {item_id!r} of type {item_type.id!r} is on shelf "
                    f"{placement.location_id!r}",
                )
            )

    for (location_id, slot), members in solution.stacks().items():
        type_ids = {instance.item(item_id).type_id for item_id in members}
        if len(type_ids) > 1:
            violations.append(
                Violation(
                    RULE_STACK_MIXED_TYPES,
                    f"stack {location_id}/{slot} mixes types {sorted(type_ids)}",
                )
            )
        levels = sorted(solution.placement(item_id).level for item_id in members)
        if levels != list(range(len(members))):
            violations.append(
                Violation(
                    RULE_STACK_CONTIGUITY,
                    f"stack {location_id}/{slot} has levels {levels}",
                )
            )

    ground_area: Counter[str] = Counter()
    for item_id, placement in solution:
        if placement.level == 0:
            ground_area[placement.location_id] += instance.type_of(item_id).area
    for location in instance.locations:
        if ground_area[location.id] > location.capacity:
            violations.append(
                Violation(
                    RULE_CAPACITY,
                    f"location {location.id!r} holds area {ground_area[location.id]} "
                    f"> capacity {location.capacity}",
                )
            )

    return FeasibilityReport(tuple(violations))


def check_partial(partial: PartialSolution, instance: Instance) -> FeasibilityReport:
    """Check a ground-level partial solution.

    Args:
        partial: Partial solution to check
        instance: Validated instance

    Returns:
        Report of shelf-eligibility and capacity problems

    Raises:
        MalformedSolutionError: If unknown items or locations are referenced
    """
    violations: list[Violation] = []
    load: Counter[str] = Counter()

    for item_id, location_id in partial.assignments.items():
        if not instance.has_item(item_id):
            raise MalformedSolutionError(f"unknown item {item_id!r}")
        if location_id is None:
            continue
        if not instance.has_location(location_id):
            raise MalformedSolutionError(
                f"item {item_id!r} placed at unknown location {location_id!r}"
            )
        if not instance.eligible(item_id, location_id):
            violations.append(
                Violation(
                    RULE_SHELF_PROHIBITED,
                    f"item {item_id!r} is on shelf {location_id!r}",
                )
            )
        load[location_id] += instance.type_of(item_id).area

    for location in instance.locations:
        if load[location.id] > location.capacity:
            violations.append(
                Violation(
                    RULE_CAPACITY,
                    f"location {location.id!r} holds area {load[location.id]} "
                    f"> capacity {location.capacity}",
                )
            )

    return FeasibilityReport(tuple(violations))
