"""Builder for the ground-level placement subproblem (sub-WOP)."""

import logging
from fractions import Fraction
from typing import Any, Mapping

from ..const import LABEL_CAPACITY, LABEL_MUST_PLACE, LABEL_ONE_LOCATION, LABEL_SEPARATOR
from ..core.models import Instance, PartialSolution
from ..exceptions import MultiPlacementError, StructurallyInfeasibleError
from .model import Constraint, CqmModel, LinearExpr, Sense, Variable, Vartype

_LOGGER = logging.getLogger(__name__)


def variable_id(item_id: str, location_id: str) -> str:
    """Return the id of the placement variable of an (item, location) pair."""
    return f"x[{item_id},{location_id}]"


def label(prefix: str, key: str) -> str:
    """Return a constraint label such as ``cap:L1``."""
    return f"{prefix}{LABEL_SEPARATOR}{key}"


def build_subwop_model(instance: Instance) -> CqmModel:
    """Build the sub-WOP model: place as many items as possible at ground level.

    Shelf-prohibited (item, location) pairs get no variable at all, so they can
    never be chosen.

    Args:
        instance: Validated instance

    Returns:
        Model with one binary variable per eligible pair, the placed-count
        objective and the one-location, capacity and must-place constraints

    Raises:
        StructurallyInfeasibleError: If a non-stackable item has no eligible
            location
    """
    variables: list[Variable] = []
    var_index: dict[tuple[str, str], str] = {}
    per_item: dict[str, list[str]] = {}
    per_location: dict[str, dict[str, Fraction]] = {loc.id: {} for loc in instance.locations}

    for item in instance.items:
        area = instance.type_of(item.id).area
        per_item[item.id] = []
        for location in instance.eligible_locations(item.id):
            var = variable_id(item.id, location.id)
            variables.append(Variable(var, Vartype.BINARY))
            var_index[(item.id, location.id)] = var
            per_item[item.id].append(var)
            per_location[location.id][var] = Fraction(area)

    objective = LinearExpr({var.id: Fraction(-1) for var in variables})

    constraints: list[Constraint] = []
    for item in instance.items:
        constraints.append(
            Constraint(
                label(LABEL_ONE_LOCATION, item.id),
                LinearExpr({var: Fraction(1) for var in per_item[item.id]}),
                Sense.LE,
                Fraction(1),
            )
        )
    for location in instance.locations:
        constraints.append(
            Constraint(
                label(LABEL_CAPACITY, location.id),
                LinearExpr(per_location[location.id]),
                Sense.LE,
                Fraction(location.capacity),
            )
        )
    for item in instance.items:
        if instance.type_of(item.id).stackable:
            continue
        if not per_item[item.id]:
            raise StructurallyInfeasibleError(
                f"non-stackable item {item.id!r} has no eligible location"
            )
        constraints.append(
            Constraint(
                label(LABEL_MUST_PLACE, item.id),
                LinearExpr({var: Fraction(1) for var in per_item[item.id]}),
                Sense.GE,
                Fraction(1),
            )
        )

    model = CqmModel(
        variables=tuple(variables),
        objective=objective,
        constraints=tuple(constraints),
        var_index=var_index,
        name=instance.name,
    )
    _LOGGER.debug(
        "Built sub-WOP model for %s: %d variables, %d constraints",
        instance.name,
        len(variables),
        len(constraints),
    )
    return model


def assignment_to_partial(
    assignment: Mapping[str, Any], model: CqmModel, instance: Instance
) -> PartialSolution:
    """Decode a sub-WOP assignment into a ground-level partial solution.

    Args:
        assignment: Binary value per model variable (missing means 0)
        model: Model the assignment belongs to
        instance: Instance the model was built from

    Returns:
        Partial solution; items with an all-zero row are unplaced

    Raises:
        MultiPlacementError: If an item is set at more than one location
    """
    chosen: dict[str, list[str]] = {item.id: [] for item in instance.items}
    for (item_id, location_id), var in model.var_index.items():
        if assignment.get(var, 0) == 1:
            chosen[item_id].append(location_id)

    decoded: dict[str, Any] = {}
    for item_id, locations in chosen.items():
        if len(locations) > 1:
            raise MultiPlacementError(f"item {item_id!r} placed at {sorted(locations)}")
        decoded[item_id] = locations[0] if locations else None
    return PartialSolution(decoded)
