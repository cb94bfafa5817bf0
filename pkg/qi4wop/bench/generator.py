"""Seeded generator of ``LX_IY_TZ`` instances with a feasibility witness."""

import logging
from fractions import Fraction
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..baseline.initialization import random_feasible_solution
from ..const import (
    DEFAULT_AREA_RANGE,
    DEFAULT_BASE_TIME_RANGE,
    DEFAULT_CAPACITY_FILL_RATIO,
    DEFAULT_HEIGHT_RANGE,
    DEFAULT_PER_LEVEL_TIME_RANGE,
    DEFAULT_SHELF_ALLOWED_FRACTION,
    DEFAULT_SHELF_FRACTION,
    DEFAULT_STACKABLE_FRACTION,
    GENERATOR_MAX_RESAMPLES,
    PUBLISHED_SHAPES,
    LocationKind,
)
from ..core.feasibility import is_feasible, validate_instance
from ..core.layout import StackLayout
from ..core.models import Instance, Item, ItemType, Location, WopSolution
from ..core.objectives import to_fraction
from ..exceptions import GeneratorInfeasibleError

_LOGGER = logging.getLogger(__name__)

IntRange = tuple[int, int]


class InstanceSpec(BaseModel):
    """Shape and attribute ranges of a generated instance."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    num_locations: int = Field(ge=1)
    num_items: int = Field(ge=1)
    num_types: int = Field(ge=1)
    capacity_fill_ratio: float = Field(DEFAULT_CAPACITY_FILL_RATIO, gt=0)
    shelf_fraction: float = Field(DEFAULT_SHELF_FRACTION, ge=0, le=1)
    shelf_allowed_fraction: float = Field(DEFAULT_SHELF_ALLOWED_FRACTION, ge=0, le=1)
    stackable_fraction: float = Field(DEFAULT_STACKABLE_FRACTION, ge=0, le=1)
    height_range: IntRange = DEFAULT_HEIGHT_RANGE
    area_range: IntRange = DEFAULT_AREA_RANGE
    base_time_range: IntRange = DEFAULT_BASE_TIME_RANGE
    per_level_time_range: IntRange = DEFAULT_PER_LEVEL_TIME_RANGE
    seed: int = Field(0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_ranges(self) -> "InstanceSpec":
        if self.num_types > self.num_items:
            raise ValueError("num_types must not exceed num_items")
        minimum = {
            "height_range": 2,
            "area_range": 1,
            "base_time_range": 0,
            "per_level_time_range": 0,
        }
        for name, floor in minimum.items():
            low, high = getattr(self, name)
            if low < floor or low > high:
                raise ValueError(f"{name} must satisfy {floor} <= min <= max, got {(low, high)}")
        return self

    @property
    def name(self) -> str:
        """Return the ``LX_IY_TZ`` instance name."""
        return f"L{self.num_locations}_I{self.num_items}_T{self.num_types}"


def published_suite(seed: int = 0) -> list[InstanceSpec]:
    """Return specs with the shapes of the published first-phase instances."""
    return [
        InstanceSpec(num_locations=x, num_items=y, num_types=z, seed=seed)
        for x, y, z in PUBLISHED_SHAPES
    ]


def largest_remainder(total: int, weights: list[float]) -> list[int]:
    """Split ``total`` units in proportion to ``weights``.

    Leftover units go to the largest fractional remainders, earlier entries
    first on ties.
    """
    exact = [to_fraction(w) for w in weights]
    scale = sum(exact, Fraction(0))
    quotas = [total * w / scale for w in exact]
    shares = [int(q) for q in quotas]
    order = sorted(range(len(quotas)), key=lambda i: (-(quotas[i] - shares[i]), i))
    for i in order[: total - sum(shares)]:
        shares[i] += 1
    return shares


def _draw(rng: np.random.Generator, bounds: IntRange) -> int:
    return int(rng.integers(bounds[0], bounds[1] + 1))


def _draw_instance(spec: InstanceSpec, rng: np.random.Generator) -> Instance:
    width = max(3, len(str(spec.num_items)))

    item_types = []
    for index in range(spec.num_types):
        stackable = rng.random() < spec.stackable_fraction
        item_types.append(
            ItemType(
                id=f"T{index + 1}",
                area=_draw(rng, spec.area_range),
                shelf_allowed=bool(rng.random() < spec.shelf_allowed_fraction),
                max_stack_height=_draw(rng, spec.height_range) if stackable else 1,
            )
        )

    type_order = rng.permutation([index % spec.num_types for index in range(spec.num_items)])
    items = tuple(
        Item(id=f"I{index + 1:0{width}d}", type_id=item_types[int(t)].id)
        for index, t in enumerate(type_order)
    )

    total_area = sum(item_types[int(t)].area for t in type_order)
    target = round(to_fraction(spec.capacity_fill_ratio) * total_area)
    target = max(spec.num_locations, target)
    shares = largest_remainder(
        target - spec.num_locations, [float(w) for w in rng.random(spec.num_locations) + 0.5]
    )

    locations = []
    for index, share in enumerate(shares):
        kind = LocationKind.SHELF if rng.random() < spec.shelf_fraction else LocationKind.FLOOR
        locations.append(
            Location(
                id=f"L{index + 1}",
                capacity=1 + share,
                kind=kind,
                base_place_time=_draw(rng, spec.base_time_range),
                per_level_time=_draw(rng, spec.per_level_time_range),
            )
        )

    return Instance(
        name=spec.name,
        locations=tuple(locations),
        item_types=tuple(item_types),
        items=items,
    )


def packed_witness(instance: Instance) -> Optional[WopSolution]:
    """Stack every type as tall as allowed and pack footprints first-fit.

    Footprints are packed largest area first into the first eligible location
    with room, in instance order.

    Returns:
        Feasible solution, or None if the footprints do not fit
    """
    layout = StackLayout(instance)
    by_type: dict[str, list[str]] = {t.id: [] for t in instance.item_types}
    for item in instance.items:
        by_type[item.type_id].append(item.id)

    for item_type in sorted(instance.item_types, key=lambda t: (-t.area, t.id)):
        members = by_type[item_type.id]
        height = item_type.max_stack_height
        for start in range(0, len(members), height):
            pile = members[start : start + height]
            location = next(
                (
                    loc
                    for loc in instance.eligible_locations(pile[0])
                    if layout.can_open(pile[0], loc.id)
                ),
                None,
            )
            if location is None:
                return None
            stack = layout.open_stack(pile[0], location.id)
            for item_id in pile[1:]:
                layout.push(stack.key, item_id)
    return layout.to_solution()


def generate_instance_with_witness(spec: InstanceSpec) -> tuple[Instance, WopSolution]:
    """Generate an instance together with one feasible solution of it.

    Draws are resampled until the instance validates and a witness is found
    by packing or by random construction.

    Raises:
        GeneratorInfeasibleError: If no draw succeeds within the resample limit
    """
    rng = np.random.default_rng(spec.seed)
    for attempt in range(GENERATOR_MAX_RESAMPLES):
        instance = _draw_instance(spec, rng)
        if not validate_instance(instance).feasible:
            continue
        witness = packed_witness(instance)
        if witness is None:
            witness = random_feasible_solution(instance, rng)
        if witness is not None and is_feasible(witness, instance).feasible:
            _LOGGER.debug("Generated %s after %d resamples", instance.name, attempt)
            return instance, witness
    _LOGGER.error("No feasible %s instance in %d draws", spec.name, GENERATOR_MAX_RESAMPLES)
    raise GeneratorInfeasibleError(
        f"no feasible {spec.name} instance after {GENERATOR_MAX_RESAMPLES} draws"
    )


def generate_instance(spec: InstanceSpec) -> Instance:
    """Generate a feasible-admitting instance; see ``generate_instance_with_witness``."""
    instance, _ = generate_instance_with_witness(spec)
    return instance
