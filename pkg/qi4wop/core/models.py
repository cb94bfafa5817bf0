"""Data models for the Warehouse Optimization Problem."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterator, Mapping, Optional

from ..const import LocationKind


@dataclass(frozen=True)
class Location:
    """A storage location (floor area or shelf)."""

    id: str
    capacity: int
    kind: LocationKind
    base_place_time: int = 0
    per_level_time: int = 0

    @property
    def is_shelf(self) -> bool:
        """Check if location is a shelf."""
        return self.kind == LocationKind.SHELF

    def place_time(self, level: int) -> int:
        """Return the time needed to place one item at the given level."""
        return self.base_place_time + level * self.per_level_time

    def to_dict(self) -> dict[str, Any]:
        """Convert location to dictionary."""
        return {
            "id": self.id,
            "capacity": self.capacity,
            "kind": self.kind.value,
            "base_place_time": self.base_place_time,
            "per_level_time": self.per_level_time,
        }


@dataclass(frozen=True)
class ItemType:
    """An item type shared by interchangeable items."""

    id: str
    area: int
    shelf_allowed: bool = True
    max_stack_height: int = 1

    @property
    def stackable(self) -> bool:
        """Check if items of this type can be stacked."""
        return self.max_stack_height > 1

    def to_dict(self) -> dict[str, Any]:
        """Convert item type to dictionary."""
        return {
            "id": self.id,
            "area": self.area,
            "shelf_allowed": self.shelf_allowed,
            "max_stack_height": self.max_stack_height,
        }


@dataclass(frozen=True)
class Item:
    """An item to store."""

    id: str
    type_id: str

    def to_dict(self) -> dict[str, Any]:
        """Convert item to dictionary."""
        return {"id": self.id, "type": self.type_id}


@dataclass(frozen=True)
class Instance:
    """A WOP problem statement.

    Lookups assume the instance passed ``validate_instance``; on duplicate ids
    the last definition wins.
    """

    name: str
    locations: tuple[Location, ...]
    item_types: tuple[ItemType, ...]
    items: tuple[Item, ...]

    @cached_property
    def _locations_by_id(self) -> dict[str, Location]:
        return {location.id: location for location in self.locations}

    @cached_property
    def _types_by_id(self) -> dict[str, ItemType]:
        return {item_type.id: item_type for item_type in self.item_types}

    @cached_property
    def _items_by_id(self) -> dict[str, Item]:
        return {item.id: item for item in self.items}

    def has_location(self, location_id: str) -> bool:
        """Check if a location id exists."""
        return location_id in self._locations_by_id

    def has_item(self, item_id: str) -> bool:
        """Check if an item id exists."""
        return item_id in self._items_by_id

    def location(self, location_id: str) -> Location:
        """Return location by id (KeyError if unknown)."""
        return self._locations_by_id[location_id]

    def item_type(self, type_id: str) -> ItemType:
        """Return item type by id (KeyError if unknown)."""
        return self._types_by_id[type_id]

    def item(self, item_id: str) -> Item:
        """Return item by id (KeyError if unknown)."""
        return self._items_by_id[item_id]

    def type_of(self, item_id: str) -> ItemType:
        """Return the type of an item."""
        return self._types_by_id[self._items_by_id[item_id].type_id]

    def eligible(self, item_id: str, location_id: str) -> bool:
        """Check if an item may be placed at a location.

        Shelf locations only accept shelf-allowed types; floors accept all.
        """
        location = self.location(location_id)
        return not location.is_shelf or self.type_of(item_id).shelf_allowed

    def eligible_locations(self, item_id: str) -> list[Location]:
        """Return the locations an item may be placed at, in instance order."""
        return [loc for loc in self.locations if self.eligible(item_id, loc.id)]

    @property
    def total_capacity(self) -> int:
        """Return the sum of all location capacities."""
        return sum(location.capacity for location in self.locations)

    def to_dict(self) -> dict[str, Any]:
        """Convert instance to the instance file document."""
        return {
            "name": self.name,
            "locations": [location.to_dict() for location in self.locations],
            "item_types": [item_type.to_dict() for item_type in self.item_types],
            "items": [item.to_dict() for item in self.items],
        }


@dataclass(frozen=True, order=True)
class Placement:
    """Where one item sits: location, footprint within it, and height level."""

    location_id: str
    stack_slot: int = 0
    level: int = 0

    @property
    def stack(self) -> tuple[str, int]:
        """Return the (location, slot) key of the stack holding the item."""
        return (self.location_id, self.stack_slot)

    def to_dict(self) -> dict[str, Any]:
        """Convert placement to dictionary."""
        return {
            "location": self.location_id,
            "slot": self.stack_slot,
            "level": self.level,
        }


@dataclass(frozen=True)
class WopSolution:
    """A complete placement of every item."""

    assignments: Mapping[str, Placement]

    def __iter__(self) -> Iterator[tuple[str, Placement]]:
        return iter(self.assignments.items())

    def __len__(self) -> int:
        return len(self.assignments)

    def placement(self, item_id: str) -> Placement:
        """Return the placement of an item."""
        return self.assignments[item_id]

    def stacks(self) -> dict[tuple[str, int], list[str]]:
        """Return item ids per (location, slot), ordered bottom to top.

        Items sharing a level keep their relative order by item id.
        """
        grouped: dict[tuple[str, int], list[tuple[int, str]]] = {}
        for item_id, placement in self.assignments.items():
            grouped.setdefault(placement.stack, []).append((placement.level, item_id))
        return {
            key: [item_id for _, item_id in sorted(members)]
            for key, members in sorted(grouped.items())
        }

    def ground_items(self) -> list[str]:
        """Return ids of items at level 0."""
        return [item_id for item_id, p in self.assignments.items() if p.level == 0]

    def with_placements(self, updates: Mapping[str, Placement]) -> "WopSolution":
        """Return a copy with some placements replaced."""
        merged = dict(self.assignments)
        merged.update(updates)
        return WopSolution(merged)

    def to_dict(self) -> dict[str, Any]:
        """Convert solution to the solution file document."""
        return {
            item_id: placement.to_dict()
            for item_id, placement in sorted(self.assignments.items())
        }


@dataclass(frozen=True)
class PartialSolution:
    """A ground-level assignment; unmapped or None means unplaced."""

    assignments: Mapping[str, Optional[str]]

    def location_of(self, item_id: str) -> Optional[str]:
        """Return the location of an item or None if unplaced."""
        return self.assignments.get(item_id)

    def placed_items(self) -> list[str]:
        """Return ids of placed items."""
        return [item_id for item_id, loc in self.assignments.items() if loc is not None]

    def unplaced_items(self, instance: Instance) -> list[str]:
        """Return ids of unplaced items in instance order."""
        return [
            item.id for item in instance.items if self.assignments.get(item.id) is None
        ]

    def to_dict(self) -> dict[str, Optional[str]]:
        """Convert partial solution to dictionary."""
        return dict(sorted(self.assignments.items()))


@dataclass(frozen=True)
class Violation:
    """A single broken rule."""

    rule: str
    detail: str

    def to_dict(self) -> dict[str, str]:
        """Convert violation to dictionary."""
        return {"rule": self.rule, "detail": self.detail}


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of a validation or feasibility check."""

    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def feasible(self) -> bool:
        """Check if no rule was broken."""
        return not self.violations

    @property
    def rules(self) -> list[str]:
        """Return the broken rule identifiers."""
        return [violation.rule for violation in self.violations]

    def to_dict(self) -> dict[str, Any]:
        """Convert report to dictionary."""
        return {
            "feasible": self.feasible,
            "violations": [violation.to_dict() for violation in self.violations],
        }
