"""Mutable stack layout used while building or editing solutions."""

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .models import Instance, Placement, WopSolution

StackKey = tuple[str, int]


@dataclass
class Stack:
    """Items of one type piled on one footprint, bottom first."""

    location_id: str
    slot: int
    type_id: str
    items: list[str] = field(default_factory=list)

    @property
    def key(self) -> StackKey:
        """Return the (location, slot) key."""
        return (self.location_id, self.slot)

    @property
    def height(self) -> int:
        """Return the number of items in the stack."""
        return len(self.items)

    @property
    def top(self) -> str:
        """Return the id of the top item."""
        return self.items[-1]


class StackLayout:
    """Working copy of a placement that keeps every rule intact.

    Only ``open_stack`` consumes ground area; callers check ``can_open`` and
    ``can_push`` before mutating.
    """

    def __init__(self, instance: Instance) -> None:
        """Initialize an empty layout for an instance."""
        self.instance = instance
        self._stacks: dict[StackKey, Stack] = {}
        self._ground: Counter[str] = Counter()
        self._next_slot: Counter[str] = Counter()

    @classmethod
    def from_solution(cls, solution: WopSolution, instance: Instance) -> "StackLayout":
        """Build a layout from a feasible solution, keeping its slot labels."""
        layout = cls(instance)
        for (location_id, slot), members in solution.stacks().items():
            stack = Stack(location_id, slot, instance.item(members[0]).type_id, list(members))
            layout._stacks[stack.key] = stack
            layout._ground[location_id] += instance.item_type(stack.type_id).area
            layout._next_slot[location_id] = max(layout._next_slot[location_id], slot + 1)
        return layout

    def copy(self) -> "StackLayout":
        """Return an independent copy."""
        clone = StackLayout(self.instance)
        clone._stacks = {
            key: Stack(s.location_id, s.slot, s.type_id, list(s.items))
            for key, s in self._stacks.items()
        }
        clone._ground = Counter(self._ground)
        clone._next_slot = Counter(self._next_slot)
        return clone

    def residual(self, location_id: str) -> int:
        """Return the free ground area of a location."""
        return self.instance.location(location_id).capacity - self._ground[location_id]

    def stacks(self) -> list[Stack]:
        """Return all stacks ordered by (location, slot)."""
        return [self._stacks[key] for key in sorted(self._stacks)]

    def stack(self, key: StackKey) -> Stack:
        """Return a stack by key."""
        return self._stacks[key]

    def stacks_of_type(
        self, type_id: str, location_id: Optional[str] = None
    ) -> list[Stack]:
        """Return stacks of one type, optionally restricted to a location."""
        return [
            s
            for s in self.stacks()
            if s.type_id == type_id and (location_id is None or s.location_id == location_id)
        ]

    def stack_area(self, stack: Stack) -> int:
        """Return the ground footprint of a stack."""
        return self.instance.item_type(stack.type_id).area

    def can_open(self, item_id: str, location_id: str) -> bool:
        """Check if an item may start a new stack at a location."""
        return (
            self.instance.eligible(item_id, location_id)
            and self.residual(location_id) >= self.instance.type_of(item_id).area
        )

    def can_push(self, stack: Stack, item_id: str) -> bool:
        """Check if an item may go on top of a stack."""
        item_type = self.instance.type_of(item_id)
        return stack.type_id == item_type.id and stack.height < item_type.max_stack_height

    def open_stack(self, item_id: str, location_id: str) -> Stack:
        """Put an item on a new footprint at a location."""
        slot = self._next_slot[location_id]
        self._next_slot[location_id] += 1
        stack = Stack(location_id, slot, self.instance.item(item_id).type_id, [item_id])
        self._stacks[stack.key] = stack
        self._ground[location_id] += self.instance.type_of(item_id).area
        return stack

    def push(self, key: StackKey, item_id: str) -> int:
        """Put an item on top of a stack and return its level."""
        stack = self._stacks[key]
        stack.items.append(item_id)
        return stack.height - 1

    def pop(self, key: StackKey) -> str:
        """Remove the top item of a stack; empty stacks free their footprint."""
        stack = self._stacks[key]
        item_id = stack.items.pop()
        if not stack.items:
            del self._stacks[key]
            self._ground[stack.location_id] -= self.instance.item_type(stack.type_id).area
        return item_id

    def move_stack(self, key: StackKey, location_id: str) -> Stack:
        """Relocate a whole stack to a new footprint at another location."""
        stack = self._stacks.pop(key)
        area = self.instance.item_type(stack.type_id).area
        self._ground[stack.location_id] -= area
        slot = self._next_slot[location_id]
        self._next_slot[location_id] += 1
        moved = Stack(location_id, slot, stack.type_id, stack.items)
        self._stacks[moved.key] = moved
        self._ground[location_id] += area
        return moved

    def cheapest(self, stacks: Iterable[Stack]) -> Optional[Stack]:
        """Return the stack whose next level is cheapest to fill.

        Ordered by the location's per-level time, then location id, then slot.
        """
        return min(
            stacks,
            key=lambda s: (
                self.instance.location(s.location_id).per_level_time,
                s.location_id,
                s.slot,
            ),
            default=None,
        )

    def to_solution(self) -> WopSolution:
        """Freeze the layout into a solution."""
        assignments = {
            item_id: Placement(stack.location_id, stack.slot, level)
            for stack in self.stacks()
            for level, item_id in enumerate(stack.items)
        }
        return WopSolution(assignments)
