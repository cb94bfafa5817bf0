"""Pytest fixtures shared by the qi4wop tests."""

import pytest

from ..const import LocationKind
from ..core.models import Instance, Item, ItemType, Location, Placement, WopSolution
from ..cqm.builder import build_subwop_model
from ..cqm.model import CqmModel


def make_t1(floor_capacity: int = 10) -> Instance:
    """Return the two-location fixture instance.

    Floor(cap 10, t=5, per level 2), Shelf(cap 4, t=3, per level 1); type A
    (area 3, shelf ok, height 2), type B (area 5, floor only, height 1);
    items a1, a2, a3 of type A and b1 of type B.
    """
    return Instance(
        name="T1",
        locations=(
            Location("Floor", floor_capacity, LocationKind.FLOOR, 5, 2),
            Location("Shelf", 4, LocationKind.SHELF, 3, 1),
        ),
        item_types=(
            ItemType("A", 3, shelf_allowed=True, max_stack_height=2),
            ItemType("B", 5, shelf_allowed=False, max_stack_height=1),
        ),
        items=(Item("a1", "A"), Item("a2", "A"), Item("a3", "A"), Item("b1", "B")),
    )


def make_s1() -> WopSolution:
    """Return the fixture solution: a3 stacked on a1 on the floor, a2 on the shelf."""
    return WopSolution(
        {
            "b1": Placement("Floor", 0, 0),
            "a1": Placement("Floor", 1, 0),
            "a3": Placement("Floor", 1, 1),
            "a2": Placement("Shelf", 0, 0),
        }
    )


@pytest.fixture
def t1_instance() -> Instance:
    """Return the T1 instance."""
    return make_t1()


@pytest.fixture
def t1_wide() -> Instance:
    """Return T1 with a floor big enough for a3 on its own footprint."""
    return make_t1(floor_capacity=13)


@pytest.fixture
def s1_solution() -> WopSolution:
    """Return the S1 solution of T1."""
    return make_s1()


@pytest.fixture
def t1_minimum() -> WopSolution:
    """Return the (1,1)-optimal solution of T1: a3 stacked on the shelf."""
    return WopSolution(
        {
            "b1": Placement("Floor", 0, 0),
            "a1": Placement("Floor", 1, 0),
            "a2": Placement("Shelf", 0, 0),
            "a3": Placement("Shelf", 0, 1),
        }
    )


@pytest.fixture
def t1_model(t1_instance) -> CqmModel:
    """Return the sub-WOP model of T1."""
    return build_subwop_model(t1_instance)
