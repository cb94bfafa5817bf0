"""Warehouse Optimization Problem domain model."""

from .feasibility import check_partial, is_feasible, validate_instance
from .io import (
    dump_instance,
    dump_solution,
    load_instance,
    load_solution,
    parse_instance,
    solution_from_dict,
    solution_to_dict,
)
from .layout import Stack, StackLayout
from .models import (
    FeasibilityReport,
    Instance,
    Item,
    ItemType,
    Location,
    PartialSolution,
    Placement,
    Violation,
    WopSolution,
)
from .objectives import (
    canonical_key,
    objective_o1,
    objective_o2,
    occupied_area,
    scalarize,
    solution_fingerprint,
    storage_time,
    to_fraction,
)

__all__ = [
    # Models
    "FeasibilityReport",
    "Instance",
    "Item",
    "ItemType",
    "Location",
    "PartialSolution",
    "Placement",
    "Violation",
    "WopSolution",
    "Stack",
    "StackLayout",
    # Checks
    "check_partial",
    "is_feasible",
    "validate_instance",
    # Objectives
    "canonical_key",
    "objective_o1",
    "objective_o2",
    "occupied_area",
    "scalarize",
    "solution_fingerprint",
    "storage_time",
    "to_fraction",
    # Files
    "dump_instance",
    "dump_solution",
    "load_instance",
    "load_solution",
    "parse_instance",
    "solution_from_dict",
    "solution_to_dict",
]
