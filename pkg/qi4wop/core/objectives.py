"""Objective functions, scalarization and canonical solution keys."""

import json
from fractions import Fraction
from typing import Union

from cryptography.hazmat.primitives import hashes

from ..exceptions import InfeasibleSolutionError, InvalidWeightsError
from .feasibility import is_feasible
from .models import Instance, WopSolution

Number = Union[int, float, Fraction]


def to_fraction(value: Number) -> Fraction:
    """Convert a number to an exact fraction.

    Floats go through their shortest decimal repr so 0.1 becomes 1/10.
    """
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def _require_feasible(solution: WopSolution, instance: Instance) -> None:
    report = is_feasible(solution, instance)
    if not report.feasible:
        raise InfeasibleSolutionError(
            "; ".join(violation.detail for violation in report.violations)
        )


def storage_time(solution: WopSolution, instance: Instance) -> int:
    """Return o1 without a feasibility check."""
    return sum(
        instance.location(p.location_id).place_time(p.level) for _, p in solution
    )


def occupied_area(solution: WopSolution, instance: Instance) -> int:
    """Return o2 without a feasibility check."""
    return sum(instance.type_of(item_id).area for item_id, p in solution if p.level == 0)


def objective_o1(solution: WopSolution, instance: Instance) -> int:
    """Return the total storage time of a feasible solution in seconds.

    Raises:
        InfeasibleSolutionError: If the solution breaks a placement rule
        MalformedSolutionError: If the solution references unknown ids
    """
    _require_feasible(solution, instance)
    return storage_time(solution, instance)


def objective_o2(solution: WopSolution, instance: Instance) -> int:
    """Return the ground area occupied by a feasible solution.

    Raises:
        InfeasibleSolutionError: If the solution breaks a placement rule
        MalformedSolutionError: If the solution references unknown ids
    """
    _require_feasible(solution, instance)
    return occupied_area(solution, instance)


def scalarize(o1: Number, o2: Number, weights: tuple[Number, Number]) -> Fraction:
    """Combine both objectives into one score, ``w1*o1 + w2*o2``.

    Raises:
        InvalidWeightsError: If a weight is negative or both are zero
    """
    w1, w2 = (to_fraction(weight) for weight in weights)
    if w1 < 0 or w2 < 0:
        raise InvalidWeightsError(f"weights must be non-negative, got ({w1}, {w2})")
    if w1 == 0 and w2 == 0:
        raise InvalidWeightsError("weights must not both be zero")
    return w1 * to_fraction(o1) + w2 * to_fraction(o2)


def canonical_key(solution: WopSolution) -> bytes:
    """Return an encoding that ignores slot labels and iteration order.

    Per location (in id order) the sorted multiset of stacks, each stack the
    sorted list of (item id, level).
    """
    per_location: dict[str, list[list[tuple[str, int]]]] = {}
    for (location_id, _slot), members in solution.stacks().items():
        stack = sorted((item_id, solution.placement(item_id).level) for item_id in members)
        per_location.setdefault(location_id, []).append(stack)
    document = [
        [location_id, sorted(stacks)] for location_id, stacks in sorted(per_location.items())
    ]
    return json.dumps(document, separators=(",", ":")).encode()


def solution_fingerprint(key: bytes) -> str:
    """Return the hex SHA-256 digest of a canonical key."""
    digest = hashes.Hash(hashes.SHA256())
    digest.update(key)
    return digest.finalize().hex()
