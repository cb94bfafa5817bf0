"""Deduplicated populations of feasible solutions."""

import logging
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

from ..core.feasibility import is_feasible
from ..core.io import solution_to_dict
from ..core.models import Instance, WopSolution
from ..core.objectives import canonical_key, solution_fingerprint
from ..exceptions import MalformedSolutionError

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class PopulationStats:
    """Accounting of the candidates a population was filtered from."""

    generated: int = 0
    dropped_duplicate: int = 0
    dropped_infeasible: int = 0
    dropped_surplus: int = 0

    def to_dict(self) -> dict[str, int]:
        """Convert stats to dictionary."""
        return {
            "generated": self.generated,
            "dropped_duplicate": self.dropped_duplicate,
            "dropped_infeasible": self.dropped_infeasible,
            "dropped_surplus": self.dropped_surplus,
        }


@dataclass(frozen=True)
class Population:
    """Feasible solutions with pairwise distinct canonical keys."""

    solutions: tuple[WopSolution, ...] = ()
    keys: tuple[bytes, ...] = ()
    stats: PopulationStats = PopulationStats()
    timings: Mapping[str, float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.solutions)

    def with_timings(self, **timings: float) -> "Population":
        """Return a copy with wall-time entries (milliseconds) added."""
        return Population(self.solutions, self.keys, self.stats, {**self.timings, **timings})

    def head(self, count: int) -> "Population":
        """Return the first ``count`` solutions; the rest count as surplus."""
        surplus = max(0, len(self.solutions) - count)
        stats = PopulationStats(
            self.stats.generated,
            self.stats.dropped_duplicate,
            self.stats.dropped_infeasible,
            self.stats.dropped_surplus + surplus,
        )
        return Population(self.solutions[:count], self.keys[:count], stats, self.timings)

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        """Convert population to its JSON document."""
        data: dict[str, Any] = {
            "solutions": [solution_to_dict(solution) for solution in self.solutions],
            "fingerprints": [solution_fingerprint(key) for key in self.keys],
            "stats": self.stats.to_dict(),
        }
        if include_timing:
            data["timings_ms"] = dict(self.timings)
        return data


def filter_population(
    candidates: Sequence[Optional[WopSolution]], instance: Instance
) -> Population:
    """Drop missing, infeasible and repeated candidates, keeping input order.

    Args:
        candidates: Solutions, None where a candidate could not be built
        instance: Instance the candidates belong to

    Returns:
        Population of the first occurrence of every feasible solution
    """
    solutions: list[WopSolution] = []
    keys: list[bytes] = []
    seen: set[bytes] = set()
    duplicates = 0
    infeasible = 0

    for candidate in candidates:
        if candidate is None:
            infeasible += 1
            continue
        try:
            feasible = is_feasible(candidate, instance).feasible
        except MalformedSolutionError as err:
            _LOGGER.debug("Dropping malformed candidate: %s", err)
            feasible = False
        if not feasible:
            infeasible += 1
            continue
        key = canonical_key(candidate)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        keys.append(key)
        solutions.append(candidate)

    stats = PopulationStats(len(candidates), duplicates, infeasible)
    _LOGGER.debug(
        "Population of %d from %d candidates (%d duplicate, %d infeasible)",
        len(solutions),
        stats.generated,
        duplicates,
        infeasible,
    )
    return Population(tuple(solutions), tuple(keys), stats)
