"""Exact depth-first oracle for small sub-WOP models."""

import logging
import time
from fractions import Fraction
from typing import Optional

from ..cqm.model import CqmModel, evaluate
from ..exceptions import OracleLimitError
from .base import BaseSolverBackend, Sample, SampleSet, SamplerConfig, SolveLimits
from .structure import SubWopView

_LOGGER = logging.getLogger(__name__)

BACKEND_NAME = "exact"


class _Search:
    """Depth-first search over items with one-location branching."""

    def __init__(self, view: SubWopView, max_nodes: int) -> None:
        self.view = view
        self.max_nodes = max_nodes
        self.nodes = 0
        self.residual = list(view.capacities)
        self.choice = [-1] * len(view.items)
        self.best: Optional[Fraction] = None
        self.optimal: list[tuple[int, ...]] = []
        # Most negative objective still reachable from item i onwards.
        self.bound = [Fraction(0)] * (len(view.items) + 1)
        for i in range(len(view.items) - 1, -1, -1):
            gains = view.items[i].gains
            self.bound[i] = self.bound[i + 1] + min([Fraction(0), *gains])

    def run(self) -> None:
        self._visit(0, self.view.bias)

    def _visit(self, i: int, value: Fraction) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise OracleLimitError(f"search exceeded {self.max_nodes} nodes")
        if self.best is not None and value + self.bound[i] > self.best:
            return
        if i == len(self.view.items):
            if self.best is None or value < self.best:
                self.best = value
                self.optimal = [tuple(self.choice)]
            elif value == self.best:
                self.optimal.append(tuple(self.choice))
            return

        item = self.view.items[i]
        for k, (loc, area, gain) in enumerate(zip(item.locations, item.areas, item.gains)):
            if area <= self.residual[loc]:
                self.residual[loc] -= area
                self.choice[i] = k
                self._visit(i + 1, value + gain)
                self.residual[loc] += area
        self.choice[i] = -1
        if not item.must_place:
            self._visit(i + 1, value)


def solve_exact(
    model: CqmModel, limits: SolveLimits, max_solutions: Optional[int] = None
) -> SampleSet:
    """Return every optimal feasible assignment of a sub-WOP model.

    Args:
        model: Sub-WOP model
        limits: Size guards
        max_solutions: Optional cap applied after sorting

    Returns:
        SampleSet ordered by the assignment bit string (model variable order);
        empty with ``infeasible`` set when no feasible assignment exists

    Raises:
        OracleLimitError: If the model has too many variables or the search
            visits too many nodes
    """
    if model.num_variables > limits.max_variables:
        raise OracleLimitError(
            f"model has {model.num_variables} variables, limit is {limits.max_variables}"
        )

    started = time.perf_counter()
    view = SubWopView.from_model(model)
    search = _Search(view, limits.max_nodes)
    search.run()

    assignments = [view.assignment(list(choice)) for choice in search.optimal]
    assignments.sort(key=lambda a: "".join(str(a[v]) for v in view.variable_ids))
    if max_solutions is not None:
        assignments = assignments[:max_solutions]

    samples = tuple(Sample(a, evaluate(model, a)) for a in assignments)
    wall_time_ms = (time.perf_counter() - started) * 1000
    _LOGGER.debug(
        "Exact search on %s: %d nodes, optimum %s, %d optimal assignments",
        model.name,
        search.nodes,
        search.best,
        len(search.optimal),
    )
    return SampleSet(
        samples=samples,
        backend_name=BACKEND_NAME,
        wall_time_ms=wall_time_ms,
        infeasible=not samples,
        info={"nodes": search.nodes, "optimum": None if search.best is None else str(search.best)},
    )


class ExactBackend(BaseSolverBackend):
    """Backend that returns the optimal assignments of small models."""

    def __init__(self, limits: Optional[SolveLimits] = None) -> None:
        """Initialize exact backend.

        Args:
            limits: Size guards (defaults apply when omitted)
        """
        super().__init__()
        self.limits = limits or SolveLimits()

    @property
    def name(self) -> str:
        """Return backend name."""
        return BACKEND_NAME

    async def sample(self, model: CqmModel, config: SamplerConfig) -> SampleSet:
        """Return up to ``num_samples`` optimal assignments."""
        return solve_exact(model, self.limits, max_solutions=config.num_samples)
