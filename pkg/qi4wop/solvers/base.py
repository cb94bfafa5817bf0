"""Backend contract for sub-WOP samplers."""

import logging
from abc import ABC, abstractmethod
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..const import (
    DEFAULT_COOLING_FACTOR,
    DEFAULT_INITIAL_TEMPERATURE,
    DEFAULT_MAX_NODES,
    DEFAULT_MAX_VARIABLES,
    DEFAULT_NUM_SAMPLES,
    DEFAULT_TIME_BUDGET_MS,
)
from ..cqm.model import CqmModel, Evaluation

_LOGGER = logging.getLogger(__name__)


class AnnealingParams(BaseModel):
    """Simulated-annealing knobs; None means derive from the model."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    initial_temperature: float = Field(DEFAULT_INITIAL_TEMPERATURE, gt=0)
    cooling_factor: float = Field(DEFAULT_COOLING_FACTOR, gt=0, lt=1)
    sweeps_per_restart: Optional[int] = Field(None, ge=1)
    penalty_weight: Optional[float] = Field(None, gt=0)


class SamplerConfig(BaseModel):
    """Settings shared by every sampling backend."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    num_samples: int = Field(DEFAULT_NUM_SAMPLES, ge=1)
    time_budget_ms: int = Field(DEFAULT_TIME_BUDGET_MS, ge=0)
    seed: int = Field(0, ge=0, lt=2**64)
    sa_params: AnnealingParams = AnnealingParams()
    queue_latency_offset_ms: int = Field(0, ge=0)
    workers: int = Field(1, ge=1)


class SolveLimits(BaseModel):
    """Guards for the exact oracle."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    max_variables: int = Field(DEFAULT_MAX_VARIABLES, ge=1)
    max_nodes: int = Field(DEFAULT_MAX_NODES, ge=1)


@dataclass(frozen=True)
class Sample:
    """One assignment with its evaluation."""

    assignment: Mapping[str, int]
    evaluation: Evaluation

    @property
    def feasible(self) -> bool:
        """Check if the sample satisfies every constraint."""
        return self.evaluation.feasible

    def to_dict(self) -> dict[str, Any]:
        """Convert sample to dictionary."""
        return {
            "assignment": dict(sorted(self.assignment.items())),
            **self.evaluation.to_dict(),
        }


@dataclass(frozen=True)
class SampleSet:
    """Samples returned by one backend call."""

    samples: tuple[Sample, ...]
    backend_name: str
    wall_time_ms: float = 0.0
    infeasible: bool = False
    truncated: bool = False
    info: Mapping[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.samples)

    def feasible_samples(self) -> list[Sample]:
        """Return samples that satisfy every constraint."""
        return [sample for sample in self.samples if sample.feasible]

    def best_feasible(self) -> Optional[Sample]:
        """Return the first feasible sample with the lowest objective."""
        feasible = self.feasible_samples()
        if not feasible:
            return None
        return min(feasible, key=lambda s: s.evaluation.objective_value)

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        """Convert sample set to dictionary.

        Args:
            include_timing: Whether to include the machine-dependent wall time
        """
        data: dict[str, Any] = {
            "backend": self.backend_name,
            "infeasible": self.infeasible,
            "truncated": self.truncated,
            "samples": [sample.to_dict() for sample in self.samples],
        }
        if include_timing:
            data["wall_time_ms"] = self.wall_time_ms
        return data


class BaseSolverBackend(ABC):
    """Abstract base class for sub-WOP backends.

    Backends produce a population of assignments for a model built by
    ``build_subwop_model``. The executor used for parallel work is created on
    demand and shut down by ``close`` unless it was passed in.
    """

    def __init__(self, executor: Optional[Executor] = None) -> None:
        """Initialize backend.

        Args:
            executor: Optional executor for parallel restarts. If not provided,
                    a process pool is created when more than one worker is
                    requested.
        """
        self.executor = executor
        self._executor_owned = executor is None

    @property
    @abstractmethod
    def name(self) -> str:
        """Return backend name."""

    @abstractmethod
    async def sample(self, model: CqmModel, config: SamplerConfig) -> SampleSet:
        """Produce samples for a model.

        Args:
            model: Sub-WOP model
            config: Sampler settings (sample count, budget, seed)

        Returns:
            SampleSet whose samples carry their evaluation

        Raises:
            BackendError: If the backend cannot produce samples
        """

    def _get_executor(self, workers: int) -> Optional[Executor]:
        """Get or create the executor; None means run inline."""
        if self.executor is None and workers > 1:
            _LOGGER.debug("Starting process pool with %d workers", workers)
            self.executor = ProcessPoolExecutor(max_workers=workers)
        return self.executor

    async def close(self) -> None:
        """Release the executor if this backend created it."""
        if self._executor_owned and self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None

    async def __aenter__(self) -> "BaseSolverBackend":
        """Context manager entry."""
        return self

    async def __aexit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        """Context manager exit."""
        await self.close()
