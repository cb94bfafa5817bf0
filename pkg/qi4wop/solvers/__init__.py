"""Sub-WOP sampling backends."""

from .annealing import AnnealingBackend, sample_annealing
from .base import (
    AnnealingParams,
    BaseSolverBackend,
    Sample,
    SampleSet,
    SamplerConfig,
    SolveLimits,
)
from .exact import ExactBackend, solve_exact
from .factory import make_backend
from .remote import RemoteBackend, export_for_remote, import_sampleset

__all__ = [
    "AnnealingBackend",
    "AnnealingParams",
    "BaseSolverBackend",
    "ExactBackend",
    "RemoteBackend",
    "Sample",
    "SampleSet",
    "SamplerConfig",
    "SolveLimits",
    "export_for_remote",
    "import_sampleset",
    "make_backend",
    "sample_annealing",
    "solve_exact",
]
