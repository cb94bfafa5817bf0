"""Full-classical baseline and the PoC driver."""

from .initialization import classical_initialization, random_feasible_solution
from .local_search import Move, local_search, neighbourhood
from .poc import ObjectiveSummary, PocConfig, RunResult, run_poc, select_best

__all__ = [
    "Move",
    "ObjectiveSummary",
    "PocConfig",
    "RunResult",
    "classical_initialization",
    "local_search",
    "neighbourhood",
    "random_feasible_solution",
    "run_poc",
    "select_best",
]
