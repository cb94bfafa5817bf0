"""Post-processing of sampled ground-level placements."""

from .pipeline import QI4WOPConfig, run_qi4wop
from .population import Population, PopulationStats, filter_population
from .stacking import complete_solution, create_mutant, eligible_movers

__all__ = [
    "Population",
    "PopulationStats",
    "QI4WOPConfig",
    "complete_solution",
    "create_mutant",
    "eligible_movers",
    "filter_population",
    "run_qi4wop",
]
