"""Instance generation and the benchmark protocol."""

from .generator import (
    InstanceSpec,
    generate_instance,
    generate_instance_with_witness,
    largest_remainder,
    packed_witness,
    published_suite,
)
from .protocol import METHODS, Phase1Config, run_phase1, run_phase2
from .reports import (
    Phase1Report,
    Phase1Row,
    Phase2Report,
    Phase2Run,
    RunLog,
    RunRecord,
    phase1_report_from_records,
)

__all__ = [
    "METHODS",
    "InstanceSpec",
    "Phase1Config",
    "Phase1Report",
    "Phase1Row",
    "Phase2Report",
    "Phase2Run",
    "RunLog",
    "RunRecord",
    "generate_instance",
    "generate_instance_with_witness",
    "largest_remainder",
    "packed_witness",
    "phase1_report_from_records",
    "run_phase1",
    "run_phase2",
    "published_suite",
]
