"""Constants for the qi4wop solver suite."""

from enum import Enum

# Package
DOMAIN = "qi4wop"
VERSION = "0.3.0"

# Environment
ENV_REMOTE_DIR = "WOP_REMOTE_DIR"

# Instance file kinds
KIND_FLOOR = "floor"
KIND_SHELF = "shelf"

# Instance validation rules
RULE_DUPLICATE_ID = "duplicate-id"
RULE_DANGLING_TYPE = "dangling-type"
RULE_NON_POSITIVE_CAPACITY = "non-positive-capacity"
RULE_NON_POSITIVE_AREA = "non-positive-area"
RULE_INVALID_STACK_HEIGHT = "invalid-stack-height"
RULE_NEGATIVE_TIME = "negative-time"
RULE_NO_LOCATIONS = "no-locations"
RULE_NO_ITEMS = "no-items"

# Solution feasibility rules
RULE_MISSING_ITEM = "missing-item"
RULE_STACK_MIXED_TYPES = "stack-mixed-types"
RULE_STACK_CONTIGUITY = "stack-contiguity"
RULE_STACK_HEIGHT = "stack-height"
RULE_SHELF_PROHIBITED = "shelf-prohibited"
RULE_CAPACITY = "capacity-exceeded"

# Sub-WOP constraint label prefixes
LABEL_ONE_LOCATION = "one-loc"
LABEL_CAPACITY = "cap"
LABEL_MUST_PLACE = "must-place"
LABEL_SEPARATOR = ":"

# Exact oracle
DEFAULT_MAX_VARIABLES = 24
DEFAULT_MAX_NODES = 2_000_000

# Annealing sampler
DEFAULT_NUM_SAMPLES = 50
DEFAULT_TIME_BUDGET_MS = 60_000
DEFAULT_INITIAL_TEMPERATURE = 2.0
DEFAULT_COOLING_FACTOR = 0.95
SWEEPS_PER_ITEM = 200
PENALTY_AREA_FACTOR = 2

# Remote exchange
REMOTE_MODEL_SUFFIX = ".cqm.json"
REMOTE_SAMPLESET_SUFFIX = ".sampleset.json"
REMOTE_POLL_INTERVAL_S = 0.25

# Post-processing
DEFAULT_MUTANT_PROBABILITY = 0.5

# Classical PoC
DEFAULT_INIT_TIME_BUDGET_MS = 30_000
DEFAULT_LOCAL_SEARCH_BUDGET_MS = 5_000
DEFAULT_MAX_ATTEMPTS = 50
DEFAULT_WEIGHTS = (1.0, 1.0)

# Instance generator
DEFAULT_CAPACITY_FILL_RATIO = 1.3
DEFAULT_SHELF_FRACTION = 0.25
DEFAULT_SHELF_ALLOWED_FRACTION = 0.5
DEFAULT_STACKABLE_FRACTION = 0.7
DEFAULT_HEIGHT_RANGE = (2, 4)
DEFAULT_AREA_RANGE = (1, 6)
DEFAULT_BASE_TIME_RANGE = (5, 30)
DEFAULT_PER_LEVEL_TIME_RANGE = (1, 5)
GENERATOR_MAX_RESAMPLES = 100

# Benchmark
METHOD_QI4WOP = "qi4wop"
METHOD_CLASSICAL = "classical"
DEFAULT_PHASE1_RUNS = 10
DEFAULT_PHASE2_RUNS = 25
PHASE1_CSV_HEADER = ("instance", "method", "runs", "mean_sols", "mean_runtime_s")
PHASE2_CSV_HEADER = (
    "run",
    "seed",
    "score_classical",
    "score_hybrid",
    "outcome",
    "init_size_classical",
    "init_size_hybrid",
)

# Instance shapes of the published first-phase table (locations, items, types)
PUBLISHED_SHAPES = (
    (1, 50, 2),
    (2, 75, 3),
    (3, 85, 4),
    (3, 100, 3),
    (4, 124, 3),
)

# Published first-phase averages: name -> (hybrid #sol, hybrid s, classical #sol, classical s).
# Reference only; produced on a cloud hybrid solver including queue time.
PUBLISHED_PHASE1 = {
    "L1_I50_T2": (29.9, 15.7, 8.5, 30.0),
    "L2_I75_T3": (78.9, 16.7, 5.8, 30.0),
    "L3_I85_T4": (96.9, 17.4, 4.9, 30.0),
    "L3_I100_T3": (117.5, 17.5, 4.1, 30.0),
    "L4_I124_T3": (115.3, 18.0, 3.4, 30.0),
}

# Published second-phase figure: 25 paired runs, hybrid-initialised PoC wins 48%.
PUBLISHED_PHASE2 = {"instance": "L4_I124_T3", "runs": 25, "win_rate": 0.48}

# CLI exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class LocationKind(str, Enum):
    """Location kind enumeration."""

    FLOOR = KIND_FLOOR
    SHELF = KIND_SHELF


class InitMode(str, Enum):
    """Initialization module used by the PoC."""

    CLASSICAL = METHOD_CLASSICAL
    QI4WOP = METHOD_QI4WOP


class BackendName(str, Enum):
    """Selectable sub-WOP backends."""

    EXACT = "exact"
    ANNEAL = "anneal"
    REMOTE = "remote"
