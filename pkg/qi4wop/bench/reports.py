"""Run logs and the phase-one and phase-two reports."""

import csv
import io
import json
import logging
import statistics
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from ..const import PHASE1_CSV_HEADER, PHASE2_CSV_HEADER
from ..core.io import dumps, parse_json, read_text
from ..exceptions import FileFormatError

_LOGGER = logging.getLogger(__name__)

OUTCOME_WIN = "win"
OUTCOME_LOSS = "loss"
OUTCOME_TIE = "tie"
OUTCOME_SKIPPED = "skipped"


class RunRecordSchema(BaseModel):
    """One line of a run log."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    phase: int
    instance: str
    method: str
    run: int
    seed: int
    solutions: Optional[int] = None
    runtime_s: Optional[float] = None
    score: Optional[str] = None
    error: Optional[str] = None


@dataclass(frozen=True)
class RunRecord:
    """Measurements of one benchmark execution."""

    phase: int
    instance: str
    method: str
    run: int
    seed: int
    solutions: Optional[int] = None
    runtime_s: Optional[float] = None
    score: Optional[str] = None
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        """Check if the execution raised."""
        return self.error is not None

    def sort_key(self) -> tuple[int, str, str, int]:
        """Return the merge order of records."""
        return (self.phase, self.instance, self.method, self.seed)

    def to_dict(self) -> dict[str, Any]:
        """Convert record to dictionary."""
        return asdict(self)


class RunLog:
    """Append-only newline-delimited JSON log of run records."""

    def __init__(self, path: Union[str, Path]) -> None:
        """Initialize run log.

        Args:
            path: Log file, created on first append
        """
        self.path = Path(path)

    def append(self, record: RunRecord) -> None:
        """Append one record."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")

    def read(self) -> list[RunRecord]:
        """Return all records sorted by (phase, instance, method, seed).

        Raises:
            FileFormatError: If a line is not a valid record
        """
        records = []
        for number, line in enumerate(read_text(self.path).splitlines(), start=1):
            if not line.strip():
                continue
            try:
                data = parse_json(line, "run record")
                records.append(RunRecord(**RunRecordSchema.model_validate(data).model_dump()))
            except FileFormatError as err:
                raise FileFormatError("invalid run record", number, err.column) from err
            except ValidationError as err:
                raise FileFormatError(f"invalid run record: {err}", number, 1) from err
        return sorted(records, key=RunRecord.sort_key)


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if value is None else value for value in row])
    return buffer.getvalue()


@dataclass(frozen=True)
class Phase1Row:
    """Mean population size and runtime of one (instance, method) pair."""

    instance: str
    method: str
    runs: int
    mean_sols: Optional[float]
    mean_runtime_s: Optional[float]
    failed_runs: int = 0

    @property
    def failed(self) -> bool:
        """Check if any run of the row raised."""
        return self.failed_runs > 0

    def to_dict(self) -> dict[str, Any]:
        """Convert row to dictionary."""
        return {**asdict(self), "failed": self.failed}


@dataclass(frozen=True)
class Phase1Report:
    """Table of phase-one rows."""

    rows: tuple[Phase1Row, ...]

    def row(self, instance: str, method: str) -> Phase1Row:
        """Return the row of an (instance, method) pair."""
        return next(r for r in self.rows if (r.instance, r.method) == (instance, method))

    def to_dict(self) -> dict[str, Any]:
        """Convert report to its JSON document."""
        return {"rows": [row.to_dict() for row in self.rows]}

    def to_json(self) -> str:
        """Serialize report as JSON."""
        return dumps(self.to_dict())

    def to_csv(self) -> str:
        """Serialize report as CSV."""
        return _csv_text(
            PHASE1_CSV_HEADER,
            (
                (r.instance, r.method, r.runs, r.mean_sols, r.mean_runtime_s)
                for r in self.rows
            ),
        )


def phase1_report_from_records(records: Iterable[RunRecord]) -> Phase1Report:
    """Aggregate phase-one records into rows.

    Rows follow the first appearance of each (instance, method) pair. Means
    are taken over the runs that completed; ``runs`` counts those runs.
    """
    grouped: dict[tuple[str, str], list[RunRecord]] = {}
    for record in records:
        if record.phase == 1:
            grouped.setdefault((record.instance, record.method), []).append(record)

    rows = []
    for (instance, method), group in grouped.items():
        done = [r for r in group if not r.failed]
        failed = len(group) - len(done)
        if failed:
            _LOGGER.warning("%d of %d %s runs on %s failed", failed, len(group), method, instance)
        rows.append(
            Phase1Row(
                instance=instance,
                method=method,
                runs=len(done),
                mean_sols=statistics.fmean(r.solutions or 0 for r in done) if done else None,
                mean_runtime_s=statistics.fmean(r.runtime_s or 0.0 for r in done)
                if done
                else None,
                failed_runs=failed,
            )
        )
    return Phase1Report(tuple(rows))


@dataclass(frozen=True)
class Phase2Run:
    """Paired classical and hybrid-initialized PoC scores of one seed."""

    run: int
    seed: int
    score_classical: Optional[Fraction]
    score_hybrid: Optional[Fraction]
    outcome: str
    init_size_classical: Optional[int] = None
    init_size_hybrid: Optional[int] = None

    @property
    def init_sizes_equal(self) -> bool:
        """Check both sides started from equally many solutions."""
        return self.init_size_classical == self.init_size_hybrid

    def to_dict(self) -> dict[str, Any]:
        """Convert run to dictionary."""
        return {
            "run": self.run,
            "seed": self.seed,
            "score_classical": None if self.score_classical is None else str(self.score_classical),
            "score_hybrid": None if self.score_hybrid is None else str(self.score_hybrid),
            "outcome": self.outcome,
            "init_size_classical": self.init_size_classical,
            "init_size_hybrid": self.init_size_hybrid,
        }


def compare_scores(score_classical: Fraction, score_hybrid: Fraction) -> str:
    """Return the outcome for the hybrid run; only a strictly lower score wins."""
    if score_hybrid < score_classical:
        return OUTCOME_WIN
    if score_hybrid > score_classical:
        return OUTCOME_LOSS
    return OUTCOME_TIE


@dataclass(frozen=True)
class Phase2Report:
    """Win accounting of the hybrid-initialized PoC against the classical one."""

    instance: str
    results: tuple[Phase2Run, ...]

    def _count(self, outcome: str) -> int:
        return sum(1 for r in self.results if r.outcome == outcome)

    @property
    def runs(self) -> int:
        """Return the number of paired runs."""
        return len(self.results)

    @property
    def wins_qi4wop(self) -> int:
        """Return the number of hybrid wins."""
        return self._count(OUTCOME_WIN)

    @property
    def losses(self) -> int:
        """Return the number of hybrid losses."""
        return self._count(OUTCOME_LOSS)

    @property
    def ties(self) -> int:
        """Return the number of ties."""
        return self._count(OUTCOME_TIE)

    @property
    def skipped(self) -> int:
        """Return the number of runs without an initial solution."""
        return self._count(OUTCOME_SKIPPED)

    @property
    def unequal_init_runs(self) -> int:
        """Return completed runs whose classical population fell short of the hybrid one."""
        return sum(
            1 for r in self.results if r.outcome != OUTCOME_SKIPPED and not r.init_sizes_equal
        )

    @property
    def win_rate(self) -> Fraction:
        """Return wins over runs (0 when there are no runs)."""
        return Fraction(self.wins_qi4wop, self.runs) if self.runs else Fraction(0)

    def median_scores(self) -> tuple[Optional[Fraction], Optional[Fraction]]:
        """Return the median (classical, hybrid) final scores of completed runs."""
        done = [r for r in self.results if r.outcome != OUTCOME_SKIPPED]
        if not done:
            return None, None
        return (
            statistics.median(r.score_classical for r in done),  # type: ignore[type-var]
            statistics.median(r.score_hybrid for r in done),  # type: ignore[type-var]
        )

    def to_dict(self) -> dict[str, Any]:
        """Convert report to its JSON document."""
        classical, hybrid = self.median_scores()
        return {
            "instance": self.instance,
            "runs": self.runs,
            "wins_qi4wop": self.wins_qi4wop,
            "losses": self.losses,
            "ties": self.ties,
            "skipped": self.skipped,
            "unequal_init_runs": self.unequal_init_runs,
            "win_rate": str(self.win_rate),
            "median_score_classical": None if classical is None else str(classical),
            "median_score_hybrid": None if hybrid is None else str(hybrid),
            "results": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        """Serialize report as JSON."""
        return dumps(self.to_dict())

    def to_csv(self) -> str:
        """Serialize the per-run results as CSV."""
        return _csv_text(
            PHASE2_CSV_HEADER,
            (
                tuple(d[column] for column in PHASE2_CSV_HEADER)
                for d in (r.to_dict() for r in self.results)
            ),
        )
