"""File-exchange adapter for an external hybrid sampler."""

import asyncio
import logging
import os
import re
import time
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, StrictFloat, StrictInt, ValidationError

from ..const import (
    ENV_REMOTE_DIR,
    REMOTE_MODEL_SUFFIX,
    REMOTE_POLL_INTERVAL_S,
    REMOTE_SAMPLESET_SUFFIX,
)
from ..core.io import parse_json, read_text
from ..cqm.model import CqmModel, evaluate
from ..cqm.serialization import Coefficient, decode_number, save_model
from ..exceptions import BackendError, FileFormatError, RemoteSampleSetMissingError
from .base import BaseSolverBackend, Sample, SampleSet, SamplerConfig

_LOGGER = logging.getLogger(__name__)

BACKEND_NAME = "remote"


class RemoteSampleSchema(BaseModel):
    """One sample of a sample-set document."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    assignment: dict[str, Union[StrictInt, StrictFloat]]
    objective: Optional[Coefficient] = None


class SampleSetSchema(BaseModel):
    """Sample-set document returned by the external service."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    samples: list[RemoteSampleSchema]
    backend: str = BACKEND_NAME


def export_for_remote(model: CqmModel, path: Union[str, Path]) -> None:
    """Write a model in the exchange format for the external service."""
    save_model(model, path)
    _LOGGER.info("Exported model %s (%d variables) to %s", model.name, model.num_variables, path)


def import_sampleset(path: Union[str, Path], model: CqmModel) -> SampleSet:
    """Read a sample-set document and re-evaluate every sample locally.

    Recorded objectives are only compared against the local evaluation; the
    local value is kept.

    Args:
        path: Sample-set file
        model: Model the samples belong to

    Returns:
        SampleSet in document order

    Raises:
        FileFormatError: If the file is unreadable or malformed
        AssignmentError: If a sample references an unknown variable
    """
    data = parse_json(read_text(path), "sample set")
    try:
        document = SampleSetSchema.model_validate(data)
    except ValidationError as err:
        raise FileFormatError(f"invalid sample-set document: {err}") from err

    samples = []
    for position, entry in enumerate(document.samples):
        evaluation = evaluate(model, entry.assignment)
        if entry.objective is not None:
            try:
                recorded = decode_number(entry.objective)
            except (ValueError, ZeroDivisionError) as err:
                raise FileFormatError(f"invalid objective in sample {position}") from err
            if recorded != evaluation.objective_value:
                _LOGGER.warning(
                    "Sample %d of %s records objective %s, local evaluation gives %s",
                    position,
                    path,
                    recorded,
                    evaluation.objective_value,
                )
        samples.append(Sample(dict(entry.assignment), evaluation))

    return SampleSet(samples=tuple(samples), backend_name=document.backend)


def exchange_paths(model: CqmModel, remote_dir: Union[str, Path]) -> tuple[Path, Path]:
    """Return the model and sample-set paths used for ``model``."""
    stem = re.sub(r"[^A-Za-z0-9._-]+", "_", model.name) or "model"
    base = Path(remote_dir)
    return base / f"{stem}{REMOTE_MODEL_SUFFIX}", base / f"{stem}{REMOTE_SAMPLESET_SUFFIX}"


class RemoteBackend(BaseSolverBackend):
    """Backend that hands the model to an external service via a drop directory.

    The model is written to ``<dir>/<name>.cqm.json``; the service is expected
    to answer with ``<dir>/<name>.sampleset.json`` within the time budget.
    """

    def __init__(
        self,
        remote_dir: Optional[Union[str, Path]] = None,
        poll_interval_s: float = REMOTE_POLL_INTERVAL_S,
    ) -> None:
        """Initialize remote backend.

        Args:
            remote_dir: Drop directory; falls back to ``WOP_REMOTE_DIR``
            poll_interval_s: Delay between checks for the answer file

        Raises:
            BackendError: If no drop directory is configured
        """
        super().__init__()
        remote_dir = remote_dir or os.environ.get(ENV_REMOTE_DIR)
        if not remote_dir:
            raise BackendError(f"no drop directory given and {ENV_REMOTE_DIR} is not set")
        self.remote_dir = Path(remote_dir)
        self.poll_interval_s = poll_interval_s

    @property
    def name(self) -> str:
        """Return backend name."""
        return BACKEND_NAME

    async def sample(self, model: CqmModel, config: SamplerConfig) -> SampleSet:
        """Export the model and wait for the answer file.

        Raises:
            RemoteSampleSetMissingError: If no answer arrives within the budget
        """
        started = time.perf_counter()
        model_path, answer_path = exchange_paths(model, self.remote_dir)
        export_for_remote(model, model_path)

        deadline = time.monotonic() + config.time_budget_ms / 1000
        while not answer_path.exists():
            if time.monotonic() >= deadline:
                _LOGGER.error("No sample set at %s after %d ms", answer_path, config.time_budget_ms)
                raise RemoteSampleSetMissingError(f"no sample set at {answer_path}")
            await asyncio.sleep(self.poll_interval_s)

        imported = import_sampleset(answer_path, model)
        samples = imported.samples[: config.num_samples]
        if len(imported.samples) > len(samples):
            _LOGGER.debug(
                "Keeping %d of %d remote samples", len(samples), len(imported.samples)
            )
        wall_time_ms = (time.perf_counter() - started) * 1000 + config.queue_latency_offset_ms
        return SampleSet(
            samples=samples,
            backend_name=BACKEND_NAME,
            wall_time_ms=wall_time_ms,
            info={"source": imported.backend_name},
        )
