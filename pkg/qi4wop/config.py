"""Run configuration file."""

import logging
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from .baseline.poc import PocConfig
from .bench.generator import InstanceSpec
from .bench.protocol import Phase1Config
from .core.io import parse_json, read_text
from .exceptions import FileFormatError
from .postprocess.pipeline import QI4WOPConfig
from .solvers.base import SamplerConfig, SolveLimits

_LOGGER = logging.getLogger(__name__)


class RunConfig(BaseModel):
    """Optional sections read from ``--config``; missing sections use defaults."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    sampler: Optional[SamplerConfig] = None
    limits: SolveLimits = SolveLimits()
    qi4wop: Optional[QI4WOPConfig] = None
    poc: Optional[PocConfig] = None
    instance_spec: Optional[InstanceSpec] = None
    phase1: Optional[Phase1Config] = None
    remote_dir: Optional[str] = None

    def pipeline(self, seed: Optional[int] = None) -> QI4WOPConfig:
        """Return the pipeline settings, with ``sampler`` taking precedence."""
        config = self.qi4wop or QI4WOPConfig()
        if self.sampler is not None:
            config = config.model_copy(update={"sampler": self.sampler})
        return config if seed is None else config.with_seed(seed)

    def poc_config(self, seed: Optional[int] = None) -> PocConfig:
        """Return the PoC settings with the pipeline section folded in."""
        config = self.poc or PocConfig()
        if self.qi4wop is not None or self.sampler is not None:
            config = config.model_copy(update={"qi4wop": self.pipeline()})
        return config if seed is None else config.model_copy(update={"seed": seed})

    def phase1_config(self, seed: Optional[int] = None) -> Phase1Config:
        """Return the phase-one settings with the pipeline section folded in."""
        config = self.phase1 or Phase1Config()
        if self.qi4wop is not None or self.sampler is not None:
            config = config.model_copy(update={"qi4wop": self.pipeline()})
        return config if seed is None else config.model_copy(update={"seed": seed})


def load_run_config(path: Optional[Union[str, Path]]) -> RunConfig:
    """Load a run configuration file; None gives the defaults.

    Raises:
        FileFormatError: If the file is unreadable or does not match the schema
    """
    if path is None:
        return RunConfig()
    try:
        config = RunConfig.model_validate(parse_json(read_text(path), "config"))
    except ValidationError as err:
        raise FileFormatError(f"invalid config {path}: {err}") from err
    _LOGGER.debug("Loaded config %s", path)
    return config
