"""Backend selection by name."""

import logging
from pathlib import Path
from typing import Optional, Union

from ..const import BackendName
from ..exceptions import BackendError
from .annealing import AnnealingBackend
from .base import BaseSolverBackend, SolveLimits
from .exact import ExactBackend
from .remote import RemoteBackend

_LOGGER = logging.getLogger(__name__)


def make_backend(
    name: Union[str, BackendName],
    limits: Optional[SolveLimits] = None,
    remote_dir: Optional[Union[str, Path]] = None,
) -> BaseSolverBackend:
    """Create a backend by name.

    Args:
        name: One of ``exact``, ``anneal`` or ``remote``
        limits: Oracle guards for the exact backend
        remote_dir: Drop directory for the remote backend

    Returns:
        Backend instance, to be closed by the caller

    Raises:
        BackendError: If the name is unknown or the backend cannot be set up
    """
    try:
        backend_name = BackendName(name)
    except ValueError as err:
        available = ", ".join(member.value for member in BackendName)
        raise BackendError(f"unknown backend {name!r}, available: {available}") from err

    _LOGGER.debug("Creating %s backend", backend_name.value)
    if backend_name == BackendName.EXACT:
        return ExactBackend(limits)
    if backend_name == BackendName.REMOTE:
        return RemoteBackend(remote_dir)
    return AnnealingBackend()
