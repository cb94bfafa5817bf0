"""Instance and solution file formats."""

import json
import logging
from pathlib import Path
from typing import Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, StrictBool, StrictInt, ValidationError

from ..const import LocationKind
from ..exceptions import FileFormatError, InstanceFormatError, MalformedSolutionError
from .models import Instance, Item, ItemType, Location, Placement, WopSolution

_LOGGER = logging.getLogger(__name__)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class LocationSchema(_Strict):
    """Location entry of an instance file."""

    id: str
    capacity: StrictInt
    kind: Literal["floor", "shelf"]
    base_place_time: StrictInt = 0
    per_level_time: StrictInt = 0


class ItemTypeSchema(_Strict):
    """Item type entry of an instance file."""

    id: str
    area: StrictInt
    shelf_allowed: StrictBool
    max_stack_height: StrictInt


class ItemSchema(_Strict):
    """Item entry of an instance file."""

    id: str
    type: str


class InstanceSchema(_Strict):
    """Instance file document."""

    name: str
    locations: list[LocationSchema]
    item_types: list[ItemTypeSchema]
    items: list[ItemSchema]

    def to_instance(self) -> Instance:
        """Convert the document into an instance."""
        return Instance(
            name=self.name,
            locations=tuple(
                Location(
                    id=loc.id,
                    capacity=loc.capacity,
                    kind=LocationKind(loc.kind),
                    base_place_time=loc.base_place_time,
                    per_level_time=loc.per_level_time,
                )
                for loc in self.locations
            ),
            item_types=tuple(
                ItemType(
                    id=t.id,
                    area=t.area,
                    shelf_allowed=t.shelf_allowed,
                    max_stack_height=t.max_stack_height,
                )
                for t in self.item_types
            ),
            items=tuple(Item(id=item.id, type_id=item.type) for item in self.items),
        )


class PlacementSchema(_Strict):
    """Placement entry of a solution file."""

    location: str
    slot: StrictInt = Field(ge=0)
    level: StrictInt = Field(ge=0)


def parse_json(text: str, what: str) -> Any:
    """Decode JSON text, reporting the error position.

    Raises:
        FileFormatError: If the text is not valid JSON
    """
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise FileFormatError(f"invalid {what}: {err.msg}", err.lineno, err.colno) from err


def read_text(path: Union[str, Path]) -> str:
    """Read a UTF-8 text file.

    Raises:
        FileFormatError: If the file cannot be read
    """
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise FileFormatError(f"cannot read {path}: {err}") from err


def write_text(path: Union[str, Path], text: str) -> None:
    """Write a UTF-8 text file, creating parent directories."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")


def dumps(document: Any) -> str:
    """Serialize a document deterministically."""
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def parse_instance(text: str) -> Instance:
    """Parse an instance document.

    Raises:
        FileFormatError: If the text is not valid JSON
        InstanceFormatError: If the document does not match the schema
    """
    data = parse_json(text, "instance")
    try:
        return InstanceSchema.model_validate(data).to_instance()
    except ValidationError as err:
        _LOGGER.debug("Instance schema errors: %s", err.errors())
        raise InstanceFormatError(str(err)) from err


def load_instance(path: Union[str, Path]) -> Instance:
    """Load an instance file."""
    return parse_instance(read_text(path))


def dump_instance(instance: Instance) -> str:
    """Serialize an instance to its file format."""
    return dumps(instance.to_dict())


def solution_to_dict(solution: WopSolution) -> dict[str, Any]:
    """Convert a solution to ``{item_id: {location, slot, level}}``."""
    return solution.to_dict()


def solution_from_dict(data: Any) -> WopSolution:
    """Build a solution from its document form.

    Raises:
        MalformedSolutionError: If the document does not match the schema
    """
    if not isinstance(data, dict):
        raise MalformedSolutionError("solution document must be an object")
    try:
        placements = {
            str(item_id): PlacementSchema.model_validate(entry)
            for item_id, entry in data.items()
        }
    except ValidationError as err:
        raise MalformedSolutionError(str(err)) from err
    return WopSolution(
        {
            item_id: Placement(p.location, p.slot, p.level)
            for item_id, p in placements.items()
        }
    )


def load_solution(path: Union[str, Path]) -> WopSolution:
    """Load a solution file."""
    return solution_from_dict(parse_json(read_text(path), "solution"))


def dump_solution(solution: WopSolution) -> str:
    """Serialize a solution to its file format."""
    return dumps(solution_to_dict(solution))
