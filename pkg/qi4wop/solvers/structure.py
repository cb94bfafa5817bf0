"""Categorical view of a sub-WOP model shared by the oracle and the sampler."""

from dataclasses import dataclass
from fractions import Fraction

from ..const import LABEL_CAPACITY, LABEL_MUST_PLACE, LABEL_ONE_LOCATION, LABEL_SEPARATOR
from ..cqm.model import CqmModel, Sense
from ..exceptions import ModelError


@dataclass(frozen=True)
class ItemChoices:
    """The locations one item may take, in model variable order."""

    item_id: str
    variables: tuple[str, ...]
    locations: tuple[int, ...]
    areas: tuple[Fraction, ...]
    gains: tuple[Fraction, ...]
    must_place: bool


@dataclass(frozen=True)
class SubWopView:
    """Per item, a choice among unplaced and its eligible locations."""

    items: tuple[ItemChoices, ...]
    location_ids: tuple[str, ...]
    capacities: tuple[Fraction, ...]
    variable_ids: tuple[str, ...]
    bias: Fraction

    @classmethod
    def from_model(cls, model: CqmModel) -> "SubWopView":
        """Recover the categorical structure from a sub-WOP model.

        Raises:
            ModelError: If the model is not shaped like a sub-WOP model
        """
        capacity_rows = {}
        must_place: set[str] = set()
        for constraint in model.constraints:
            prefix, _, key = constraint.label.partition(LABEL_SEPARATOR)
            if prefix == LABEL_CAPACITY and constraint.sense == Sense.LE:
                capacity_rows[key] = constraint
            elif prefix == LABEL_MUST_PLACE and constraint.sense == Sense.GE:
                must_place.add(key)
            elif prefix != LABEL_ONE_LOCATION:
                raise ModelError(f"unsupported constraint {constraint.label!r}")

        location_ids = tuple(capacity_rows)
        location_pos = {location_id: pos for pos, location_id in enumerate(location_ids)}
        owner = {var: key for key, var in model.var_index.items()}

        grouped: dict[str, list[tuple[str, int, Fraction, Fraction]]] = {}
        for variable in model.variables:
            if variable.id not in owner:
                raise ModelError(f"variable {variable.id!r} is not in the decoding index")
            item_id, location_id = owner[variable.id]
            if location_id not in location_pos:
                raise ModelError(f"no capacity constraint for location {location_id!r}")
            area = capacity_rows[location_id].lhs.terms.get(variable.id, Fraction(0))
            gain = model.objective.terms.get(variable.id, Fraction(0))
            grouped.setdefault(item_id, []).append(
                (variable.id, location_pos[location_id], area, gain)
            )
        for item_id in must_place:
            grouped.setdefault(item_id, [])

        items = tuple(
            ItemChoices(
                item_id=item_id,
                variables=tuple(c[0] for c in choices),
                locations=tuple(c[1] for c in choices),
                areas=tuple(c[2] for c in choices),
                gains=tuple(c[3] for c in choices),
                must_place=item_id in must_place,
            )
            for item_id, choices in grouped.items()
        )
        return cls(
            items=items,
            location_ids=location_ids,
            capacities=tuple(capacity_rows[key].rhs for key in location_ids),
            variable_ids=tuple(variable.id for variable in model.variables),
            bias=model.objective.bias,
        )

    def assignment(self, choice: list[int]) -> dict[str, int]:
        """Expand per-item choices (-1 = unplaced) into a binary assignment."""
        values = dict.fromkeys(self.variable_ids, 0)
        for item, k in zip(self.items, choice):
            if k >= 0:
                values[item.variables[k]] = 1
        return values

    @property
    def max_area(self) -> Fraction:
        """Return the largest item area in the model."""
        return max((a for item in self.items for a in item.areas), default=Fraction(1))
