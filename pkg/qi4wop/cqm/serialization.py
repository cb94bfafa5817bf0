"""Model exchange format."""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Literal, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, StrictFloat, StrictInt, ValidationError

from ..core.io import dumps, parse_json, read_text, write_text
from ..exceptions import FileFormatError
from .model import Constraint, CqmModel, LinearExpr, Sense, Variable, Vartype

_LOGGER = logging.getLogger(__name__)

Coefficient = Union[StrictInt, StrictFloat, str]
QuadraticTerm = tuple[str, str, Coefficient]


def encode_number(value: Fraction) -> Union[int, str]:
    """Encode a fraction as an int when integral, else as ``"p/q"``."""
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else str(value)


def decode_number(value: Coefficient) -> Fraction:
    """Decode a JSON number or ``"p/q"`` string.

    Raises:
        ValueError: If the value is not a number
    """
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class VariableSchema(_Strict):
    """Variable entry."""

    id: str
    vartype: Literal["BINARY", "INTEGER", "REAL"]
    bounds: Optional[tuple[Coefficient, Coefficient]] = None


class ObjectiveSchema(_Strict):
    """Objective entry."""

    terms: dict[str, Coefficient]
    quadratic: list[QuadraticTerm] = []
    bias: Coefficient = 0


class ConstraintSchema(_Strict):
    """Constraint entry."""

    label: str
    terms: dict[str, Coefficient]
    quadratic: list[QuadraticTerm] = []
    sense: Literal["<=", ">=", "=="]
    rhs: Coefficient


class IndexEntrySchema(_Strict):
    """Decoding index entry."""

    item: str
    location: str
    variable: str


class ModelSchema(_Strict):
    """Model document."""

    name: str = "model"
    variables: list[VariableSchema]
    objective: ObjectiveSchema
    constraints: list[ConstraintSchema]
    var_index: list[IndexEntrySchema] = []


def _encode_terms(terms: dict[str, Fraction]) -> dict[str, Union[int, str]]:
    return {var: encode_number(coeff) for var, coeff in terms.items()}


def _encode_quadratic(quadratic: Mapping[tuple[str, str], Fraction]) -> list[list[Any]]:
    return [[u, v, encode_number(coeff)] for (u, v), coeff in quadratic.items()]


def _decode_expr(
    terms: dict[str, Coefficient], quadratic: list[QuadraticTerm], bias: Coefficient = 0
) -> LinearExpr:
    pairs: dict[tuple[str, str], Fraction] = {}
    for u, v, coeff in quadratic:
        if (u, v) in pairs:
            raise ValueError(f"duplicate quadratic term ({u}, {v})")
        pairs[(u, v)] = decode_number(coeff)
    return LinearExpr(
        {var: decode_number(c) for var, c in terms.items()}, decode_number(bias), pairs
    )


def _decode_bounds(
    bounds: Optional[tuple[Coefficient, Coefficient]],
) -> Optional[tuple[Fraction, Fraction]]:
    if bounds is None:
        return None
    low, high = bounds
    return decode_number(low), decode_number(high)


def model_to_dict(model: CqmModel) -> dict[str, Any]:
    """Convert a model to its exchange document."""
    return {
        "name": model.name,
        "variables": [
            {
                "id": var.id,
                "vartype": var.vartype.value,
                "bounds": None
                if var.vartype == Vartype.BINARY
                else [encode_number(b) for b in var.bounds],  # type: ignore[union-attr]
            }
            for var in model.variables
        ],
        "objective": {
            "terms": _encode_terms(dict(model.objective.terms)),
            "quadratic": _encode_quadratic(model.objective.quadratic),
            "bias": encode_number(model.objective.bias),
        },
        "constraints": [
            {
                "label": c.label,
                "terms": _encode_terms(dict(c.lhs.terms)),
                "quadratic": _encode_quadratic(c.lhs.quadratic),
                "sense": c.sense.value,
                "rhs": encode_number(c.rhs),
            }
            for c in model.constraints
        ],
        "var_index": [
            {"item": item_id, "location": location_id, "variable": var}
            for (item_id, location_id), var in model.var_index.items()
        ],
    }


def model_from_dict(data: Any) -> CqmModel:
    """Build a model from its exchange document.

    Raises:
        FileFormatError: If the document does not match the schema
        ModelError: If the document describes an inconsistent model
    """
    try:
        doc = ModelSchema.model_validate(data)
        variables = tuple(
            Variable(
                v.id,
                Vartype(v.vartype),
                _decode_bounds(v.bounds),
            )
            for v in doc.variables
        )
        objective = _decode_expr(
            doc.objective.terms, doc.objective.quadratic, doc.objective.bias
        )
        constraints = tuple(
            Constraint(
                c.label,
                _decode_expr(c.terms, c.quadratic),
                Sense(c.sense),
                decode_number(c.rhs),
            )
            for c in doc.constraints
        )
    except ValidationError as err:
        raise FileFormatError(f"invalid model document: {err}") from err
    except (ValueError, ZeroDivisionError) as err:
        raise FileFormatError(f"invalid value in model document: {err}") from err

    return CqmModel(
        variables=variables,
        objective=objective,
        constraints=constraints,
        var_index={(e.item, e.location): e.variable for e in doc.var_index},
        name=doc.name,
    )


def dump_model(model: CqmModel) -> str:
    """Serialize a model."""
    return dumps(model_to_dict(model))


def save_model(model: CqmModel, path: Union[str, Path]) -> None:
    """Write a model file."""
    write_text(path, dump_model(model))
    _LOGGER.debug("Wrote model %s to %s", model.name, path)


def load_model(path: Union[str, Path]) -> CqmModel:
    """Read a model file.

    Raises:
        FileFormatError: If the file is unreadable or malformed
        ModelError: If the model is inconsistent
    """
    return model_from_dict(parse_json(read_text(path), "model"))
