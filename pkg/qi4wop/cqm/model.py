"""Constrained quadratic model representation and evaluation."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any, Mapping, Optional, Union

from ..exceptions import AssignmentError, ModelError

Value = Union[int, Fraction]


class Vartype(str, Enum):
    """Variable domains."""

    BINARY = "BINARY"
    INTEGER = "INTEGER"
    REAL = "REAL"


class Sense(str, Enum):
    """Constraint senses."""

    LE = "<="
    GE = ">="
    EQ = "=="


@dataclass(frozen=True)
class Variable:
    """A decision variable."""

    id: str
    vartype: Vartype = Vartype.BINARY
    bounds: Optional[tuple[Fraction, Fraction]] = None

    def __post_init__(self) -> None:
        if self.vartype == Vartype.BINARY:
            if self.bounds not in (None, (0, 1)):
                raise ModelError(f"binary variable {self.id!r} has bounds {self.bounds}")
            object.__setattr__(self, "bounds", (Fraction(0), Fraction(1)))
        elif self.bounds is None:
            raise ModelError(f"{self.vartype.value} variable {self.id!r} needs bounds")
        else:
            lo, hi = (Fraction(b) for b in self.bounds)
            if lo > hi:
                raise ModelError(f"variable {self.id!r} has empty bounds [{lo}, {hi}]")
            object.__setattr__(self, "bounds", (lo, hi))

    def check(self, value: Any) -> Fraction:
        """Return a value as a fraction after checking the domain.

        Raises:
            AssignmentError: If the value is outside the variable's domain
        """
        try:
            number = Fraction(value)
        except (TypeError, ValueError) as err:
            raise AssignmentError(f"{self.id}: {value!r} is not a number") from err
        lo, hi = self.bounds  # type: ignore[misc]
        if self.vartype != Vartype.REAL and number.denominator != 1:
            raise AssignmentError(f"{self.id}: {value!r} is not integral")
        if not lo <= number <= hi:
            raise AssignmentError(f"{self.id}: {value!r} outside [{lo}, {hi}]")
        return number


@dataclass(frozen=True)
class LinearExpr:
    """A linear expression with optional quadratic terms.

    Zero coefficients are dropped on construction.
    """

    terms: Mapping[str, Fraction] = field(default_factory=dict)
    bias: Fraction = Fraction(0)
    quadratic: Mapping[tuple[str, str], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "terms", {v: Fraction(c) for v, c in self.terms.items() if c != 0}
        )
        object.__setattr__(
            self, "quadratic", {k: Fraction(c) for k, c in self.quadratic.items() if c != 0}
        )
        object.__setattr__(self, "bias", Fraction(self.bias))

    def variables(self) -> set[str]:
        """Return ids of variables the expression touches."""
        touched = set(self.terms)
        for u, v in self.quadratic:
            touched.update((u, v))
        return touched

    def value(self, assignment: Mapping[str, Fraction]) -> Fraction:
        """Evaluate the expression."""
        total = self.bias + sum(
            (coeff * assignment[v] for v, coeff in self.terms.items()), Fraction(0)
        )
        for (u, v), coeff in self.quadratic.items():
            total += coeff * assignment[u] * assignment[v]
        return total


@dataclass(frozen=True)
class Constraint:
    """A labelled (in)equality ``lhs <sense> rhs``."""

    label: str
    lhs: LinearExpr
    sense: Sense
    rhs: Fraction = Fraction(0)

    def violation(self, assignment: Mapping[str, Fraction]) -> Fraction:
        """Return the non-negative amount by which the constraint is broken."""
        lhs = self.lhs.value(assignment)
        rhs = Fraction(self.rhs)
        if self.sense == Sense.LE:
            return max(Fraction(0), lhs - rhs)
        if self.sense == Sense.GE:
            return max(Fraction(0), rhs - lhs)
        return abs(lhs - rhs)


@dataclass(frozen=True)
class Evaluation:
    """Objective value and per-constraint violations of an assignment."""

    objective_value: Fraction
    violations: Mapping[str, Fraction]

    @property
    def feasible(self) -> bool:
        """Check if every constraint holds."""
        return all(magnitude == 0 for magnitude in self.violations.values())

    @property
    def total_violation(self) -> Fraction:
        """Return the summed violation magnitude."""
        return sum(self.violations.values(), Fraction(0))

    def to_dict(self) -> dict[str, Any]:
        """Convert evaluation to dictionary."""
        return {
            "objective": str(self.objective_value),
            "feasible": self.feasible,
            "violations": {
                label: str(value) for label, value in self.violations.items() if value
            },
        }


@dataclass(frozen=True)
class CqmModel:
    """A constrained model with a decoding index for sub-WOP variables."""

    variables: tuple[Variable, ...]
    objective: LinearExpr
    constraints: tuple[Constraint, ...]
    var_index: Mapping[tuple[str, str], str] = field(default_factory=dict)
    name: str = "model"

    def __post_init__(self) -> None:
        declared = {variable.id for variable in self.variables}
        if len(declared) != len(self.variables):
            raise ModelError("variable ids are not unique")
        labels = [constraint.label for constraint in self.constraints]
        if len(set(labels)) != len(labels):
            raise ModelError("constraint labels are not unique")
        used = self.objective.variables()
        for constraint in self.constraints:
            used |= constraint.lhs.variables()
        used |= set(self.var_index.values())
        undeclared = used - declared
        if undeclared:
            raise ModelError(f"undeclared variables: {sorted(undeclared)}")

    @cached_property
    def _variables_by_id(self) -> dict[str, Variable]:
        return {variable.id: variable for variable in self.variables}

    @cached_property
    def _constraints_by_label(self) -> dict[str, Constraint]:
        return {constraint.label: constraint for constraint in self.constraints}

    @property
    def num_variables(self) -> int:
        """Return the number of variables."""
        return len(self.variables)

    def variable(self, variable_id: str) -> Variable:
        """Return a variable by id."""
        return self._variables_by_id[variable_id]

    def has_variable(self, variable_id: str) -> bool:
        """Check if a variable id is declared."""
        return variable_id in self._variables_by_id

    def constraint(self, label: str) -> Constraint:
        """Return a constraint by label."""
        return self._constraints_by_label[label]

    def labels(self, prefix: str) -> list[str]:
        """Return labels starting with ``prefix:`` in model order."""
        return [c.label for c in self.constraints if c.label.split(":", 1)[0] == prefix]


def evaluate(model: CqmModel, assignment: Mapping[str, Any]) -> Evaluation:
    """Evaluate an assignment against a model.

    Args:
        model: Model to evaluate against
        assignment: Value for every model variable

    Returns:
        Objective value and per-constraint violation magnitudes

    Raises:
        AssignmentError: If a value is missing, unknown or out of domain
    """
    unknown = set(assignment) - {variable.id for variable in model.variables}
    if unknown:
        raise AssignmentError(f"unknown variables: {sorted(unknown)}")

    values: dict[str, Fraction] = {}
    for variable in model.variables:
        if variable.id not in assignment:
            raise AssignmentError(f"missing value for {variable.id}")
        values[variable.id] = variable.check(assignment[variable.id])

    return Evaluation(
        objective_value=model.objective.value(values),
        violations={c.label: c.violation(values) for c in model.constraints},
    )
