"""Tests for the constrained model, the sub-WOP builder and model files."""

from fractions import Fraction

import numpy as np
import pytest

from ..const import LABEL_CAPACITY, LABEL_MUST_PLACE, LABEL_ONE_LOCATION, LocationKind
from ..core.feasibility import check_partial
from ..core.models import Instance, Item, ItemType, Location
from ..cqm.builder import assignment_to_partial, build_subwop_model, variable_id
from ..cqm.model import Constraint, CqmModel, LinearExpr, Sense, Variable, Vartype, evaluate
from ..cqm.serialization import dump_model, load_model, model_from_dict, model_to_dict
from ..exceptions import (
    AssignmentError,
    FileFormatError,
    ModelError,
    MultiPlacementError,
    StructurallyInfeasibleError,
)
from .helpers import small_instances

T1_VARIABLES = [
    "x[a1,Floor]",
    "x[a1,Shelf]",
    "x[a2,Floor]",
    "x[a2,Shelf]",
    "x[a3,Floor]",
    "x[a3,Shelf]",
    "x[b1,Floor]",
]


def assign(model: CqmModel, *ones: str) -> dict[str, int]:
    """Return an assignment with the given variables set to 1."""
    return {var.id: int(var.id in ones) for var in model.variables}


class TestVariable:
    """Test variable domains."""

    def test_binary_bounds(self):
        """Test binary variables get [0, 1] bounds."""
        assert Variable("x").bounds == (0, 1)

    def test_integer_needs_bounds(self):
        """Test integer variables must declare bounds."""
        with pytest.raises(ModelError):
            Variable("n", Vartype.INTEGER)

    def test_check(self):
        """Test domain checks accept integral floats and reject the rest."""
        variable = Variable("x")
        assert variable.check(1.0) == 1
        with pytest.raises(AssignmentError):
            variable.check(2)
        with pytest.raises(AssignmentError):
            variable.check(0.5)
        real = Variable("r", Vartype.REAL, (Fraction(0), Fraction(2)))
        assert real.check(Fraction(3, 2)) == Fraction(3, 2)


class TestCqmModel:
    """Test model consistency checks and evaluation."""

    def test_undeclared_variable(self):
        """Test constraints may only use declared variables."""
        with pytest.raises(ModelError):
            CqmModel(
                variables=(Variable("x"),),
                objective=LinearExpr({"x": Fraction(1)}),
                constraints=(Constraint("c", LinearExpr({"y": Fraction(1)}), Sense.LE, 1),),
            )

    def test_duplicate_label(self):
        """Test constraint labels must be unique."""
        row = Constraint("c", LinearExpr({"x": Fraction(1)}), Sense.LE, Fraction(1))
        with pytest.raises(ModelError):
            CqmModel((Variable("x"),), LinearExpr(), (row, row))

    def test_quadratic_and_equality(self):
        """Test quadratic objective terms and equality violations."""
        model = CqmModel(
            variables=(Variable("x"), Variable("y")),
            objective=LinearExpr({"x": Fraction(2)}, Fraction(1), {("x", "y"): Fraction(-3)}),
            constraints=(
                Constraint("eq", LinearExpr({"x": 1, "y": 1}), Sense.EQ, Fraction(1)),
            ),
        )
        evaluation = evaluate(model, {"x": 1, "y": 1})
        assert evaluation.objective_value == 0
        assert evaluation.violations == {"eq": 1}
        assert not evaluation.feasible

    def test_missing_value(self, t1_model):
        """Test every variable needs a value."""
        assignment = assign(t1_model)
        del assignment["x[b1,Floor]"]
        with pytest.raises(AssignmentError):
            evaluate(t1_model, assignment)

    def test_unknown_variable(self, t1_model):
        """Test unknown variables are rejected."""
        with pytest.raises(AssignmentError):
            evaluate(t1_model, {**assign(t1_model), "x[b1,Shelf]": 0})


class TestBuildSubwopModel:
    """Test the sub-WOP builder."""

    def test_t1_structure(self, t1_model):
        """Test variable and constraint counts of T1."""
        assert [var.id for var in t1_model.variables] == T1_VARIABLES
        assert all(var.vartype == Vartype.BINARY for var in t1_model.variables)
        assert len(t1_model.labels(LABEL_ONE_LOCATION)) == 4
        assert t1_model.labels(LABEL_CAPACITY) == ["cap:Floor", "cap:Shelf"]
        assert t1_model.labels(LABEL_MUST_PLACE) == ["must-place:b1"]
        assert t1_model.name == "T1"

    def test_objective_counts_placed(self, t1_model):
        """Test the objective is minus one per variable."""
        assert set(t1_model.objective.terms.values()) == {Fraction(-1)}
        assert len(t1_model.objective.terms) == 7

    def test_capacity_row(self, t1_model):
        """Test capacity rows weigh variables by area."""
        row = t1_model.constraint("cap:Floor")
        assert row.rhs == 10
        assert row.lhs.terms[variable_id("b1", "Floor")] == 5
        assert row.lhs.terms[variable_id("a1", "Floor")] == 3

    def test_minimal(self):
        """Test one stackable item on one floor."""
        instance = Instance(
            "min",
            (Location("L1", 4, LocationKind.FLOOR),),
            (ItemType("A", 2, max_stack_height=3),),
            (Item("i1", "A"),),
        )
        model = build_subwop_model(instance)
        assert model.num_variables == 1
        assert len(model.labels(LABEL_ONE_LOCATION)) == 1
        assert len(model.labels(LABEL_CAPACITY)) == 1
        assert model.labels(LABEL_MUST_PLACE) == []

    def test_structurally_infeasible(self):
        """Test a floor-only non-stackable item with only shelves fails."""
        instance = Instance(
            "shelves",
            (Location("S1", 9, LocationKind.SHELF),),
            (ItemType("B", 2, shelf_allowed=False),),
            (Item("b1", "B"),),
        )
        with pytest.raises(StructurallyInfeasibleError) as err:
            build_subwop_model(instance)
        assert "structurally infeasible" in str(err.value)

    def test_no_shelf_variables_for_prohibited(self):
        """Test no random assignment decodes a prohibited item onto a shelf."""
        rng = np.random.default_rng(5)
        for instance in small_instances(12, seed=60):
            model = build_subwop_model(instance)
            for _ in range(10):
                bits = rng.integers(0, 2, model.num_variables)
                assignment = {var.id: int(b) for var, b in zip(model.variables, bits)}
                try:
                    partial = assignment_to_partial(assignment, model, instance)
                except MultiPlacementError:
                    continue
                report = check_partial(partial, instance)
                assert "shelf-prohibited" not in report.rules


class TestEvaluateT1:
    """Test evaluation of T1 assignments."""

    def test_all_zero(self, t1_model):
        """Test the empty assignment only breaks must-place."""
        evaluation = evaluate(t1_model, assign(t1_model))
        assert evaluation.objective_value == 0
        assert evaluation.violations["must-place:b1"] == 1
        assert evaluation.total_violation == 1
        assert not evaluation.feasible

    def test_feasible_optimum(self, t1_model):
        """Test a three-item placement is feasible with objective -3."""
        evaluation = evaluate(
            t1_model, assign(t1_model, "x[b1,Floor]", "x[a1,Floor]", "x[a2,Shelf]")
        )
        assert evaluation.objective_value == -3
        assert evaluation.feasible

    def test_shelf_overload(self, t1_model):
        """Test three A items on the shelf overflow by 5."""
        evaluation = evaluate(
            t1_model, assign(t1_model, "x[a1,Shelf]", "x[a2,Shelf]", "x[a3,Shelf]")
        )
        assert evaluation.violations["cap:Shelf"] == 5


class TestAssignmentToPartial:
    """Test decoding assignments into partial solutions."""

    def test_decode(self, t1_instance, t1_model):
        """Test the feasible assignment decodes with a3 unplaced."""
        partial = assignment_to_partial(
            assign(t1_model, "x[b1,Floor]", "x[a1,Floor]", "x[a2,Shelf]"), t1_model, t1_instance
        )
        assert partial.to_dict() == {"a1": "Floor", "a2": "Shelf", "a3": None, "b1": "Floor"}

    def test_all_zero(self, t1_instance, t1_model):
        """Test the empty assignment places nothing."""
        partial = assignment_to_partial(assign(t1_model), t1_model, t1_instance)
        assert partial.placed_items() == []

    def test_multi_placement(self, t1_instance, t1_model):
        """Test one item at two locations is rejected."""
        with pytest.raises(MultiPlacementError) as err:
            assignment_to_partial(
                assign(t1_model, "x[a1,Floor]", "x[a1,Shelf]"), t1_model, t1_instance
            )
        assert str(err.value).startswith("multi-placement")


class TestModelFiles:
    """Test the model exchange format."""

    def test_round_trip(self, tmp_path, t1_model):
        """Test a saved model loads back identical."""
        path = tmp_path / "t1.cqm.json"
        path.write_text(dump_model(t1_model), encoding="utf-8")
        loaded = load_model(path)
        assert loaded.variables == t1_model.variables
        assert loaded.objective == t1_model.objective
        assert loaded.constraints == t1_model.constraints
        assert dict(loaded.var_index) == dict(t1_model.var_index)
        assert loaded.name == t1_model.name

    def test_rational_coefficients(self):
        """Test non-integral coefficients survive as fractions."""
        model = CqmModel(
            (Variable("r", Vartype.REAL, (Fraction(0), Fraction(5, 2))),),
            LinearExpr({"r": Fraction(1, 3)}),
            (Constraint("c", LinearExpr({"r": Fraction(2)}), Sense.GE, Fraction(1, 2)),),
        )
        document = model_to_dict(model)
        assert document["objective"]["terms"] == {"r": "1/3"}
        assert model_from_dict(document) == model

    def test_quadratic_terms(self, tmp_path):
        """Test quadratic terms survive in the objective and in constraints."""
        model = CqmModel(
            (Variable("x", Vartype.BINARY), Variable("y", Vartype.BINARY)),
            LinearExpr({"x": Fraction(-1)}, quadratic={("x", "y"): Fraction(3)}),
            (
                Constraint(
                    "pair",
                    LinearExpr({"y": Fraction(1)}, quadratic={("x", "y"): Fraction(2, 3)}),
                    Sense.LE,
                    Fraction(1),
                ),
            ),
        )
        document = model_to_dict(model)
        assert document["objective"]["quadratic"] == [["x", "y", 3]]
        assert document["constraints"][0]["quadratic"] == [["x", "y", "2/3"]]

        path = tmp_path / "pair.cqm.json"
        path.write_text(dump_model(model), encoding="utf-8")
        loaded = load_model(path)
        assert loaded == model
        evaluation = evaluate(loaded, {"x": 1, "y": 1})
        assert evaluation.objective_value == 2
        assert evaluation.violations["pair"] == Fraction(2, 3)

    def test_duplicate_quadratic_term(self):
        """Test a repeated quadratic pair is a format error."""
        document = {
            "variables": [{"id": "x", "vartype": "BINARY"}, {"id": "y", "vartype": "BINARY"}],
            "objective": {"terms": {}, "quadratic": [["x", "y", 1], ["x", "y", 2]]},
            "constraints": [],
        }
        with pytest.raises(FileFormatError):
            model_from_dict(document)

    def test_unknown_sense(self, t1_model):
        """Test an invalid sense is a format error."""
        document = model_to_dict(t1_model)
        document["constraints"][0]["sense"] = "<"
        with pytest.raises(FileFormatError):
            model_from_dict(document)

    def test_broken_json(self, tmp_path):
        """Test broken JSON reports its position."""
        path = tmp_path / "broken.json"
        path.write_text('{"variables": [', encoding="utf-8")
        with pytest.raises(FileFormatError) as err:
            load_model(path)
        assert err.value.line == 1
