"""Tests for the WOP domain model, checks, objectives and file formats."""

from fractions import Fraction

import numpy as np
import pytest

from ..const import (
    RULE_CAPACITY,
    RULE_DUPLICATE_ID,
    RULE_MISSING_ITEM,
    RULE_NON_POSITIVE_AREA,
    RULE_SHELF_PROHIBITED,
    RULE_STACK_HEIGHT,
    RULE_STACK_MIXED_TYPES,
    LocationKind,
)
from ..core.feasibility import check_partial, is_feasible, validate_instance
from ..core.io import (
    dump_instance,
    dump_solution,
    load_instance,
    load_solution,
    parse_instance,
    solution_from_dict,
)
from ..core.layout import StackLayout
from ..core.models import (
    Instance,
    Item,
    ItemType,
    Location,
    PartialSolution,
    Placement,
    WopSolution,
)
from ..core.objectives import (
    canonical_key,
    objective_o1,
    objective_o2,
    scalarize,
    solution_fingerprint,
    to_fraction,
)
from ..exceptions import (
    FileFormatError,
    InfeasibleSolutionError,
    InstanceFormatError,
    InvalidWeightsError,
    MalformedSolutionError,
)
from .conftest import make_s1, make_t1
from .helpers import all_solutions, brute_force_min_score, small_instances


class TestInstance:
    """Test instance lookups."""

    def test_lookups(self, t1_instance):
        """Test id lookups and eligibility."""
        assert t1_instance.type_of("b1").id == "B"
        assert t1_instance.location("Shelf").is_shelf
        assert t1_instance.eligible("a1", "Shelf")
        assert not t1_instance.eligible("b1", "Shelf")
        assert [loc.id for loc in t1_instance.eligible_locations("b1")] == ["Floor"]
        assert t1_instance.total_capacity == 14

    def test_place_time(self):
        """Test the per-level placement time."""
        floor = Location("Floor", 10, LocationKind.FLOOR, 5, 2)
        assert floor.place_time(0) == 5
        assert floor.place_time(2) == 9

    def test_stackable(self):
        """Test stackability follows the maximum height."""
        assert ItemType("A", 3, max_stack_height=2).stackable
        assert not ItemType("B", 5, max_stack_height=1).stackable


class TestValidateInstance:
    """Test structural instance validation."""

    def test_t1_valid(self, t1_instance):
        """Test the fixture instance passes."""
        report = validate_instance(t1_instance)
        assert report.feasible
        assert report.violations == ()

    def test_duplicate_location(self, t1_instance):
        """Test a repeated location id is reported once."""
        instance = Instance(
            "dup",
            t1_instance.locations + (Location("Floor", 3, LocationKind.FLOOR),),
            t1_instance.item_types,
            t1_instance.items,
        )
        report = validate_instance(instance)
        assert not report.feasible
        assert report.rules == [RULE_DUPLICATE_ID]

    def test_zero_area(self, t1_instance):
        """Test an item type with area 0 is rejected."""
        instance = Instance(
            "flat",
            t1_instance.locations,
            (ItemType("A", 0, True, 2), ItemType("B", 5, False, 1)),
            t1_instance.items,
        )
        assert validate_instance(instance).rules == [RULE_NON_POSITIVE_AREA]

    def test_dangling_type_and_empty(self):
        """Test several problems are reported together."""
        instance = Instance(
            "broken",
            (Location("L1", 0, LocationKind.FLOOR, -1, 0),),
            (),
            (Item("i1", "missing"),),
        )
        rules = validate_instance(instance).rules
        assert "non-positive-capacity" in rules
        assert "negative-time" in rules
        assert "dangling-type" in rules


class TestIsFeasible:
    """Test solution feasibility."""

    def test_s1_feasible(self, t1_instance, s1_solution):
        """Test the reference solution satisfies every rule."""
        assert is_feasible(s1_solution, t1_instance).feasible

    def test_stack_height(self, t1_instance, s1_solution):
        """Test a3 at level 2 exceeds the height of type A."""
        solution = s1_solution.with_placements({"a3": Placement("Floor", 1, 2)})
        report = is_feasible(solution, t1_instance)
        assert not report.feasible
        assert RULE_STACK_HEIGHT in report.rules

    def test_shelf_prohibited(self, t1_instance, s1_solution):
        """Test b1 may not sit on the shelf."""
        solution = s1_solution.with_placements({"b1": Placement("Shelf", 1, 0)})
        report = is_feasible(solution, t1_instance)
        assert RULE_SHELF_PROHIBITED in report.rules
        assert RULE_CAPACITY in report.rules

    def test_mixed_types(self, t1_instance, s1_solution):
        """Test a stack holding two types is rejected."""
        solution = s1_solution.with_placements({"a1": Placement("Floor", 0, 1)})
        assert RULE_STACK_MIXED_TYPES in is_feasible(solution, t1_instance).rules

    def test_missing_item(self, t1_instance, s1_solution):
        """Test an unplaced item breaks completeness."""
        solution = WopSolution(
            {k: v for k, v in s1_solution.assignments.items() if k != "a2"}
        )
        assert is_feasible(solution, t1_instance).rules == [RULE_MISSING_ITEM]

    def test_capacity(self, t1_wide):
        """Test ground area above capacity is rejected."""
        solution = make_s1().with_placements(
            {"a3": Placement("Floor", 2, 0), "a2": Placement("Floor", 3, 0)}
        )
        assert is_feasible(solution, t1_wide).rules == [RULE_CAPACITY]

    def test_unknown_location(self, t1_instance, s1_solution):
        """Test an unknown location is malformed, not infeasible."""
        solution = s1_solution.with_placements({"a2": Placement("Roof", 0, 0)})
        with pytest.raises(MalformedSolutionError):
            is_feasible(solution, t1_instance)

    def test_unknown_item(self, t1_instance, s1_solution):
        """Test an unknown item is malformed."""
        solution = s1_solution.with_placements({"zz": Placement("Floor", 5, 0)})
        with pytest.raises(MalformedSolutionError):
            is_feasible(solution, t1_instance)


class TestCheckPartial:
    """Test ground-level partial solution checks."""

    def test_valid(self, t1_instance):
        """Test the decoded optimum is a valid partial."""
        partial = PartialSolution({"b1": "Floor", "a1": "Floor", "a2": "Shelf", "a3": None})
        assert check_partial(partial, t1_instance).feasible
        assert partial.unplaced_items(t1_instance) == ["a3"]

    def test_capacity(self, t1_instance):
        """Test three A items exceed the shelf."""
        partial = PartialSolution({"a1": "Shelf", "a2": "Shelf", "a3": "Shelf"})
        assert check_partial(partial, t1_instance).rules == [RULE_CAPACITY]

    def test_shelf_prohibited(self, t1_instance):
        """Test b1 on the shelf is reported."""
        partial = PartialSolution({"b1": "Shelf"})
        assert RULE_SHELF_PROHIBITED in check_partial(partial, t1_instance).rules


class TestObjectives:
    """Test o1, o2 and scalarization."""

    def test_s1_values(self, t1_instance, s1_solution):
        """Test o1 and o2 of the reference solution."""
        assert objective_o1(s1_solution, t1_instance) == 20
        assert objective_o2(s1_solution, t1_instance) == 11

    def test_own_slot(self, t1_wide):
        """Test a3 on its own ground slot adds its area and saves a level."""
        solution = make_s1().with_placements({"a3": Placement("Floor", 2, 0)})
        assert objective_o2(solution, t1_wide) == 14
        assert objective_o1(solution, t1_wide) == 20 - 2

    def test_single_item(self):
        """Test a single ground item costs the base time."""
        instance = Instance(
            "one",
            (Location("Floor", 10, LocationKind.FLOOR, 5, 2),),
            (ItemType("A", 3),),
            (Item("a1", "A"),),
        )
        solution = WopSolution({"a1": Placement("Floor")})
        assert objective_o1(solution, instance) == 5

    def test_one_tall_stack(self):
        """Test a full stack occupies the area of one item."""
        instance = Instance(
            "tall",
            (Location("Floor", 4, LocationKind.FLOOR, 1, 1),),
            (ItemType("A", 3, max_stack_height=4),),
            tuple(Item(f"a{i}", "A") for i in range(4)),
        )
        solution = WopSolution({f"a{i}": Placement("Floor", 0, i) for i in range(4)})
        assert objective_o2(solution, instance) == 3

    def test_infeasible_raises(self, t1_instance, s1_solution):
        """Test objectives refuse infeasible solutions."""
        solution = s1_solution.with_placements({"b1": Placement("Shelf", 1, 0)})
        with pytest.raises(InfeasibleSolutionError):
            objective_o1(solution, t1_instance)

    @pytest.mark.parametrize(
        ("weights", "expected"), [((1, 1), 31), ((1, 0), 20), ((0, 1), 11)]
    )
    def test_scalarize(self, weights, expected):
        """Test weighted sums of the reference objectives."""
        assert scalarize(20, 11, weights) == expected

    def test_scalarize_exact(self):
        """Test float weights are handled exactly."""
        assert scalarize(10, 10, (0.1, 0.2)) == Fraction(3)
        assert to_fraction(0.1) == Fraction(1, 10)

    @pytest.mark.parametrize("weights", [(0, 0), (-1, 1)])
    def test_invalid_weights(self, weights):
        """Test zero and negative weights are rejected."""
        with pytest.raises(InvalidWeightsError):
            scalarize(1, 1, weights)

    def test_brute_force_minimum(self, t1_instance):
        """Test exhaustive enumeration finds 28 as the (1,1) minimum of T1."""
        assert brute_force_min_score(t1_instance) == 28


class TestCanonicalKey:
    """Test canonical solution keys."""

    def test_slot_relabel(self, s1_solution):
        """Test swapping floor slots keeps the key."""
        relabeled = s1_solution.with_placements(
            {
                "b1": Placement("Floor", 1, 0),
                "a1": Placement("Floor", 0, 0),
                "a3": Placement("Floor", 0, 1),
            }
        )
        assert canonical_key(relabeled) == canonical_key(s1_solution)

    def test_different_structure(self, s1_solution):
        """Test unstacking a3 changes the key."""
        variant = s1_solution.with_placements({"a3": Placement("Floor", 2, 0)})
        assert canonical_key(variant) != canonical_key(s1_solution)

    def test_order_independent(self, s1_solution):
        """Test insertion order does not matter."""
        reversed_solution = WopSolution(
            dict(reversed(list(s1_solution.assignments.items())))
        )
        assert canonical_key(reversed_solution) == canonical_key(s1_solution)

    def test_random_relabelings(self):
        """Test random slot permutations never change the key."""
        rng = np.random.default_rng(11)
        for instance in small_instances(6, seed=40, max_items=3):
            for solution in list(all_solutions(instance))[:20]:
                mapping = {}
                for location in instance.locations:
                    slots = sorted(
                        {p.stack_slot for _, p in solution if p.location_id == location.id}
                    )
                    labels = rng.permutation(len(slots)) + 10
                    mapping.update(
                        {(location.id, slot): int(label) for slot, label in zip(slots, labels)}
                    )
                relabeled = WopSolution(
                    {
                        item_id: Placement(p.location_id, mapping[p.stack], p.level)
                        for item_id, p in solution
                    }
                )
                assert canonical_key(relabeled) == canonical_key(solution)

    def test_fingerprint(self, s1_solution):
        """Test the fingerprint is a SHA-256 hex digest."""
        fingerprint = solution_fingerprint(canonical_key(s1_solution))
        assert len(fingerprint) == 64
        assert fingerprint == solution_fingerprint(canonical_key(make_s1()))


class TestStackLayout:
    """Test the mutable stack layout."""

    def test_from_solution_round_trip(self, t1_instance, s1_solution):
        """Test a layout freezes back into the same solution."""
        layout = StackLayout.from_solution(s1_solution, t1_instance)
        assert layout.to_solution() == s1_solution
        assert layout.residual("Floor") == 2
        assert layout.residual("Shelf") == 1

    def test_push_pop(self, t1_instance, s1_solution):
        """Test moving a top item frees nothing until a stack empties."""
        layout = StackLayout.from_solution(s1_solution, t1_instance)
        assert layout.pop(("Floor", 1)) == "a3"
        assert layout.residual("Floor") == 2
        assert layout.can_push(layout.stack(("Shelf", 0)), "a3")
        assert layout.push(("Shelf", 0), "a3") == 1
        assert layout.pop(("Shelf", 0)) == "a3"
        assert layout.pop(("Shelf", 0)) == "a2"
        assert layout.residual("Shelf") == 4

    def test_cheapest(self, t1_instance):
        """Test the shelf stack wins on per-level time."""
        layout = StackLayout(t1_instance)
        layout.open_stack("a1", "Floor")
        layout.open_stack("a2", "Shelf")
        assert layout.cheapest(layout.stacks_of_type("A")).key == ("Shelf", 0)

    def test_copy_independent(self, t1_instance, s1_solution):
        """Test copies do not share stacks."""
        layout = StackLayout.from_solution(s1_solution, t1_instance)
        clone = layout.copy()
        clone.pop(("Floor", 1))
        assert layout.stack(("Floor", 1)).height == 2


class TestFiles:
    """Test instance and solution file formats."""

    def test_instance_round_trip(self, tmp_path, t1_instance):
        """Test an instance survives dump and load."""
        path = tmp_path / "t1.json"
        path.write_text(dump_instance(t1_instance), encoding="utf-8")
        assert load_instance(path) == t1_instance

    def test_solution_round_trip(self, tmp_path, s1_solution):
        """Test a solution survives dump and load."""
        path = tmp_path / "s1.json"
        path.write_text(dump_solution(s1_solution), encoding="utf-8")
        assert load_solution(path) == s1_solution

    def test_invalid_json_position(self):
        """Test broken JSON reports line and column."""
        with pytest.raises(FileFormatError) as err:
            parse_instance('{\n  "name": }')
        assert err.value.line == 2
        assert "parse-error" in str(err.value)

    def test_unknown_key(self, t1_instance):
        """Test extra keys are rejected by the schema."""
        data = dump_instance(t1_instance).replace('"name"', '"colour": 1, "name"', 1)
        with pytest.raises(InstanceFormatError):
            parse_instance(data)

    def test_bad_kind(self, t1_instance):
        """Test an unknown location kind is rejected."""
        with pytest.raises(InstanceFormatError):
            parse_instance(dump_instance(t1_instance).replace('"shelf"', '"attic"'))

    def test_solution_negative_level(self):
        """Test negative levels are rejected."""
        with pytest.raises(MalformedSolutionError):
            solution_from_dict({"a1": {"location": "Floor", "slot": 0, "level": -1}})

    def test_missing_file(self, tmp_path):
        """Test an unreadable file raises a format error."""
        with pytest.raises(FileFormatError):
            load_instance(tmp_path / "missing.json")

    def test_fixture_factory(self):
        """Test the fixture factory builds the documented instance."""
        instance = make_t1()
        assert [item.id for item in instance.items] == ["a1", "a2", "a3", "b1"]
