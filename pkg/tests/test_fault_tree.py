import random

import pytest
from hypothesis import given, settings, strategies as st

from qfaulttree import (
    BasicEvent,
    FaultTree,
    FaultTreeError,
    GateNode,
    GateType,
    dumps,
    parse,
    validate,
)
from qfaulttree.fault_tree import build

from helpers import dp_tree, random_tree


def kinds(exc_info):
    return [d.kind for d in exc_info.value.diagnostics]


class TestParse:

    def test_dp_file(self):
        tree = dp_tree()
        assert tree.n_events == 9
        assert tree.n_gates == 5
        assert tree.top == "control_system_failure"
        assert tree["human_error_r1"].failure_probability == 0.568
        assert tree["ups_r2_failure"].failure_probability == 3.66e-5

    def test_degenerate_single_event(self):
        tree = parse("basic a p=0.5\ntop a")
        assert (tree.n_events, tree.n_gates) == (1, 0)
        assert tree.top == "a"

    def test_unresolved_child_names_it(self):
        with pytest.raises(FaultTreeError) as exc:
            parse("gate g AND a b\ntop g")
        unresolved = [d for d in exc.value.diagnostics if d.kind == "unresolved"]
        assert unresolved and "'a'" in unresolved[0].message
        assert unresolved[0].line == 1

    def test_comments_blank_lines_and_forward_references(self):
        text = """
        # forward reference to a and b
        top g   # trailing comment
        gate g OR a b

        basic a p=2.44e-5
        basic b p=.5
        """
        tree = parse(text)
        assert list(tree.nodes) == ["g", "a", "b"]
        assert tree["a"].failure_probability == 2.44e-5

    def test_scientific_notation(self):
        tree = parse("basic a p=3.41E-4\ntop a")
        assert tree["a"].failure_probability == 3.41e-4

    @pytest.mark.parametrize("text, kind, line", [
        ("basic a 0.5\ntop a", "syntax", 1),
        ("basic a p=abc\ntop a", "syntax", 1),
        ("basic 1a p=0.5\ntop 1a", "syntax", 1),
        ("basic a p=0.5\ngate g XOR a\ntop g", "syntax", 2),
        ("basic a p=0.5\ngate g AND\ntop g", "syntax", 2),
        ("node a\nbasic a p=0.1\ntop a", "syntax", 1),
        ("basic a p=0.5\nbasic a p=0.1\ntop a", "duplicate", 2),
        ("basic a p=1.5\ntop a", "range", 1),
        ("basic a p=-0.1\ntop a", "range", 1),
        ("basic a p=nan\ntop a", "range", 1),
        ("basic a p=0.5\ngate g OR a h\ngate h AND g\ntop g", "cycle", 2),
        ("basic a p=0.5", "top", None),
        ("basic a p=0.5\ntop a\ntop a", "top", 3),
        ("basic a p=0.5\ntop b", "top", 2),
        ("basic a p=0.5\nbasic b p=0.5\ntop a", "unreachable", 2),
    ])
    def test_errors(self, text, kind, line):
        with pytest.raises(FaultTreeError) as exc:
            parse(text)
        diag = next(d for d in exc.value.diagnostics if d.kind == kind)
        assert diag.line == line

    def test_error_message_carries_line_number(self):
        with pytest.raises(FaultTreeError, match="line 2: duplicate"):
            parse("basic a p=0.5\nbasic a p=0.1\ntop a")

    def test_all_syntax_errors_reported_together(self):
        with pytest.raises(FaultTreeError) as exc:
            parse("foo\nbar\nbasic a p=0.1\ntop a")
        assert kinds(exc) == ["syntax", "syntax"]

    def test_shared_children_accepted(self):
        tree = parse("basic a p=0.5\nbasic b p=0.5\ngate g1 OR a b\ngate g2 AND a g1\ntop g2")
        assert tree.n_gates == 2


class TestValidate:

    def test_dp_tree_is_clean(self):
        assert validate(dp_tree()) == []

    def test_range_diagnostic(self):
        tree = FaultTree({"a": BasicEvent("a", 1.5)}, "a")
        diags = validate(tree)
        assert [d.kind for d in diags] == ["range"]

    def test_self_cycle(self):
        tree = FaultTree({"a": BasicEvent("a", 0.1), "g": GateNode("g", GateType.AND, ("a", "g"))}, "g")
        assert [d.kind for d in validate(tree)] == ["cycle"]

    def test_one_diagnostic_per_violation(self):
        tree = FaultTree({
            "a": BasicEvent("a", 2.0),
            "b": BasicEvent("b", -1.0),
            "g": GateNode("g", GateType.OR, ("a", "b", "c")),
        }, "g")
        assert sorted(d.kind for d in validate(tree)) == ["range", "range", "unresolved"]

    def test_gate_without_children(self):
        tree = FaultTree({"a": BasicEvent("a", 0.1), "g": GateNode("g", GateType.OR, ())}, "a")
        assert "arity" in [d.kind for d in validate(tree)]

    def test_no_basic_events(self):
        tree = FaultTree({"g": GateNode("g", GateType.OR, ())}, "g")
        assert "empty" in [d.kind for d in validate(tree)]

    def test_build_rejects_duplicates(self):
        with pytest.raises(FaultTreeError):
            build([BasicEvent("a", 0.1), BasicEvent("a", 0.2)], "a")


class TestGateOrder:

    def test_dp_order(self):
        order = [g.name for g in dp_tree().gate_order()]
        assert order == ["computer_r1_failure", "computer_r2_failure", "computer_system_failure",
                         "power_system_failure", "control_system_failure"]

    def test_ties_follow_declaration_order(self):
        tree = parse("gate top OR g2 g1\ngate g2 AND a\ngate g1 AND a\nbasic a p=0.1\ntop top")
        assert [g.name for g in tree.gate_order()] == ["g2", "g1", "top"]

    @settings(max_examples=200, deadline=None)
    @given(st.randoms(use_true_random=False), st.booleans())
    def test_children_precede_parents(self, rng, shared):
        tree = random_tree(rng, shared=shared)
        seen = set(e.name for e in tree.basic_events)
        for gate in tree.gate_order():
            assert all(c in seen for c in gate.children)
            seen.add(gate.name)
        assert len(seen) == len(tree.nodes)


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False), st.booleans())
def test_round_trip(rng, shared):
    tree = random_tree(rng, max_events=8, shared=shared)
    again = parse(dumps(tree))
    assert again == tree
    assert list(again.nodes) == list(tree.nodes)
    assert dumps(again) == dumps(tree)


def test_round_trip_dp():
    tree = dp_tree()
    assert parse(dumps(tree)) == tree


def test_trees_are_immutable():
    tree = dp_tree()
    with pytest.raises(AttributeError):
        tree.top = "x"
    with pytest.raises(AttributeError):
        tree["human_error_r1"].failure_probability = 0.1
    with pytest.raises(TypeError):
        tree.nodes["x"] = BasicEvent("x", 0.1)


def test_random_trees_validate():
    for seed in range(100):
        assert validate(random_tree(random.Random(seed), shared=seed % 2 == 0)) == []
