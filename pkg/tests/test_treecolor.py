import pytest
from hypothesis import given, settings, strategies as st

from crumby.families import TreeSpec, enumerate_subcubic_trees, random_subcubic_tree
from crumby.treecolor import (
    InvariantBroken, check_tree_theorem, color_tree, color_tree_traced, _TreeColorer,
)
from crumby.verify import STRICT, verify_crumby

# Smallest tree on which Cases 0-5c as written break (Case 5b with a blue-edge left son).
GAP_TREE = TreeSpec((-1, 0, 0, 1, 1, 3, 4, 4))


def test_single_vertex():
    assert color_tree(TreeSpec((-1,))).to_string() == "B"


def test_path_rooted_at_end():
    c, trace = color_tree_traced(TreeSpec((-1, 0, 1, 2)))
    assert trace == ["0", "1", "3", "2"]
    assert c.to_string() == "BRRB"


def test_claw_rooted_at_center():
    c, trace = color_tree_traced(TreeSpec((-1, 0, 0, 0)))
    assert c.to_string()[0] == "R"
    assert sorted(c.to_string()[1:]) == ["B", "B", "R"]
    assert trace[2] == "3"  # root reading of Case 3


@pytest.mark.parametrize("n", range(1, 12))
def test_all_small_trees(n):
    for t in enumerate_subcubic_trees(n):
        assert verify_crumby(t.to_graph(), color_tree(t), STRICT).valid


def test_literal_rules_gap_is_reproduced():
    with pytest.raises(InvariantBroken, match="case 5b"):
        color_tree(GAP_TREE, rules="literal")
    c, trace = color_tree_traced(GAP_TREE)
    assert trace[-1] == "5b+"
    assert verify_crumby(GAP_TREE.to_graph(), c, STRICT).valid


def test_literal_rules_fail_only_in_case_5b():
    s = check_tree_theorem(10, rules="literal")
    assert s.failures and not s.unhandled
    assert all("case 5b:" in msg for _, msg in s.failures)


def test_literal_and_extended_agree_when_literal_succeeds():
    for t in enumerate_subcubic_trees(9):
        try:
            literal = color_tree(t, rules="literal")
        except InvariantBroken:
            continue
        assert literal == color_tree(t)


def test_recolor_bound():
    worst = 0
    for t in enumerate_subcubic_trees(10):
        c = _TreeColorer(t, "local")
        c.run()
        worst = max(worst, c.max_recolored)
    assert worst == 4


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 300), st.integers(0, 10**9))
def test_random_trees(n, seed):
    t = random_subcubic_tree(n, seed)
    assert verify_crumby(t.to_graph(), color_tree(t, check="none"), STRICT).valid


def test_unknown_rule_set():
    with pytest.raises(ValueError):
        color_tree(GAP_TREE, rules="bogus")


def test_summary_counts():
    s = check_tree_theorem(8, random_n=50, random_seeds=5)
    assert s.ok and s.trees == 1 + 1 + 2 + 5 + 12 + 30 + 76 + 196 and s.random_trees == 5
    assert s.to_dict()["failures"] == 0
