import pytest

from crumby.construct import (
    STORED, BlockKind, BlockPlan, BlockStamp, ConflictingStamp, PlanError, UncoveredVertex, color_gp,
    color_gp_even, color_gp_odd, complete_partial, decode_odd, encode_odd, odd_case, odd_halves,
    odd_block_kinds, odd_plan_from_kinds, plan_gp_even, plan_gp_odd, regenerate_stored, stamp_plan,
)
from crumby.families import GPParams, build_gp, named_graph
from crumby.graphcore import Coloring
from crumby.verify import STRICT, verify_crumby

S, W, C = BlockKind.RED_SYRINGE, BlockKind.RED_WEDGE, BlockKind.BLUE_CROSS

# A second block order for GP(27,13): syringe, wedge, cross, wedge, cross, wedge, syringe.
GP27_UPPER = "RBBRRBBRRBBR"
GP27_LOWER = "RRBRRRBRRRBRR"


@pytest.mark.parametrize("k", range(2, 101))
def test_odd_family_strict(k):
    assert verify_crumby(build_gp(GPParams.odd(k)), color_gp_odd(k), STRICT).valid


@pytest.mark.parametrize("k", range(2, 101))
def test_even_family_strict(k):
    assert verify_crumby(build_gp(GPParams.even(k)), color_gp_even(k), STRICT).valid


def test_petersen_from_case_1_base():
    c = color_gp_odd(2)
    assert verify_crumby(named_graph("petersen"), c, STRICT).valid
    assert odd_halves(c, 2) == ("R", "RR")


def test_odd_cases():
    assert odd_case(2) == (1, 0)
    assert odd_case(3) == (2, 0)
    assert odd_case(4) == (0, 0)
    assert odd_case(7) == (3, 1)
    assert odd_case(13) == (3, 3)
    assert odd_block_kinds(3) == [C]
    assert odd_block_kinds(5) == [S, W, S]
    assert odd_block_kinds(7) == [C, W, C]


def test_case_3_recursion_for_k13():
    # base cross-wedge-cross, then a wedge and a syringe after the first cross
    assert odd_block_kinds(13) == [C, W, S, W, S, W, C]
    c = color_gp_odd(13)
    assert decode_odd(*odd_halves(c, 13)) == [C, W, S, W, S, W, C]


def test_gp27_alternative_sequence_is_valid():
    kinds = decode_odd(GP27_UPPER, GP27_LOWER)
    assert kinds == [S, W, C, W, C, W, S]
    c = stamp_plan(odd_plan_from_kinds(13, kinds, "alternative"))
    assert odd_halves(c, 13) == (GP27_UPPER, GP27_LOWER)
    assert verify_crumby(build_gp(GPParams.odd(13)), c, STRICT).valid


def test_decode_encode_round_trip():
    for k in (2, 3, 5, 7, 10, 13, 20, 33):
        kinds = odd_block_kinds(k)
        assert decode_odd(*encode_odd(kinds)) == kinds
        assert encode_odd(kinds) == odd_halves(color_gp_odd(k), k)


def test_decode_rejects_garbage():
    with pytest.raises(PlanError):
        decode_odd("RRRR", "B")
    with pytest.raises(PlanError):
        decode_odd("R", "RR" + "B")


def test_case_2_base_covers_every_vertex_once():
    plan = plan_gp_odd(3)
    seen = {}
    for b in plan.blocks:
        for x, _ in b.assignments(plan.params):
            seen[x] = seen.get(x, 0) + 1
    assert sorted(seen) == list(range(14)) and set(seen.values()) == {1}


def test_overlapping_wedges_conflict():
    p = GPParams.odd(5)
    plan = BlockPlan(p, [BlockStamp(W, 8), BlockStamp(W, 9)])
    with pytest.raises(ConflictingStamp):
        stamp_plan(plan)


def test_empty_plan_is_uncovered():
    with pytest.raises(UncoveredVertex):
        stamp_plan(BlockPlan(GPParams.odd(2), []))


def test_plan_length_mismatch():
    with pytest.raises(PlanError):
        odd_plan_from_kinds(5, [S])


def test_even_closed_form_and_anchor_plan():
    assert color_gp_even(2).to_string() == "RRBBRRBB" + "BBRRBBRR"
    c = color_gp_even(5).to_string()
    assert c[:20] == "RRRBB" * 4
    assert c[20:] == "BRBRR" * 4
    plan = plan_gp_even(7)
    assert plan.outer_code == ("RRRBBRRRBBRRBB",) * 2
    with pytest.raises(PlanError):
        plan_gp_even(6)


def test_even_anchor_components():
    from crumby.graphcore import RED, BLUE, connected_components
    from crumby.verify import star_shape
    g = build_gp(GPParams.even(5))
    c = color_gp_even(5)
    reds = connected_components(g, c.vertices_of(RED))
    shapes = sorted(star_shape(g, comp) for comp in reds)
    assert shapes == [1] * 4 + [3] * 4  # 24 red vertices: 4 claws and 4 inner edges
    assert all(len(comp) <= 2 for comp in connected_components(g, c.vertices_of(BLUE)))


@pytest.mark.parametrize("name", sorted(STORED))
def test_stored_exceptions_regenerate(name):
    assert regenerate_stored(name) == STORED[name]


def test_stored_exceptions_are_valid():
    assert verify_crumby(build_gp(GPParams(9, 4)), color_gp_odd(4), STRICT).valid
    assert verify_crumby(build_gp(GPParams(12, 5)), color_gp_even(3), STRICT).valid


def test_color_gp_dispatch():
    assert color_gp(9, 4) == color_gp_odd(4)
    assert color_gp(12, 5) == color_gp_even(3)
    with pytest.raises(ValueError):
        color_gp(10, 3)


def test_complete_partial():
    g = named_graph("petersen")
    full = color_gp_odd(2)
    assert complete_partial(g, full) == full
    outer_only = Coloring.from_string(full.to_string()[:5] + "." * 5)
    done = complete_partial(g, outer_only)
    assert done is not None and verify_crumby(g, done, STRICT).valid
    assert done.to_string()[:5] == full.to_string()[:5]
    assert complete_partial(named_graph("prism3"), Coloring.uncolored(6)) is None
