import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crumby.families import build_toroidal, cycle, named_graph, path, random_subcubic_graph
from crumby.graphcore import Coloring, Graph
from crumby.search import (
    Custom, InducedMatching, Mode, SearchGoal, SearchSizeError, census_rbipm, census_table, naive_count,
    search_colorings, search_order, search_rbipm,
)
from crumby.families import bundled_graphs
from crumby.verify import DEFAULT, STRICT, CrumbyPredicate, verify_crumby

CORPUS = ["prism3", "k4", "q3", "petersen", "k33_handle_adjacent", "k33_handle_disjoint", "wagner", "k33"]
PREDICATES = [DEFAULT, STRICT, CrumbyPredicate(red_path_bound=2), CrumbyPredicate(red_path_bound=4),
              InducedMatching(True), InducedMatching(False), Custom(frozenset({1, 2}), frozenset({2, 3}))]


def count(g, pred, **kw):
    return search_colorings(g, SearchGoal(pred, Mode.COUNT_ALL, **kw)).count


@pytest.mark.parametrize("name", CORPUS)
@pytest.mark.parametrize("pred", PREDICATES, ids=repr)
def test_counts_match_naive(name, pred):
    g = named_graph(name)
    assert count(g, pred) == naive_count(g, pred)


@pytest.mark.parametrize("pred", [InducedMatching(True), Custom(frozenset({2}), frozenset({2}))], ids=repr)
def test_symmetry_fix_preserves_counts(pred):
    for name in CORPUS:
        g = named_graph(name)
        assert count(g, pred, symmetry_fix=True) == count(g, pred)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6), st.sampled_from(PREDICATES))
def test_random_graphs_match_naive(n, seed, pred):
    g = random_subcubic_graph(n, seed)
    assert count(g, pred) == naive_count(g, pred)


@pytest.mark.parametrize("m,n", [(3, 3), (3, 4), (4, 4)])
def test_torus_l4_matches_naive(m, n):
    g = build_toroidal(m, n)
    pred = CrumbyPredicate(red_path_bound=4)
    assert count(g, pred) == naive_count(g, pred)


def test_known_counts():
    assert count(named_graph("prism3"), DEFAULT) == 0
    assert count(named_graph("petersen"), DEFAULT) == 5
    assert count(named_graph("wagner"), InducedMatching()) == 2
    assert count(named_graph("h_graph"), InducedMatching()) == 0
    assert count(named_graph("q3"), InducedMatching()) == 6


def test_find_first_returns_verified_witness():
    g = named_graph("petersen")
    s = search_colorings(g, SearchGoal(DEFAULT, Mode.FIND_FIRST))
    assert s.found and verify_crumby(g, s.witness).valid
    none = search_colorings(named_graph("prism3"), SearchGoal(DEFAULT, Mode.PROVE_NONE))
    assert none.none_certificate and none.witness is None


def test_stats_json():
    s = search_colorings(named_graph("prism3"), SearchGoal(DEFAULT, Mode.COUNT_ALL))
    d = json.loads(json.dumps(s.to_dict()))
    assert d["count"] == 0 and d["mode"] == "count" and d["nodes"] > 0
    assert set(d) == {"mode", "nodes", "prunes", "wall_time", "count"}


def test_search_order_is_a_permutation():
    for name in CORPUS:
        g = named_graph(name)
        assert sorted(search_order(g)) == list(range(g.n))


def test_partial_coloring_is_respected():
    g = named_graph("petersen")
    partial = Coloring.from_string("B" + "." * 9)
    s = search_colorings(g, SearchGoal(DEFAULT), partial=partial)
    assert s.witness is not None and s.witness[0].value == "B"
    assert search_colorings(g, SearchGoal(DEFAULT, Mode.COUNT_ALL), partial=partial).count == \
        sum(1 for c in _all_valid(g) if c[0] == "B")


def _all_valid(g: Graph):
    for mask in range(1 << g.n):
        s = "".join("B" if mask >> v & 1 else "R" for v in range(g.n))
        if verify_crumby(g, Coloring.from_string(s)).valid:
            yield s


def test_exhaustive_size_limit():
    with pytest.raises(SearchSizeError):
        search_colorings(path(41), SearchGoal(DEFAULT, Mode.COUNT_ALL))
    assert search_colorings(path(60), SearchGoal(DEFAULT)).witness is not None


def test_bad_order_rejected():
    with pytest.raises(ValueError):
        search_colorings(cycle(4), SearchGoal(DEFAULT), order=[0, 0, 1, 2])


def test_split_and_parallel_agree(tmp_path):
    g = build_toroidal(3, 5)
    goal = SearchGoal(CrumbyPredicate(red_path_bound=4), Mode.COUNT_ALL)
    base = search_colorings(g, goal).count
    assert search_colorings(g, goal, jobs=2, split_depth=5).count == base
    ck = tmp_path / "ck.json"
    assert search_colorings(g, goal, checkpoint=str(ck), split_depth=5).count == base
    assert ck.exists()
    # resume: every subtree is already recorded
    again = search_colorings(g, goal, checkpoint=str(ck), split_depth=5)
    assert again.count == base


def test_checkpoint_belongs_to_one_search(tmp_path):
    ck = tmp_path / "ck.json"
    search_colorings(build_toroidal(3, 4), SearchGoal(DEFAULT, Mode.COUNT_ALL), checkpoint=str(ck), split_depth=4)
    with pytest.raises(ValueError, match="different search"):
        search_colorings(build_toroidal(3, 5), SearchGoal(DEFAULT, Mode.COUNT_ALL), checkpoint=str(ck), split_depth=4)


def test_parallel_find_first_witness_is_valid():
    g = build_toroidal(4, 4)
    pred = CrumbyPredicate(red_path_bound=4)
    s = search_colorings(g, SearchGoal(pred), jobs=2, split_depth=4)
    assert s.witness is not None and verify_crumby(g, s.witness, pred).valid


def test_rbipm_aux_check_on_witnesses():
    for name in ("wagner", "q3"):
        s = search_rbipm(named_graph(name))
        assert s.witness is not None


def test_census():
    rows = census_rbipm(bundled_graphs("cubic_bipartite_12"))
    assert [r.rbipm for r in rows].count(False) == 2
    lacking = [r for r in rows if r.three_connected and not r.rbipm]
    assert len(lacking) == 1 and lacking[0].obstruction.kind == "K23Obstruction"
    assert "K23Obstruction" in census_table(rows)
    assert json.loads(json.dumps([r.to_dict() for r in rows]))


def test_census_records_errors_and_continues(monkeypatch):
    import crumby.search as search_mod
    real = search_mod.search_rbipm

    def flaky(g, mode=Mode.FIND_FIRST, **kw):
        if g.n == 10:
            raise RuntimeError("boom")
        return real(g, mode, **kw)

    monkeypatch.setattr(search_mod, "search_rbipm", flaky)
    rows = census_rbipm([named_graph("petersen"), named_graph("q3")])
    assert rows[0].error == "boom" and rows[1].rbipm is True


def test_c5xc5_has_no_l4_coloring():
    g = build_toroidal(5, 5)
    s = search_colorings(g, SearchGoal(CrumbyPredicate(red_path_bound=4), Mode.PROVE_NONE))
    assert s.none_certificate


def _numpy_count(g: Graph, length: int) -> int:
    """Vectorised filter over all 2^n colorings, written independently of the search."""
    n = g.n
    paths = set()

    def ext(p):
        if len(p) == length + 1:
            paths.add(sum(1 << x for x in p))
            return
        for w in g.adj[p[-1]]:
            if w not in p:
                ext(p + [w])

    for s in range(n):
        ext([s])
    path_masks = sorted(paths)
    full = (1 << n) - 1
    total = 0
    chunk = 1 << min(n, 21)
    for start in range(0, 1 << n, chunk):
        blue = np.arange(start, start + chunk, dtype=np.int64)
        red = ~blue & full
        ok = np.ones(chunk, bool)
        for v in range(n):
            bv = (blue >> v) & 1
            bn = sum((blue >> w) & 1 for w in g.adj[v])
            rn = sum((red >> w) & 1 for w in g.adj[v])
            ok &= ~((bv == 1) & (bn > 1))
            ok &= ~((bv == 0) & (rn == 0))
        r = red[ok]
        for pm in path_masks:
            if not len(r):
                break
            r = r[(r & pm) != pm]
        total += len(r)
    return total


def test_numpy_oracle_agrees_on_small_tori():
    g = build_toroidal(3, 4)
    assert _numpy_count(g, 4) == naive_count(g, CrumbyPredicate(red_path_bound=4))
    assert _numpy_count(named_graph("petersen"), 3) == 5


@pytest.mark.slow
def test_c5xc5_numpy_oracle():
    assert _numpy_count(build_toroidal(5, 5), 4) == 0
