"""One-shot reproduction of the acceptance claims.

Each ``check_*`` function runs one claim and returns a :class:`ClaimResult`;
failures are reported as data, never raised. Time limits are part of the
claim: a correct answer that misses its bound is a FAIL.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .construct import color_gp_even, color_gp_odd
from .families import (
    GPParams, build_gp, build_toroidal, bundled_graphs, bundled_lines, named_graph,
    random_subcubic_graph,
)
from .graphcore import Coloring, are_isomorphic, enumerate_perfect_matchings, parse_graph6, write_graph6
from .search import (
    InducedMatching, Mode, SearchGoal, census_rbipm, naive_count, search_colorings, search_rbipm,
)
from .treecolor import check_tree_theorem
from .verify import DEFAULT, STRICT, CrumbyPredicate, build_aux_rb_graph, check_rbipm_necessary, contains_k23, verify_crumby


@dataclass
class ClaimResult:
    id: int
    claim: str
    passed: bool
    seconds: float
    limit: float | None
    detail: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        # wall time is left out so the JSON is identical across runs
        return {"id": self.id, "claim": self.claim, "status": self.status, "limit_s": self.limit,
                "detail": self.detail}

    def line(self) -> str:
        bound = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"[{self.status}] {self.id:>2}. {self.claim}: {self.seconds:.2f}s{bound} {self.detail}"


def _timed(cid: int, claim: str, limit: float | None, body: Callable[[dict], bool]) -> ClaimResult:
    detail: dict = {}
    t0 = time.perf_counter()
    try:
        ok = body(detail)
    except Exception as exc:  # a crash is a failed claim, with the message kept
        ok = False
        detail["error"] = f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if limit is not None and dt > limit:
        detail["timeout"] = True
        ok = False
    return ClaimResult(cid, claim, ok, dt, limit, detail)


# Every RBIPM witness found by the checks below is passed through here.
def _aux_ok(g, witness) -> bool:
    aux = build_aux_rb_graph(g, witness)
    return aux.is_regular(4) and len(aux.red_nodes) == len(aux.blue_nodes)


_AUX_LOG: list[tuple[str, bool]] = []


def _rbipm(g, mode: Mode = Mode.FIND_FIRST):
    stats = search_rbipm(g, mode)
    if stats.witness is not None and g.is_regular(3):
        _AUX_LOG.append((g.name or write_graph6(g), _aux_ok(g, stats.witness)))
    return stats


def _gp_family(color, params, detail: dict) -> bool:
    bad = []
    for k in range(2, 51):
        p = params(k)
        if not verify_crumby(build_gp(p), color(k), STRICT).valid:
            bad.append(k)
    detail["k_range"] = [2, 50]
    detail["failed_k"] = bad
    return not bad


def check_odd_family() -> ClaimResult:
    return _timed(1, "GP(2k+1,k) strict crumby, k=2..50", 10, lambda d: _gp_family(color_gp_odd, GPParams.odd, d))


def check_even_family() -> ClaimResult:
    return _timed(2, "GP(4k,2k-1) strict crumby, k=2..50", 10, lambda d: _gp_family(color_gp_even, GPParams.even, d))


def check_trees(n_max: int = 14, random_n: int = 200, random_seeds: int = 1000) -> ClaimResult:
    def body(d: dict) -> bool:
        s = check_tree_theorem(n_max, random_n, random_seeds)
        d.update(trees=s.trees, random_trees=s.random_trees, failures=len(s.failures),
                 unhandled=len(s.unhandled), extended_cases=sum(v for k, v in s.case_counts.items() if k.endswith("+")))
        return s.ok
    return _timed(3, f"subcubic trees n<={n_max} + {random_seeds} random n={random_n}", 60, body)


def check_prism() -> ClaimResult:
    def body(d: dict) -> bool:
        g = named_graph("prism3")
        s = search_colorings(g, SearchGoal(DEFAULT, Mode.COUNT_ALL))
        d.update(count=s.count, space=2 ** g.n)
        return s.count == 0
    return _timed(4, "3-prism has no crumby coloring", 1, body)


def check_petersen() -> ClaimResult:
    def body(d: dict) -> bool:
        g = named_graph("petersen")
        s = search_colorings(g, SearchGoal(DEFAULT, Mode.FIND_FIRST))
        d["witness"] = None if s.witness is None else s.witness.to_string()
        return s.witness is not None and verify_crumby(g, s.witness).valid
    return _timed(5, "Petersen graph has a crumby coloring", 1, body)


def _pairwise_adjacent(g, m) -> bool:
    es = m.sorted_edges()
    return all(any(g.has_edge(a, b) for a in e for b in f) for i, e in enumerate(es) for f in es[i + 1:])


def check_wagner_h() -> ClaimResult:
    def body(d: dict) -> bool:
        w, h = named_graph("wagner"), named_graph("h_graph")
        sw, sh = _rbipm(w), _rbipm(h, Mode.PROVE_NONE)
        distinct = not are_isomorphic(named_graph("k33_handle_adjacent"), named_graph("k33_handle_disjoint"))
        pms = enumerate_perfect_matchings(h)
        tangled = all(_pairwise_adjacent(h, m) for m in pms)
        d.update(wagner_witness=None if sw.witness is None else sw.witness.to_string(),
                 h_none=sh.none_certificate, variants_distinct=distinct,
                 h_perfect_matchings=len(pms), all_pairwise_adjacent=tangled)
        return sw.witness is not None and sh.none_certificate and distinct and tangled
    return _timed(6, "Wagner has an RBIPM, H has none", 5, body)


def check_divisibility() -> ClaimResult:
    def body(d: dict) -> bool:
        graphs = [named_graph("k33")] + [g for g in bundled_graphs("cubic_bipartite_4k2") if g.n != 6]
        rows = []
        for g in graphs:
            ob = check_rbipm_necessary(g).kind
            s = _rbipm(g, Mode.PROVE_NONE)
            rows.append((g.n, ob == "DivisibilityObstruction" and s.none_certificate))
        d.update(graphs=len(rows), orders=sorted({n for n, _ in rows}), failed=[i for i, (_, ok) in enumerate(rows) if not ok])
        return len(rows) >= 3 and all(ok for _, ok in rows)
    return _timed(7, "n = 2 mod 4 cubic bipartite graphs have no RBIPM", 5, body)


def check_census() -> ClaimResult:
    def body(d: dict) -> bool:
        graphs = bundled_graphs("cubic_bipartite_12")
        rows = census_rbipm(graphs)
        for g, r in zip(graphs, rows):
            if r.rbipm:
                _AUX_LOG.append((g.name, _aux_ok(g, Coloring.from_string(r.witness))))
        lacking = [r for r in rows if r.three_connected and r.rbipm is False]
        d.update(graphs=len(rows), three_connected=sum(r.three_connected for r in rows),
                 lacking=[r.graph6 for r in lacking])
        if len(rows) != 5 or len(lacking) != 1:
            return False
        w = contains_k23(graphs[lacking[0].index])
        d["k23_witness"] = w
        return w is not None
    return _timed(8, "12-vertex cubic bipartite census: one 3-connected graph without RBIPM", 30, body)


def check_torus(m: int = 5, n: int = 5, cid: int = 9, limit: float | None = 900) -> ClaimResult:
    def body(d: dict) -> bool:
        g = build_toroidal(m, n)
        s = search_colorings(g, SearchGoal(CrumbyPredicate(red_path_bound=4), Mode.PROVE_NONE))
        d.update(none=s.none_certificate, nodes=s.nodes)
        return s.none_certificate
    return _timed(cid, f"C{m}xC{n} has no coloring with L=4", limit, body)


ORACLE_CORPUS = ("prism3", "k4", "q3", "petersen", "k33_handle_adjacent", "k33_handle_disjoint")


def check_oracle() -> ClaimResult:
    def body(d: dict) -> bool:
        mismatches = []
        for name in ORACLE_CORPUS:
            g = named_graph(name)
            for label, pred in (("crumby", DEFAULT), ("rbipm", InducedMatching())):
                fast = search_colorings(g, SearchGoal(pred, Mode.COUNT_ALL)).count
                slow = naive_count(g, pred)
                if fast != slow:
                    mismatches.append([name, label, fast, slow])
        d.update(graphs=len(ORACLE_CORPUS), mismatches=mismatches)
        return not mismatches
    return _timed(10, "pruned search counts equal naive counts", 60, body)


def check_aux() -> ClaimResult:
    def body(d: dict) -> bool:
        _rbipm(named_graph("q3"))
        d.update(witnesses=len(_AUX_LOG), failed=[name for name, ok in _AUX_LOG if not ok])
        return bool(_AUX_LOG) and all(ok for _, ok in _AUX_LOG)
    return _timed(11, "auxiliary graph G(R,B) is 4-regular and balanced", None, body)


def check_graph6(samples: int = 1000, seed: int = 0) -> ClaimResult:
    def body(d: dict) -> bool:
        bad = []
        for i in range(samples):
            g = random_subcubic_graph(1 + (i % 80), seed + i)
            s = write_graph6(g)
            if write_graph6(parse_graph6(s)) != s or parse_graph6(s).adj != g.adj:
                bad.append(i)
        corpus = bundled_lines("cubic_bipartite_12") + bundled_lines("cubic_bipartite_4k2")
        bad += [line for line in corpus if write_graph6(parse_graph6(line)) != line]
        d.update(random=samples, corpus=len(corpus), failed=bad)
        return not bad
    return _timed(12, "graph6 round-trip is byte-exact", None, body)


def repro_all(include_long: bool = False) -> list[ClaimResult]:
    """Run every claim in order; ``include_long`` adds C5xC7."""
    _AUX_LOG.clear()
    results = [
        check_odd_family(), check_even_family(), check_trees(), check_prism(), check_petersen(),
        check_wagner_h(), check_divisibility(), check_census(), check_torus(), check_oracle(),
    ]
    results.append(check_aux())  # after every RBIPM-producing check
    results.append(check_graph6())
    if include_long:
        results.append(check_torus(5, 7, cid=9, limit=None))
    return results
