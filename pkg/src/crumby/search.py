"""Backtracking search for colorings under component-shape predicates.

The engine assigns vertices in a fixed order (BFS from a max-degree vertex by
default) and prunes as soon as the assigned prefix contains a violation that
no completion can repair. Every witness is re-checked by :mod:`crumby.verify`
before it is reported.
"""

from __future__ import annotations

import enum
import json
import logging
import os
import time
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .graphcore import BLUE, RED, Coloring, Graph, is_connected, is_k_connected, write_graph6
from .verify import (
    CrumbyPredicate,
    Obstruction,
    VerifyReport,
    build_aux_rb_graph,
    check_rbipm_necessary,
    verify_component_sizes,
    verify_crumby,
    verify_induced_matching,
)

log = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 40
_R, _B = 0, 1
_COLOR = (RED, BLUE)


class Mode(enum.Enum):
    FIND_FIRST = "first"
    COUNT_ALL = "count"
    PROVE_NONE = "none"


@dataclass(frozen=True)
class InducedMatching:
    require_perfect: bool = True


@dataclass(frozen=True)
class Custom:
    blue_sizes: frozenset[int]
    red_sizes: frozenset[int]

    def __post_init__(self) -> None:
        for s in (self.blue_sizes, self.red_sizes):
            if not s or not s <= {1, 2, 3, 4}:
                raise ValueError("custom component sizes must be a non-empty subset of {1,2,3,4}")


Predicate = Union[CrumbyPredicate, InducedMatching, Custom]


@dataclass(frozen=True)
class SearchGoal:
    predicate: Predicate = CrumbyPredicate()
    mode: Mode = Mode.FIND_FIRST
    symmetry_fix: bool = False


@dataclass
class SearchStats:
    mode: Mode
    nodes: int = 0
    prunes: Counter = field(default_factory=Counter)
    wall_time: float = 0.0
    witness: Optional[Coloring] = None
    count: Optional[int] = None
    none_certificate: bool = False

    @property
    def found(self) -> bool:
        return self.witness is not None or bool(self.count)

    def to_dict(self) -> dict:
        d: dict = {
            "mode": self.mode.value,
            "nodes": self.nodes,
            "prunes": dict(sorted(self.prunes.items())),
            "wall_time": round(self.wall_time, 6),
        }
        if self.mode is Mode.COUNT_ALL:
            d["count"] = self.count
        elif self.mode is Mode.FIND_FIRST:
            d["witness"] = None if self.witness is None else self.witness.to_string()
        else:
            d["none"] = self.none_certificate
            d["witness"] = None if self.witness is None else self.witness.to_string()
        return d


class SearchSizeError(ValueError):
    pass


def verify_goal(g: Graph, c: Coloring, predicate: Predicate) -> VerifyReport:
    if isinstance(predicate, CrumbyPredicate):
        return verify_crumby(g, c, predicate)
    if isinstance(predicate, InducedMatching):
        return verify_induced_matching(g, c, predicate.require_perfect)
    return verify_component_sizes(g, c, predicate.blue_sizes, predicate.red_sizes)


def search_order(g: Graph) -> list[int]:
    """BFS order from a max-degree vertex; ties broken by lowest id."""
    order: list[int] = []
    seen = [False] * g.n
    while len(order) < g.n:
        start = max((v for v in range(g.n) if not seen[v]), key=lambda v: (len(g.adj[v]), -v))
        seen[start] = True
        queue = deque([start])
        while queue:
            a = queue.popleft()
            order.append(a)
            for b in g.adj[a]:
                if not seen[b]:
                    seen[b] = True
                    queue.append(b)
    return order


def _is_symmetric(p: Predicate) -> bool:
    if isinstance(p, InducedMatching):
        return True
    if isinstance(p, Custom):
        return p.blue_sizes == p.red_sizes
    return False


class _Engine:
    """Incremental constraint state for one graph and predicate."""

    def __init__(self, g: Graph, predicate: Predicate):
        self.g = g
        self.adj = g.adj
        self.n = g.n
        self.color = [-1] * g.n
        self.same = [0] * g.n  # assigned same-colored neighbours
        self.free = [len(a) for a in g.adj]  # unassigned neighbours
        self.prunes: Counter = Counter()
        cap: list[Optional[int]] = [None, None]
        path: list[Optional[int]] = [None, None]
        star = [False, False]
        sizes: list[Optional[frozenset[int]]] = [None, None]
        partner = [False, False]
        if isinstance(predicate, CrumbyPredicate):
            cap[_B] = 1
            path[_R] = predicate.red_path_bound
            star[_R] = predicate.strict_stars
            partner[_R] = True
        elif isinstance(predicate, InducedMatching):
            cap = [1, 1]
            partner = [predicate.require_perfect] * 2
        else:
            sizes = [predicate.red_sizes, predicate.blue_sizes]
        self.cap, self.path, self.star, self.sizes, self.partner = cap, path, star, sizes, partner
        self.maxsize = [max(s) if s else None for s in sizes]
        self.needs_comp = [path[c] is not None or star[c] or sizes[c] is not None for c in (0, 1)]

    # -- state changes

    def assign(self, v: int, c: int) -> None:
        self.color[v] = c
        color, same, free = self.color, self.same, self.free
        for w in self.adj[v]:
            free[w] -= 1
            if color[w] == c:
                same[w] += 1
                same[v] += 1

    def unassign(self, v: int) -> None:
        c = self.color[v]
        color, same, free = self.color, self.same, self.free
        for w in self.adj[v]:
            free[w] += 1
            if color[w] == c:
                same[w] -= 1
        same[v] = 0
        color[v] = -1

    # -- checks

    def _component(self, v: int) -> list[int]:
        c = self.color[v]
        color, adj = self.color, self.adj
        comp = [v]
        seen = {v}
        i = 0
        while i < len(comp):
            for w in adj[comp[i]]:
                if color[w] == c and w not in seen:
                    seen.add(w)
                    comp.append(w)
            i += 1
        return comp

    def _has_path(self, comp: list[int], c: int, length: int) -> bool:
        if len(comp) <= length:
            return False
        color, adj = self.color, self.adj
        on = set()

        def dfs(a: int, depth: int) -> bool:
            if depth == length:
                return True
            on.add(a)
            for b in adj[a]:
                if color[b] == c and b not in on and dfs(b, depth + 1):
                    on.discard(a)
                    return True
            on.discard(a)
            return False

        return any(dfs(s, 0) for s in comp)

    def _is_star(self, comp: list[int], c: int) -> bool:
        k = len(comp)
        if k == 1:
            return True
        if k > 4:
            return False
        same = self.same
        degs = sorted(same[x] for x in comp)
        return sum(degs) == 2 * (k - 1) and (k == 2 or degs[-1] == k - 1)

    def _closed(self, x: int) -> bool:
        return self.color[x] >= 0 and self.free[x] == 0

    def ok_after(self, v: int) -> bool:
        """Whether assigning ``v`` (already applied) keeps the prefix extendable."""
        c = self.color[v]
        color, same, adj, prunes = self.color, self.same, self.adj, self.prunes
        cap = self.cap[c]
        if cap is not None:
            if same[v] > cap:
                prunes["degree"] += 1
                return False
            for w in adj[v]:
                if color[w] == c and same[w] > cap:
                    prunes["degree"] += 1
                    return False
        if self.needs_comp[c] and (same[v] or self.sizes[c] is not None):
            comp = self._component(v)
            ms = self.maxsize[c]
            if ms is not None and len(comp) > ms:
                prunes["size"] += 1
                return False
            if self.star[c] and not self._is_star(comp, c):
                prunes["nonstar"] += 1
                return False
            pb = self.path[c]
            if pb is not None and same[v] and self._has_path(comp, c, pb):
                prunes["path"] += 1
                return False
        # closure: v or a neighbour now has every neighbour assigned
        for x in (v, *adj[v]):
            if not self._closed(x):
                continue
            cx = color[x]
            if self.partner[cx] and same[x] == 0:
                prunes["isolated"] += 1
                return False
            if self.sizes[cx] is not None:
                comp = self._component(x)
                if all(self._closed(y) for y in comp) and len(comp) not in self.sizes[cx]:
                    prunes["size"] += 1
                    return False
        # forward check: an unassigned neighbour with no admissible color
        for w in adj[v]:
            if color[w] < 0 and not self._has_option(w):
                prunes["forced"] += 1
                return False
        return True

    def _has_option(self, w: int) -> bool:
        color, same, adj = self.color, self.same, self.adj
        for c in (0, 1):
            cap = self.cap[c]
            if cap is None:
                # only the isolated rule can exclude an uncapped color cheaply
                if self.partner[c] and self.free[w] == 0 and not any(color[y] == c for y in adj[w]):
                    continue
                return True
            k = 0
            bad = False
            for y in adj[w]:
                if color[y] == c:
                    k += 1
                    if same[y] >= cap:
                        bad = True
                        break
            if bad or k > cap:
                continue
            if self.partner[c] and self.free[w] == 0 and k == 0:
                continue
            return True
        return False


@dataclass
class _Job:
    graph6: str
    predicate: Predicate
    order: tuple[int, ...]
    colors_first: tuple[int, ...]
    prefix: tuple[int, ...]  # colors of order[:len(prefix)]
    mode: Mode
    fixed: tuple[tuple[int, int], ...] = ()


def _run(
    g: Graph,
    predicate: Predicate,
    order: Sequence[int],
    mode: Mode,
    prefix: Sequence[int] = (),
    fixed: Sequence[tuple[int, int]] = (),
    color_order: Sequence[int] = (_R, _B),
    stop_depth: Optional[int] = None,
) -> tuple[Optional[list[int]], int, int, Counter, list[tuple[int, ...]]]:
    """Core DFS. Returns (first solution, count, nodes, prunes, frontier prefixes)."""
    eng = _Engine(g, predicate)
    for v, c in fixed:
        eng.assign(v, c)
        if not eng.ok_after(v):
            return None, 0, 0, eng.prunes, []
    order = [v for v in order if eng.color[v] < 0]
    for v, c in zip(order, prefix):
        eng.assign(v, c)
        if not eng.ok_after(v):
            return None, 0, 0, eng.prunes, []
    depth0 = len(prefix)
    total = len(order)
    first: Optional[list[int]] = None
    count = 0
    nodes = 0
    frontier: list[tuple[int, ...]] = []
    want_all = mode is Mode.COUNT_ALL
    limit = total if stop_depth is None else stop_depth
    assign, unassign, ok_after, color = eng.assign, eng.unassign, eng.ok_after, eng.color

    def rec(d: int) -> bool:
        nonlocal first, count, nodes
        if d == limit:
            if stop_depth is not None and d < total:
                frontier.append(tuple(color[order[i]] for i in range(d)))
                return False
            count += 1
            if first is None:
                first = list(color)
            return not want_all
        v = order[d]
        for c in color_order:
            nodes += 1
            assign(v, c)
            if ok_after(v) and rec(d + 1):
                unassign(v)
                return True
            unassign(v)
        return False

    rec(depth0)
    return first, count, nodes, eng.prunes, frontier


def _run_job(job: _Job) -> tuple[Optional[list[int]], int, int, Counter]:
    from .graphcore import parse_graph6

    g = parse_graph6(job.graph6)
    first, count, nodes, prunes, _ = _run(
        g, job.predicate, job.order, job.mode, job.prefix, job.fixed, job.colors_first
    )
    return first, count, nodes, prunes


def _partial_fixed(g: Graph, partial: Optional[Coloring]) -> list[tuple[int, int]]:
    if partial is None:
        return []
    if len(partial) != g.n:
        raise ValueError(f"partial coloring length {len(partial)} does not match n={g.n}")
    return [(v, _R if col is RED else _B) for v, col in enumerate(partial) if col is not None]


def _to_coloring(colors: list[int]) -> Coloring:
    return Coloring(tuple(_COLOR[c] for c in colors))


class _Checkpoint:
    """Resumable progress over split-depth subtrees, stored as JSON."""

    def __init__(self, path: Optional[str], key: dict):
        self.path = path
        self.key = json.loads(json.dumps(key))  # tuples become lists, as on reload
        self.done: dict[str, list] = {}
        if path and os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                state = json.load(fh)
            if state.get("key") != key:
                raise ValueError(f"checkpoint {path} belongs to a different search")
            self.done = state["done"]
            log.info("resuming from %s: %d subtrees done", path, len(self.done))

    def record(self, idx: int, count: int, nodes: int, witness: Optional[list[int]]) -> None:
        self.done[str(idx)] = [count, nodes, witness]
        if self.path:
            tmp = self.path + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump({"key": self.key, "done": self.done}, fh)
            os.replace(tmp, self.path)


def search_colorings(
    g: Graph,
    goal: SearchGoal,
    *,
    jobs: int = 1,
    split_depth: int = 8,
    checkpoint: Optional[str] = None,
    partial: Optional[Coloring] = None,
    order: Optional[Sequence[int]] = None,
    color_order: Sequence[str] = ("R", "B"),
) -> SearchStats:
    """Search for colorings of ``g`` satisfying ``goal``.

    ``jobs > 1`` or a ``checkpoint`` path splits the search tree at
    ``split_depth`` and processes the subtrees independently; subtrees are
    merged in their natural order, so CountAll and the FindFirst witness are
    deterministic.
    """
    mode = goal.mode
    if mode is not Mode.FIND_FIRST and g.n > EXHAUSTIVE_LIMIT:
        raise SearchSizeError(f"exhaustive modes are limited to n <= {EXHAUSTIVE_LIMIT}, got n={g.n}")
    t0 = time.perf_counter()
    stats = SearchStats(mode)
    pred = goal.predicate
    ord_ = list(search_order(g) if order is None else order)
    if sorted(ord_) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    cols = tuple(_R if ch == "R" else _B for ch in color_order)
    fixed = _partial_fixed(g, partial)
    factor = 1
    if goal.symmetry_fix and _is_symmetric(pred) and not fixed and g.n:
        fixed = [(ord_[0], _R)]
        factor = 2 if mode is Mode.COUNT_ALL else 1
    run_mode = Mode.COUNT_ALL if mode is Mode.COUNT_ALL else Mode.FIND_FIRST

    if jobs <= 1 and checkpoint is None:
        first, count, nodes, prunes, _ = _run(g, pred, ord_, run_mode, (), fixed, cols)
    else:
        first, count, nodes, prunes = _split_run(
            g, pred, ord_, run_mode, fixed, cols, jobs, split_depth, checkpoint
        )
    stats.nodes = nodes
    stats.prunes = prunes
    if first is not None and run_mode is Mode.FIND_FIRST:
        witness = _to_coloring(first)
        report = verify_goal(g, witness, pred)
        if not report.valid:
            raise AssertionError(f"search produced an invalid witness: {report.to_json()}")
        if partial is not None and any(p is not None and p is not w for p, w in zip(partial, witness)):
            raise AssertionError("search witness does not extend the partial coloring")
        stats.witness = witness
    if mode is Mode.COUNT_ALL:
        stats.count = count * factor
    elif mode is Mode.PROVE_NONE:
        stats.none_certificate = stats.witness is None
    stats.wall_time = time.perf_counter() - t0
    return stats


def _split_run(
    g: Graph,
    pred: Predicate,
    order: list[int],
    mode: Mode,
    fixed: list[tuple[int, int]],
    cols: tuple[int, ...],
    jobs: int,
    split_depth: int,
    checkpoint: Optional[str],
) -> tuple[Optional[list[int]], int, int, Counter]:
    fixed_set = {v for v, _ in fixed}
    free_order = [v for v in order if v not in fixed_set]
    depth = min(split_depth, len(free_order))
    _, _, nodes, prunes, frontier = _run(g, pred, order, Mode.COUNT_ALL, (), fixed, cols, stop_depth=depth)
    if depth == len(free_order):
        # the whole space fits above the split; evaluate directly
        first, count, n2, p2, _ = _run(g, pred, order, mode, (), fixed, cols)
        return first, count, nodes + n2, prunes + p2
    g6 = write_graph6(g)
    key = {"graph6": g6, "predicate": repr(pred), "mode": mode.value, "order": order,
           "fixed": fixed, "colors": list(cols), "split_depth": depth}
    ckpt = _Checkpoint(checkpoint, key)
    todo = [(i, pre) for i, pre in enumerate(frontier) if str(i) not in ckpt.done]
    if mode is Mode.FIND_FIRST and any(w is not None for _, _, w in ckpt.done.values()):
        todo = []  # a resumed run already holds a witness
    log.info("split at depth %d: %d subtrees, %d pending", depth, len(frontier), len(todo))
    jobs_list = [_Job(g6, pred, tuple(order), cols, pre, mode, tuple(fixed)) for _, pre in todo]
    results: dict[int, tuple] = {}

    def handle(idx: int, res: tuple) -> bool:
        first, count, n, p = res
        results[idx] = res
        prunes.update(p)
        ckpt.record(idx, count, n, first)
        return mode is Mode.FIND_FIRST and first is not None

    if jobs <= 1:
        for (idx, _), job in zip(todo, jobs_list):
            if handle(idx, _run_job(job)):
                break
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_job, job) for job in jobs_list]
            for (idx, _), fut in zip(todo, futures):
                if handle(idx, fut.result()):
                    for rest in futures:
                        rest.cancel()
                    break
    count = 0
    first: Optional[list[int]] = None
    for idx in range(len(frontier)):
        if str(idx) not in ckpt.done:
            continue
        c, n, w = ckpt.done[str(idx)]
        count += c
        nodes += n
        if first is None and w is not None:
            first = list(w)
    return first, count, nodes, prunes


def search_rbipm(g: Graph, mode: Mode = Mode.FIND_FIRST, **kwargs) -> SearchStats:
    """Red-blue induced perfect matching search; witnesses on cubic graphs get the auxiliary-graph check."""
    stats = search_colorings(g, SearchGoal(InducedMatching(True), mode), **kwargs)
    if stats.witness is not None and g.is_regular(3):
        aux = build_aux_rb_graph(g, stats.witness)
        if not aux.is_regular(4) or len(aux.red_nodes) != len(aux.blue_nodes):
            raise AssertionError("auxiliary red/blue graph is not 4-regular with balanced sides")
    return stats


def naive_count(g: Graph, predicate: Predicate) -> int:
    """Reference count by filtering all 2^n colorings through the verifier."""
    if g.n > 20:
        raise SearchSizeError("naive enumeration is limited to n <= 20")
    total = 0
    for mask in range(1 << g.n):
        c = Coloring(tuple(BLUE if mask >> v & 1 else RED for v in range(g.n)))
        if verify_goal(g, c, predicate).valid:
            total += 1
    return total


# ---------------------------------------------------------------- census


@dataclass
class CensusRow:
    index: int
    graph6: str
    n: int
    cubic: bool
    bipartite: bool
    connected: bool
    three_connected: bool
    rbipm: Optional[bool]
    witness: Optional[str]
    obstruction: Obstruction
    error: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "index": self.index, "graph6": self.graph6, "n": self.n, "cubic": self.cubic,
            "bipartite": self.bipartite, "connected": self.connected,
            "three_connected": self.three_connected, "rbipm": self.rbipm, "witness": self.witness,
            "obstruction": self.obstruction.to_dict(), "error": self.error,
        }


def census_rbipm(graphs: Iterable[Graph]) -> list[CensusRow]:
    rows = []
    for i, g in enumerate(graphs):
        try:
            stats = search_rbipm(g, Mode.FIND_FIRST)
            rows.append(CensusRow(
                i, write_graph6(g), g.n, g.is_regular(3), g.is_bipartite(), is_connected(g),
                is_k_connected(g, 3), stats.witness is not None,
                None if stats.witness is None else stats.witness.to_string(),
                check_rbipm_necessary(g),
            ))
        except Exception as exc:  # recorded per graph; the stream continues
            rows.append(CensusRow(i, "", g.n, False, False, False, False, None, None,
                                  Obstruction("NoKnownObstruction"), error=str(exc)))
    return rows


def census_table(rows: list[CensusRow]) -> str:
    head = f"{'#':>3} {'graph6':<14} {'n':>3} cubic bip conn 3conn rbipm obstruction"
    lines = [head]
    for r in rows:
        lines.append(
            f"{r.index:>3} {r.graph6:<14} {r.n:>3} {str(r.cubic)[0]:>5} {str(r.bipartite)[0]:>3} "
            f"{str(r.connected)[0]:>4} {str(r.three_connected)[0]:>5} {str(r.rbipm)[0]:>5} "
            f"{r.obstruction.kind}" + (f" ERROR: {r.error}" if r.error else "")
        )
    return "\n".join(lines)
