"""Breadth-first crumby coloring of subcubic trees.

Vertices are inserted in BFS order (children left to right). Each insertion
colors the new leaf ``v`` and possibly recolors a few vertices near its
parent ``x``; the colored prefix stays a strict crumby coloring (blue
components of size <= 2, red components stars with 1-3 edges) throughout.

Two readings are fixed here:

* Case 3 for the root: "its parent is also blue" becomes "its unique colored
  neighbour is blue", mirroring how Case 5a lets a second son stand in for a
  missing grandparent.
* Case 5 with ``p`` the root and three colored sons: the red son other than
  ``x`` plays the grandparent; if both other sons are red, ``x`` simply joins
  the star at ``p``.

If no case applies, :class:`UnhandledCase` is raised with a state snapshot.

Rule sets. ``rules="literal"`` applies Cases 0-5c exactly. That case list has a
gap: in Case 5b the left son ``y`` of ``p`` is colored before ``x``'s sons, so
it can already sit in a blue edge ``y c``; turning ``p`` blue then gives ``y``
two blue neighbours (smallest instance: parents ``[-1,0,0,1,1,3,4,4]``).
``rules="extended"`` (the default) adds case ``5b+`` for exactly that
situation when the grandparent keeps another red neighbour: ``x`` and ``v``
become a red edge, ``p`` turns blue and ``y c`` becomes a red edge. The step
recolors four previously colored vertices (``x, p, y, c``).
"""

from __future__ import annotations

import logging
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .families import TreeSpec, enumerate_subcubic_trees, random_subcubic_tree
from .graphcore import BLUE, RED, Color, Coloring
from .verify import STRICT, verify_crumby

log = logging.getLogger(__name__)


class UnhandledCase(RuntimeError):
    def __init__(self, message: str, state: "TreeColorState"):
        super().__init__(f"{message} (step {state.i}, tree {list(state.tree.parent)})")
        self.state = state


class InvariantBroken(AssertionError):
    def __init__(self, message: str, state: "TreeColorState"):
        super().__init__(f"{message} (step {state.i}, tree {list(state.tree.parent)})")
        self.state = state


@dataclass
class TreeColorState:
    tree: TreeSpec
    bfs_order: list[int]
    colored: list[Optional[Color]]
    i: int = 0
    trace: list[str] = field(default_factory=list)

    def snapshot(self) -> Coloring:
        return Coloring(tuple(self.colored))


def bfs_order(t: TreeSpec, children: list[list[int]]) -> list[int]:
    order = []
    queue = deque([t.root])
    while queue:
        a = queue.popleft()
        order.append(a)
        queue.extend(children[a])
    return order


RULE_SETS = ("literal", "extended")
MAX_RECOLORED = 4


class _TreeColorer:
    def __init__(self, t: TreeSpec, check: str, rules: str = "extended"):
        if rules not in RULE_SETS:
            raise ValueError(f"rules must be one of {RULE_SETS}")
        self.rules = rules
        self.t = t
        self.parent = t.parent
        self.children: list[list[int]] = [[] for _ in range(t.n)]
        for i, p in enumerate(t.parent):
            if p >= 0:
                self.children[p].append(i)
        self.nbrs = [self.children[i] + ([t.parent[i]] if t.parent[i] >= 0 else []) for i in range(t.n)]
        self.state = TreeColorState(t, bfs_order(t, self.children), [None] * t.n)
        self.check = check
        self.max_recolored = 0

    # -- helpers over the colored prefix

    @property
    def col(self) -> list[Optional[Color]]:
        return self.state.colored

    def colored_nbrs(self, a: int) -> list[int]:
        return [b for b in self.nbrs[a] if self.col[b] is not None]

    def deg(self, a: int) -> int:
        return len(self.colored_nbrs(a))

    def red_nbrs(self, a: int, exclude: Iterable[int] = ()) -> list[int]:
        ex = set(exclude)
        return [b for b in self.nbrs[a] if self.col[b] is RED and b not in ex]

    def is_singleton_blue(self, a: int) -> bool:
        return self.col[a] is BLUE and not any(self.col[b] is BLUE for b in self.nbrs[a])

    def fail(self, msg: str) -> UnhandledCase:
        return UnhandledCase(msg, self.state)

    # -- the algorithm

    def run(self) -> Coloring:
        st = self.state
        order = st.bfs_order
        self.col[order[0]] = BLUE
        st.trace.append("0")
        st.i = 1
        for v in order[1:]:
            before = list(self.col)
            case = self.step(v)
            st.trace.append(case)
            changed = [a for a in range(self.t.n) if before[a] is not None and before[a] is not self.col[a]]
            self.max_recolored = max(self.max_recolored, len(changed))
            if len(changed) > MAX_RECOLORED:
                raise InvariantBroken(f"case {case} recolored {len(changed)} vertices", st)
            st.i += 1
            if self.check != "none":
                self.check_local(changed + [v], case)
        out = st.snapshot()
        if self.check != "none":
            report = verify_crumby(self.t.to_graph(), out, STRICT)
            if not report.valid:
                raise InvariantBroken(f"final coloring invalid: {report.to_json()}", st)
        return out

    def step(self, v: int) -> str:
        x = self.parent[v]
        col = self.col
        dx = self.deg(x)
        if dx <= 1 and self.is_singleton_blue(x):
            col[v] = BLUE
            return "1"
        if dx == 1 and col[x] is RED:
            if not self.red_nbrs(x):
                raise self.fail(f"case 2: red vertex {x} has no red neighbour")
            col[v] = BLUE
            return "2"
        if dx == 1 and col[x] is BLUE:
            (y,) = self.colored_nbrs(x)  # the parent, or the first son when x is the root
            if col[y] is not BLUE:
                raise self.fail(f"case 3: neighbour {y} of blue {x} is not blue")
            col[v] = RED
            col[x] = RED
            return "3"
        if dx == 2 and col[x] is RED:
            col[v] = BLUE
            return "4"
        if dx == 2 and col[x] is BLUE:
            return self.case5(v, x)
        raise self.fail(f"no case for x={x} (degree {dx}, color {col[x]})")

    def case5(self, v: int, x: int) -> str:
        col = self.col
        p = self.parent[x]
        if p < 0:
            raise self.fail(f"case 5 with x={x} the root")
        l = self.children[x][0]
        if col[l] is not BLUE or col[p] is not RED:
            raise self.fail(f"case 5 expects blue left son {l} and red parent {p} of {x}")
        g = self.parent[p]
        dp = self.deg(p)
        sibs = [s for s in self.children[p] if s != x and col[s] is not None]

        def full() -> None:
            col[l] = col[v] = col[x] = RED
            col[p] = BLUE

        def light() -> None:
            col[x] = RED
            col[v] = BLUE

        def would_strand(h: int) -> bool:
            # h is red and p (about to turn blue) is its only red neighbour
            return col[h] is RED and not self.red_nbrs(h, exclude=(p,))

        if dp == 2:
            h = g if g >= 0 else sibs[0]
            if would_strand(h):
                light()
                return "5a*"
            full()
            return "5a"
        if dp != 3:
            raise self.fail(f"case 5: parent {p} has colored degree {dp}")
        if g < 0:
            red_sibs = [s for s in sibs if col[s] is RED]
            if len(red_sibs) == 2:
                light()
                return "5r-"
            if len(red_sibs) != 1:
                raise self.fail(f"case 5: root {p} has no red son besides {x}")
            if would_strand(red_sibs[0]):
                light()
                return "5r*"
            full()
            return "5r"
        (y,) = sibs
        right = self.children[p].index(x) == 1
        name = "5b" if right else "5c"
        if col[y] is BLUE:
            if would_strand(g):
                light()
                return name + "*"
            partner = [c for c in self.nbrs[y] if col[c] is BLUE]
            if partner and self.rules == "extended":
                (c,) = partner
                if self.deg(c) != 1:
                    raise self.fail(f"case {name}+: blue partner {c} of {y} is not a leaf")
                col[x] = col[v] = RED
                col[p] = BLUE
                col[y] = col[c] = RED
                return name + "+"
            full()
            return name
        light()
        return name + "-"

    def check_local(self, touched: list[int], case: str) -> None:
        col = self.col
        area = set(touched)
        for a in touched:
            area.update(self.nbrs[a])
        for a in area:
            if col[a] is None:
                continue
            same = [b for b in self.nbrs[a] if col[b] is col[a]]
            if col[a] is BLUE and len(same) > 1:
                raise InvariantBroken(f"case {case}: blue {a} has blue neighbours {same}", self.state)
            if col[a] is RED:
                if not same:
                    raise InvariantBroken(f"case {case}: red {a} is isolated", self.state)
                comp = self.red_component(a)
                if not _is_star(comp, self.nbrs, col):
                    raise InvariantBroken(f"case {case}: red component {sorted(comp)} is not a star", self.state)

    def red_component(self, a: int) -> list[int]:
        comp, stack, seen = [], [a], {a}
        while stack:
            b = stack.pop()
            comp.append(b)
            for c in self.nbrs[b]:
                if self.col[c] is RED and c not in seen:
                    seen.add(c)
                    stack.append(c)
                    if len(seen) > 5:
                        return list(seen)
        return comp


def _is_star(comp: list[int], nbrs: list[list[int]], col: list[Optional[Color]]) -> bool:
    k = len(comp)
    if not 2 <= k <= 4:
        return False
    degs = sorted(sum(1 for b in nbrs[a] if col[b] is RED) for a in comp)
    return k == 2 or degs[-1] == k - 1


def color_tree(t: TreeSpec, check: str = "local", rules: str = "extended") -> Coloring:
    """Strict crumby coloring of a subcubic tree.

    ``check`` is ``"local"`` (assert the invariant around every insertion and
    verify the result) or ``"none"``.
    """
    return _TreeColorer(t, check, rules).run()


def color_tree_traced(t: TreeSpec, rules: str = "extended") -> tuple[Coloring, list[str]]:
    c = _TreeColorer(t, "local", rules)
    out = c.run()
    return out, c.state.trace


@dataclass
class TreeCheckSummary:
    trees: int = 0
    by_size: dict[int, int] = field(default_factory=dict)
    random_trees: int = 0
    failures: list[tuple[list[int], str]] = field(default_factory=list)
    unhandled: list[tuple[list[int], str]] = field(default_factory=list)
    case_counts: dict[str, int] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures and not self.unhandled

    def to_dict(self) -> dict:
        return {
            "trees": self.trees, "by_size": self.by_size, "random_trees": self.random_trees,
            "failures": len(self.failures), "unhandled": len(self.unhandled),
            "case_counts": dict(sorted(self.case_counts.items())), "wall_time": round(self.wall_time, 3),
        }


def _check_one(t: TreeSpec, summary: TreeCheckSummary, rules: str) -> None:
    colorer = _TreeColorer(t, "local", rules)
    try:
        colorer.run()
    except UnhandledCase as exc:
        summary.unhandled.append((list(t.parent), str(exc)))
    except InvariantBroken as exc:
        summary.failures.append((list(t.parent), str(exc)))
    for case in colorer.state.trace:
        summary.case_counts[case] = summary.case_counts.get(case, 0) + 1


def check_tree_theorem(
    n_max: int, random_n: int = 0, random_seeds: int = 0, seed0: int = 0, rules: str = "extended"
) -> TreeCheckSummary:
    """Color every enumerated tree up to ``n_max`` and optional random trees; failures are data."""
    t0 = time.perf_counter()
    summary = TreeCheckSummary()
    for n in range(1, n_max + 1):
        count = 0
        for t in enumerate_subcubic_trees(n):
            _check_one(t, summary, rules)
            count += 1
        summary.by_size[n] = count
        summary.trees += count
    for s in range(seed0, seed0 + random_seeds):
        _check_one(random_subcubic_tree(random_n, s), summary, rules)
        summary.random_trees += 1
    summary.wall_time = time.perf_counter() - t0
    log.info("tree check: %s", summary.to_dict())
    return summary
