"""Constructors for the graph families used throughout the package."""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator

from .graphcore import Graph, are_isomorphic

log = logging.getLogger(__name__)

MAX_ENUM_TREE = 16


@dataclass(frozen=True)
class GPParams:
    """Generalized Petersen parameters: outer cycle length and inner step."""

    n_outer: int
    step: int

    def __post_init__(self) -> None:
        if self.n_outer < 3:
            raise ValueError(f"n_outer must be >= 3, got {self.n_outer}")
        if not 1 <= self.step < self.n_outer:
            raise ValueError(f"step must satisfy 1 <= step < n_outer, got {self.step}")
        if 2 * self.step == self.n_outer:
            raise ValueError("step = n_outer/2 would double the inner edges")

    @property
    def n_vertices(self) -> int:
        return 2 * self.n_outer

    @property
    def inner_is_cycle(self) -> bool:
        return gcd(self.n_outer, self.step) == 1

    @classmethod
    def odd(cls, k: int) -> "GPParams":
        return cls(2 * k + 1, k)

    @classmethod
    def even(cls, k: int) -> "GPParams":
        return cls(4 * k, 2 * k - 1)


def u(p: GPParams, i: int) -> int:
    """Vertex id of the outer vertex with 1-based (cyclic) index ``i``."""
    return (i - 1) % p.n_outer


def v(p: GPParams, i: int) -> int:
    """Vertex id of the inner vertex with 1-based (cyclic) index ``i``."""
    return p.n_outer + (i - 1) % p.n_outer


def build_gp(p: GPParams) -> Graph:
    n = p.n_outer
    edges = []
    for i in range(1, n + 1):
        edges.append((u(p, i), u(p, i + 1)))
        edges.append((u(p, i), v(p, i)))
        edges.append((v(p, i), v(p, i + p.step)))
    return Graph.from_edges(2 * n, edges, name=f"GP({n},{p.step})")


def build_toroidal(m: int, n: int) -> Graph:
    if m < 3 or n < 3:
        raise ValueError(f"toroidal grid needs m, n >= 3, got {m}x{n}")
    edges = []
    for a in range(m):
        for b in range(n):
            x = a * n + b
            edges.append((x, a * n + (b + 1) % n))
            edges.append((x, ((a + 1) % m) * n + b))
    return Graph.from_edges(m * n, edges, name=f"C{m}xC{n}")


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], name=f"K{n}")


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)], name=f"K{a},{b}")


def cube() -> Graph:
    return Graph.from_edges(8, [(x, x ^ (1 << b)) for x in range(8) for b in range(3) if x < x ^ (1 << b)], name="Q3")


def _k33_handle(e1: tuple[int, int], e2: tuple[int, int], name: str) -> Graph:
    # K3,3 on {0,1,2} x {3,4,5}; subdivide e1 and e2 by new vertices 6 and 7, then join 6-7.
    edges = [(i, j) for i in range(3) for j in range(3, 6) if (i, j) not in (e1, e2)]
    edges += [(e1[0], 6), (6, e1[1]), (e2[0], 7), (7, e2[1]), (6, 7)]
    return Graph.from_edges(8, edges, name=name)


def heawood() -> Graph:
    edges = [(i, (i + 1) % 14) for i in range(14)]
    edges += [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return Graph.from_edges(14, edges, name="heawood")


def _build_named(name: str) -> Graph:
    if name == "petersen":
        g = build_gp(GPParams(5, 2))
    elif name == "prism3":
        g = build_gp(GPParams(3, 1))
    elif name == "wagner":
        g = Graph.from_edges(8, [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)])
    elif name == "k33":
        g = complete_bipartite(3, 3)
    elif name == "k23":
        g = complete_bipartite(2, 3)
    elif name == "k4":
        g = complete(4)
    elif name == "q3":
        g = cube()
    elif name == "heawood":
        g = heawood()
    elif name == "k33_handle_adjacent":
        g = _k33_handle((0, 3), (0, 4), name)
    elif name == "k33_handle_disjoint":
        g = _k33_handle((0, 3), (1, 4), name)
    elif name == "h_graph":
        # The placement that is not the Wagner graph is decided by an isomorphism test.
        wagner = _build_named("wagner")
        for variant in ("k33_handle_adjacent", "k33_handle_disjoint"):
            g = _build_named(variant)
            if not are_isomorphic(g, wagner):
                break
        else:
            raise RuntimeError("both K3,3 handle placements are isomorphic to the Wagner graph")
    else:
        raise KeyError(f"unknown graph name {name!r}; choose from {', '.join(NAMED_GRAPHS)}")
    return Graph(g.n, g.adj, name)


NAMED_GRAPHS = (
    "petersen", "prism3", "wagner", "k33", "k23", "k33_handle_adjacent",
    "k33_handle_disjoint", "h_graph", "k4", "q3", "heawood",
)


@lru_cache(maxsize=None)
def named_graph(name: str) -> Graph:
    return _build_named(name.lower())


# ---------------------------------------------------------------- trees


@dataclass(frozen=True)
class TreeSpec:
    """Rooted ordered tree given by a parent array (``-1`` marks the root).

    Children are ordered by vertex id, so the first child is the left son.
    """

    parent: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.parent)
        if n == 0:
            raise ValueError("a tree needs at least one vertex")
        roots = [i for i, p in enumerate(self.parent) if p < 0]
        if len(roots) != 1:
            raise ValueError(f"expected exactly one root, found {len(roots)}")
        kids = [0] * n
        for i, p in enumerate(self.parent):
            if p >= n:
                raise ValueError(f"parent of {i} out of range")
            if p >= 0:
                kids[p] += 1
        for i in range(n):
            limit = 3 if self.parent[i] < 0 else 2
            if kids[i] > limit:
                raise ValueError(f"vertex {i} has {kids[i]} children; the tree is not subcubic")
        # acyclicity: every vertex reaches the root
        for i in range(n):
            seen = 0
            j = i
            while self.parent[j] >= 0:
                j = self.parent[j]
                seen += 1
                if seen > n:
                    raise ValueError("parent array contains a cycle")

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def root(self) -> int:
        return self.parent.index(-1)

    def children(self, x: int) -> list[int]:
        return [i for i, p in enumerate(self.parent) if p == x]

    def to_graph(self) -> Graph:
        return Graph.from_edges(self.n, [(i, p) for i, p in enumerate(self.parent) if p >= 0])

    def to_json(self) -> str:
        return json.dumps({"parents": list(self.parent)})

    @classmethod
    def from_json(cls, text: str) -> "TreeSpec":
        try:
            parents = json.loads(text)["parents"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ValueError(f"malformed tree JSON: {exc}") from None
        return cls(tuple(int(p) for p in parents))


def _shapes(n: int, max_children: int) -> Iterator[tuple]:
    """Ordered trees with ``n`` vertices as nested child tuples (non-root nodes <= 2 children)."""
    if n == 1:
        yield ()
        return
    rest = n - 1
    for k in range(1, max_children + 1):
        yield from _forests(rest, k)


def _forests(total: int, k: int) -> Iterator[tuple]:
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - (k - 1) + 1):
        for t in _shapes(first, 2):
            for tail in _forests(total - first, k - 1):
                yield (t,) + tail


def _shape_to_spec(shape: tuple) -> TreeSpec:
    # BFS labelling so that vertex ids follow the breadth-first order.
    parents = [-1]
    queue = [(shape, 0)]
    head = 0
    while head < len(queue):
        node, vid = queue[head]
        head += 1
        for child in node:
            parents.append(vid)
            queue.append((child, len(parents) - 1))
    return TreeSpec(tuple(parents))


def enumerate_subcubic_trees(n: int) -> Iterator[TreeSpec]:
    """Every rooted ordered subcubic tree on ``n`` vertices, once each."""
    if not 1 <= n <= MAX_ENUM_TREE:
        raise ValueError(f"tree enumeration supports 1 <= n <= {MAX_ENUM_TREE}, got {n}")
    count = 0
    for shape in _shapes(n, 3):
        count += 1
        yield _shape_to_spec(shape)
    log.debug("enumerated %d subcubic rooted trees on %d vertices", count, n)


def random_subcubic_tree(n: int, seed: int) -> TreeSpec:
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    parents = [-1]
    spare = [3]
    open_vertices = [0]
    for i in range(1, n):
        pos = rng.randrange(len(open_vertices))
        p = open_vertices[pos]
        parents.append(p)
        spare[p] -= 1
        spare.append(2)
        if spare[p] == 0:
            open_vertices[pos] = open_vertices[-1]
            open_vertices.pop()
        open_vertices.append(i)
    return TreeSpec(tuple(parents))


def random_subcubic_graph(n: int, seed: int, density: float = 0.8) -> Graph:
    """Random graph with maximum degree <= 3: shuffled candidate edges, added while degrees allow."""
    rng = random.Random(seed)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    target = int(density * 3 * n / 2)
    for a, b in pairs:
        if len(edges) >= target:
            break
        if deg[a] < 3 and deg[b] < 3:
            edges.append((a, b))
            deg[a] += 1
            deg[b] += 1
    return Graph.from_edges(n, edges, name=f"random({n},{seed})")


def count_trees_formula(n: int) -> int:
    """Number of rooted ordered subcubic trees via the child-count recursion."""

    @lru_cache(maxsize=None)
    def sub(m: int) -> int:  # non-root trees: at most two ordered children
        if m == 1:
            return 1
        return sub(m - 1) + sum(sub(a) * sub(m - 1 - a) for a in range(1, m - 1))

    if n == 1:
        return 1
    m = n - 1
    one = sub(m)
    two = sum(sub(a) * sub(m - a) for a in range(1, m))
    three = sum(sub(a) * sub(b) * sub(m - a - b) for a in range(1, m) for b in range(1, m - a))
    return one + two + three


# ---------------------------------------------------------------- bundled data

BUNDLED = {
    "cubic_bipartite_12": "cubic_bipartite_12.g6",
    "cubic_bipartite_4k2": "cubic_bipartite_4k2.g6",
}


def bundled_lines(name: str) -> list[str]:
    """Raw graph6 lines of a bundled corpus (header and blank lines dropped)."""
    from importlib.resources import files

    if name not in BUNDLED:
        raise KeyError(f"unknown corpus {name!r}; choose from {', '.join(BUNDLED)}")
    text = files("crumby.data").joinpath(BUNDLED[name]).read_text(encoding="ascii")
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith(">>")]


def bundled_graphs(name: str) -> list[Graph]:
    from .graphcore import parse_graph6

    out = []
    for i, line in enumerate(bundled_lines(name)):
        g = parse_graph6(line)
        out.append(Graph(g.n, g.adj, f"{name}[{i}]"))
    return out
