"""Coloring predicates with witness reporting.

Every failed check returns concrete witnesses that can be re-checked against
the graph in time proportional to their size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .graphcore import BLUE, RED, Coloring, Graph, connected_components


@dataclass(frozen=True)
class CrumbyPredicate:
    red_path_bound: int = 3
    strict_stars: bool = False
    min_red_degree: int = 1

    def __post_init__(self) -> None:
        if self.red_path_bound < 1:
            raise ValueError("red_path_bound must be >= 1")
        if self.min_red_degree != 1:
            raise ValueError("min_red_degree is fixed at 1")


DEFAULT = CrumbyPredicate()
STRICT = CrumbyPredicate(strict_stars=True)


@dataclass(frozen=True)
class Violation:
    kind: str  # BlueOverdegree | IsolatedRed | RedLongPath | NonStarRed | Uncolored | ...
    vertices: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices)}


@dataclass
class VerifyReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def kinds(self) -> set[str]:
        return {w.kind for w in self.violations}

    def to_dict(self) -> dict:
        return {"valid": self.valid, "violations": [w.to_dict() for w in self.violations]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_total(g: Graph, c: Coloring) -> VerifyReport:
    if len(c) != g.n:
        raise ValueError(f"coloring length {len(c)} does not match n={g.n}")
    return VerifyReport([Violation("Uncolored", (v,)) for v in range(g.n) if c[v] is None])


def find_red_path(g: Graph, red: list[bool], length: int) -> Optional[tuple[int, ...]]:
    """A simple path with ``length`` edges inside the red vertices, or None.

    Depth-bounded DFS from every red vertex with a vertex-distinct stack.
    """
    n = g.n
    on_path = [False] * n
    stack: list[int] = []

    def dfs(a: int, depth: int) -> bool:
        stack.append(a)
        on_path[a] = True
        if depth == length:
            return True
        for b in g.adj[a]:
            if red[b] and not on_path[b] and dfs(b, depth + 1):
                return True
        stack.pop()
        on_path[a] = False
        return False

    for s in range(n):
        if red[s] and dfs(s, 0):
            return tuple(stack)
    return None


def star_shape(g: Graph, comp: list[int]) -> Optional[int]:
    """Number of edges if the induced component is a star K_{1,m}, else None."""
    if len(comp) == 1:
        return 0
    inside = set(comp)
    degs = [sum(1 for w in g.adj[x] if w in inside) for x in comp]
    m = len(comp) - 1
    if sum(degs) != 2 * m:
        return None
    if m == 1 or sorted(degs)[-1] == m:
        return m
    return None


def verify_crumby(g: Graph, c: Coloring, p: CrumbyPredicate = DEFAULT) -> VerifyReport:
    report = _check_total(g, c)
    if not report.valid:
        return report
    out = report.violations
    red = [col is RED for col in c]
    for x in range(g.n):
        same = [w for w in g.adj[x] if c[w] is c[x]]
        if c[x] is BLUE and len(same) > 1:
            out.append(Violation("BlueOverdegree", (x, *same)))
        elif c[x] is RED and not same:
            out.append(Violation("IsolatedRed", (x,)))
    path = find_red_path(g, red, p.red_path_bound)
    if path is not None:
        out.append(Violation("RedLongPath", path))
    if p.strict_stars:
        for comp in connected_components(g, c.vertices_of(RED)):
            m = star_shape(g, comp)
            if m is None or not 1 <= m <= 3:
                if m == 0:
                    continue  # already reported as IsolatedRed
                out.append(Violation("NonStarRed", tuple(comp)))
    return report


def verify_induced_matching(g: Graph, c: Coloring, require_perfect: bool = False) -> VerifyReport:
    report = _check_total(g, c)
    if not report.valid:
        return report
    for x in range(g.n):
        same = [w for w in g.adj[x] if c[w] is c[x]]
        if len(same) > 1:
            report.violations.append(Violation("MonochromaticOverdegree", (x, *same)))
        elif require_perfect and not same:
            report.violations.append(Violation("Unmatched", (x,)))
    return report


def contains_k23(g: Graph) -> Optional[tuple[int, ...]]:
    """Two vertices with three common neighbours, returned as (a, b, x, y, z)."""
    for a in range(g.n):
        na = set(g.adj[a])
        for b in range(a + 1, g.n):
            common = sorted(na.intersection(g.adj[b]))
            if len(common) >= 3:
                return (a, b, *common[:3])
    return None


# ---------------------------------------------------------------- red-blue induced matchings


class PreconditionError(ValueError):
    def __init__(self, message: str, report: VerifyReport):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class AuxRBGraph:
    """Bipartite multigraph between red and blue matching edges."""

    red_nodes: tuple[tuple[int, int], ...]
    blue_nodes: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int], ...]  # (red node index, blue node index), with multiplicity

    @property
    def red_degrees(self) -> list[int]:
        deg = [0] * len(self.red_nodes)
        for r, _ in self.edges:
            deg[r] += 1
        return deg

    @property
    def blue_degrees(self) -> list[int]:
        deg = [0] * len(self.blue_nodes)
        for _, b in self.edges:
            deg[b] += 1
        return deg

    @property
    def degree_sequence(self) -> list[int]:
        return self.red_degrees + self.blue_degrees

    def is_regular(self, d: int) -> bool:
        return all(x == d for x in self.degree_sequence)


def build_aux_rb_graph(g: Graph, c: Coloring) -> AuxRBGraph:
    report = verify_induced_matching(g, c, require_perfect=True)
    if not report.valid:
        raise PreconditionError("coloring is not a red-blue induced perfect matching", report)
    if not g.is_regular(3):
        raise PreconditionError("the auxiliary graph is only defined here for cubic graphs", report)
    node_of: dict[int, tuple[str, int]] = {}
    red_nodes: list[tuple[int, int]] = []
    blue_nodes: list[tuple[int, int]] = []
    for a, b in g.edges():
        if c[a] is c[b]:
            bucket = red_nodes if c[a] is RED else blue_nodes
            node_of[a] = node_of[b] = ("R" if c[a] is RED else "B", len(bucket))
            bucket.append((a, b))
    edges = []
    for a, b in g.edges():
        if c[a] is not c[b]:
            r, bl = (a, b) if c[a] is RED else (b, a)
            edges.append((node_of[r][1], node_of[bl][1]))
    return AuxRBGraph(tuple(red_nodes), tuple(blue_nodes), tuple(sorted(edges)))


@dataclass(frozen=True)
class Obstruction:
    kind: str  # DivisibilityObstruction | K23Obstruction | NoKnownObstruction
    witness: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {"kind": self.kind, "witness": list(self.witness)}


def check_rbipm_necessary(g: Graph) -> Obstruction:
    """Known reasons why a cubic graph cannot have a red-blue induced perfect matching.

    The counting argument (4-regular auxiliary graph forces n = 0 mod 4) and the
    K2,3 argument both only use that ``g`` is cubic, so they are applied to any
    cubic graph, bipartite or not.
    """
    if g.is_regular(3):
        if g.n % 4 == 2:
            return Obstruction("DivisibilityObstruction")
        w = contains_k23(g)
        if w is not None:
            return Obstruction("K23Obstruction", w)
    return Obstruction("NoKnownObstruction")


def verify_component_sizes(
    g: Graph, c: Coloring, blue_sizes: frozenset[int], red_sizes: frozenset[int]
) -> VerifyReport:
    """Every monochromatic component has an allowed number of vertices."""
    report = _check_total(g, c)
    if not report.valid:
        return report
    for col, allowed in ((BLUE, blue_sizes), (RED, red_sizes)):
        for comp in connected_components(g, c.vertices_of(col)):
            if len(comp) not in allowed:
                report.violations.append(Violation(f"{col.name.capitalize()}ComponentSize", tuple(comp)))
    return report
