"""Graph and coloring types, graph6/DOT/JSON formats, small structural queries."""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

GRAPH6_HEADER = ">>graph6<<"
MAX_ISO_VERTICES = 12


class GraphFormatError(ValueError):
    """Raised for malformed graph6 text or incompatible coloring input."""


class Color(enum.Enum):
    RED = "R"
    BLUE = "B"

    @property
    def opposite(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    def __str__(self) -> str:
        return self.value


RED = Color.RED
BLUE = Color.BLUE


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``adj[i]`` is the sorted tuple of neighbours of ``i``. Use
    :meth:`from_edges` rather than building the adjacency by hand.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n")
        for i, nbrs in enumerate(self.adj):
            if i in nbrs:
                raise ValueError(f"self-loop at vertex {i}")
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"duplicate edge at vertex {i}")
            for j in nbrs:
                if not 0 <= j < self.n or i not in self.adj[j]:
                    raise ValueError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: Optional[str] = None) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) out of range for n={n}")
            nbrs[a].add(b)
            nbrs[b].add(a)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), name)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.adj[i] if i < j]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def is_regular(self, d: int) -> bool:
        return all(len(a) == d for a in self.adj)

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adj[a]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood bitsets; bit ``j`` of ``masks[i]`` is set iff ``ij`` is an edge."""
        return tuple(sum(1 << j for j in nbrs) for nbrs in self.adj)

    def induced(self, vertices: Iterable[int]) -> "InducedSubgraph":
        verts = sorted(set(vertices))
        index = {v: i for i, v in enumerate(verts)}
        edges = [(index[a], index[b]) for a in verts for b in self.adj[a] if b in index and a < b]
        return InducedSubgraph(Graph.from_edges(len(verts), edges), tuple(verts))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[a], perm[b]) for a, b in self.edges()], self.name)

    def is_bipartite(self) -> bool:
        side = [-1] * self.n
        for s in range(self.n):
            if side[s] >= 0:
                continue
            side[s] = 0
            queue = deque([s])
            while queue:
                a = queue.popleft()
                for b in self.adj[a]:
                    if side[b] < 0:
                        side[b] = 1 - side[a]
                        queue.append(b)
                    elif side[b] == side[a]:
                        return False
        return True


@dataclass(frozen=True)
class InducedSubgraph:
    graph: Graph
    vertex_map: tuple[int, ...]  # local id -> id in the host graph


@dataclass(frozen=True)
class Coloring:
    """Red/blue assignment; ``None`` entries mark uncolored vertices."""

    assignments: tuple[Optional[Color], ...]

    @classmethod
    def from_string(cls, s: str) -> "Coloring":
        table = {"R": RED, "B": BLUE, ".": None, "?": None}
        try:
            return cls(tuple(table[ch] for ch in s.strip().upper()))
        except KeyError as exc:
            raise GraphFormatError(f"invalid color character {exc.args[0]!r}") from None

    @classmethod
    def uncolored(cls, n: int) -> "Coloring":
        return cls((None,) * n)

    @classmethod
    def from_json(cls, text: str) -> "Coloring":
        try:
            obj = json.loads(text)
            n, colors = int(obj["n"]), str(obj["colors"])
        except (ValueError, KeyError, TypeError) as exc:
            raise GraphFormatError(f"malformed coloring JSON: {exc}") from None
        if len(colors) != n:
            raise GraphFormatError(f"coloring JSON has n={n} but {len(colors)} colors")
        return cls.from_string(colors)

    def __len__(self) -> int:
        return len(self.assignments)

    def __getitem__(self, v: int) -> Optional[Color]:
        return self.assignments[v]

    def __iter__(self) -> Iterator[Optional[Color]]:
        return iter(self.assignments)

    @property
    def is_total(self) -> bool:
        return all(c is not None for c in self.assignments)

    def to_string(self) -> str:
        return "".join("." if c is None else c.value for c in self.assignments)

    def to_json(self) -> str:
        if not self.is_total:
            raise ValueError("only total colorings serialize to JSON")
        return json.dumps({"n": len(self), "colors": self.to_string()})

    def with_color(self, v: int, c: Optional[Color]) -> "Coloring":
        a = list(self.assignments)
        a[v] = c
        return Coloring(tuple(a))

    def swapped(self) -> "Coloring":
        return Coloring(tuple(None if c is None else c.opposite for c in self.assignments))

    def vertices_of(self, col: Color) -> list[int]:
        return [v for v, c in enumerate(self.assignments) if c is col]

    def __str__(self) -> str:
        return self.to_string()


@dataclass(frozen=True)
class Matching:
    edges: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "Matching":
        return cls(frozenset((min(a, b), max(a, b)) for a, b in pairs))

    def __len__(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_valid_in(self, g: Graph) -> bool:
        seen: set[int] = set()
        for a, b in self.edges:
            if not g.has_edge(a, b) or a in seen or b in seen:
                return False
            seen.update((a, b))
        return True


# ---------------------------------------------------------------- graph6


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise GraphFormatError(f"n={n} exceeds the supported graph6 size")


def write_graph6(g: Graph) -> str:
    """Encode ``g`` as a graph6 line (no header, no newline)."""
    out = [_encode_n(g.n)]
    bits: list[int] = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line. Errors name the offending byte offset."""
    line = text.strip("\r\n")
    offset = 0
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
        offset = len(GRAPH6_HEADER)
    for pos, ch in enumerate(line):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"byte {offset + pos}: character {ch!r} outside graph6 range 63-126")
    if not line:
        raise GraphFormatError(f"byte {offset}: missing length header")
    vals = [ord(ch) - 63 for ch in line]
    if vals[0] < 63:
        n, start = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n, start = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    else:
        raise GraphFormatError(f"byte {offset}: unsupported or truncated length header")
    nbits = n * (n - 1) // 2
    body = vals[start:]
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(
            f"byte {offset + start}: expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}"
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise GraphFormatError(f"byte {offset + start + len(body) - 1}: non-zero padding bits")
    return Graph.from_edges(n, edges)


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    return [parse_graph6(ln) for ln in lines if ln.strip()]


# ---------------------------------------------------------------- DOT

_FILL = {RED: "red", BLUE: "blue"}


def export_dot(g: Graph, c: Optional[Coloring] = None) -> str:
    if c is not None:
        if len(c) != g.n:
            raise GraphFormatError(f"coloring length {len(c)} does not match n={g.n}")
        if not c.is_total:
            raise GraphFormatError("DOT export needs a total coloring")
    title = (g.name or "G").replace('"', "'")
    lines = [f'graph "{title}" {{', "  node [shape=circle];"]
    for v in range(g.n):
        if c is None:
            lines.append(f"  {v};")
        else:
            lines.append(f'  {v} [style=filled, fillcolor={_FILL[c[v]]}, fontcolor=white];')
    for a, b in g.edges():
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- queries


def color_class_subgraph(g: Graph, c: Coloring, col: Color) -> InducedSubgraph:
    if not c.is_total:
        raise ValueError("color_class_subgraph needs a total coloring")
    return g.induced(c.vertices_of(col))


def connected_components(g: Graph, within: Optional[Iterable[int]] = None) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex.

    With ``within``, components of the subgraph induced by those vertices.
    """
    allowed = set(range(g.n)) if within is None else set(within)
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            a = stack.pop()
            for b in g.adj[a]:
                if b in allowed and b not in seen:
                    seen.add(b)
                    comp.append(b)
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def is_k_connected(g: Graph, k: int) -> bool:
    """Brute-force vertex k-connectivity; only meant for small graphs."""
    if g.n <= k:
        return False
    for cut in combinations(range(g.n), k - 1):
        rest = set(range(g.n)) - set(cut)
        if len(connected_components(g, rest)) != 1:
            return False
    return True


def enumerate_perfect_matchings(g: Graph) -> list[Matching]:
    if g.n % 2:
        return []
    out: list[Matching] = []
    matched = [False] * g.n
    chosen: list[tuple[int, int]] = []

    def rec() -> None:
        try:
            v = matched.index(False)
        except ValueError:
            out.append(Matching.of(chosen))
            return
        matched[v] = True
        for w in g.adj[v]:
            if not matched[w]:
                matched[w] = True
                chosen.append((v, w))
                rec()
                chosen.pop()
                matched[w] = False
        matched[v] = False

    rec()
    return out


def _invariant(g: Graph, v: int) -> tuple[int, tuple[int, ...]]:
    return (len(g.adj[v]), tuple(sorted(len(g.adj[w]) for w in g.adj[v])))


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Backtracking isomorphism test pruned by degree invariants (n <= 12)."""
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return False
    if g1.n > MAX_ISO_VERTICES:
        raise ValueError(f"are_isomorphic is limited to n <= {MAX_ISO_VERTICES}")
    inv1 = [_invariant(g1, v) for v in range(g1.n)]
    inv2 = [_invariant(g2, v) for v in range(g2.n)]
    if sorted(inv1) != sorted(inv2):
        return False
    order = _bfs_order(g1)
    image = [-1] * g1.n
    used = [False] * g2.n

    def rec(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for w in range(g2.n):
            if used[w] or inv2[w] != inv1[v]:
                continue
            if any((image[u] >= 0) and (image[u] in g2.adj[w]) != (u in g1.adj[v]) for u in range(g1.n)):
                continue
            image[v], used[w] = w, True
            if rec(pos + 1):
                return True
            image[v], used[w] = -1, False
        return False

    return rec(0)


def _bfs_order(g: Graph) -> list[int]:
    order: list[int] = []
    seen = [False] * g.n
    for s in sorted(range(g.n), key=lambda v: -len(g.adj[v])):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            a = queue.popleft()
            order.append(a)
            for b in g.adj[a]:
                if not seen[b]:
                    seen[b] = True
                    queue.append(b)
    return order
