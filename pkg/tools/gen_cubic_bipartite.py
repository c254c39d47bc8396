"""Generate the bundled graph6 files of connected cubic bipartite graphs.

Enumerates m x m biadjacency matrices with all line sums 3 (rows sorted,
first row fixed to the first three columns) and keeps one graph per
isomorphism class, using networkx for the isomorphism test. Requires
networkx; it is only needed to regenerate the data, not at runtime.
"""

from __future__ import annotations

import argparse
from itertools import combinations

import networkx as nx

from crumby.graphcore import Graph, write_graph6


def biadjacency_graphs(m: int):
    rows = list(combinations(range(m), 3))

    def rec(chosen: list[tuple[int, ...]], colsum: list[int]):
        if len(chosen) == m:
            yield list(chosen)
            return
        start = rows.index(chosen[-1])
        left = m - len(chosen)
        for r in rows[start:]:
            if any(colsum[c] == 3 for c in r):
                continue
            for c in r:
                colsum[c] += 1
            # every column still needs room to reach 3
            if all(3 - s <= left - 1 for s in colsum):
                chosen.append(r)
                yield from rec(chosen, colsum)
                chosen.pop()
            for c in r:
                colsum[c] -= 1

    first = rows[0]
    colsum = [1 if c in first else 0 for c in range(m)]
    yield from rec([first], colsum)


def census(m: int) -> list[nx.Graph]:
    reps: dict[str, list[nx.Graph]] = {}
    for mat in biadjacency_graphs(m):
        g = nx.Graph()
        g.add_nodes_from(range(2 * m))
        g.add_edges_from((i, m + c) for i, r in enumerate(mat) for c in r)
        if not nx.is_connected(g):
            continue
        h = nx.weisfeiler_lehman_graph_hash(g)
        bucket = reps.setdefault(h, [])
        if not any(nx.is_isomorphic(g, o) for o in bucket):
            bucket.append(g)
    return [g for b in reps.values() for g in b]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("n", type=int, help="number of vertices (even)")
    args = ap.parse_args()
    lines = []
    for g in census(args.n // 2):
        lines.append(write_graph6(Graph.from_edges(g.number_of_nodes(), g.edges())))
    for line in sorted(lines):
        print(line)


if __name__ == "__main__":
    main()
