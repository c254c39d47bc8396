"""Explicit crumby colorings of GP(2k+1, k) and GP(4k, 2k-1).

Outer vertex ``u_i`` and inner vertex ``v_i`` use 1-based cyclic indices
(``u_i`` -> id ``i-1``, ``v_i`` -> id ``n_outer + i - 1``); clockwise means
increasing index.

Odd family layout. The horizontal cut sits on ``u_1`` and ``u_{k+1}`` (blue)
with the red inner edge ``v_1 v_{k+1}``. The remaining outer vertices form the
upper path ``u_2 .. u_k`` (k-1 vertices) and the lower path
``u_{k+2} .. u_{2k+1}`` (k vertices). Inner neighbours of ``v_i`` are
``v_{i+k}`` and ``v_{i+k+1}``, so the inner cycle zigzags between the two
paths and every block occupies a contiguous stretch of that zigzag:

* red syringe at upper ``u_i``: covers ``i, i+k, i+k+1``
* red wedge at lower ``u_i``: covers ``i, i+k, i+k+1`` (two upper, one lower)
* blue cross at lower ``u_i``: covers ``i-1, i, i+1`` and ``i+k, i+k+1``
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .families import GPParams, build_gp, u, v
from .graphcore import BLUE, RED, Color, Coloring, Graph
from .search import Mode, SearchGoal, search_colorings
from .verify import STRICT, verify_crumby


class BlockKind(enum.Enum):
    HORIZONTAL_CUT = "cut"
    RED_WEDGE = "wedge"
    BLUE_CROSS = "cross"
    RED_SYRINGE = "syringe"
    RED_ANCHOR = "anchor"
    BLUE_EDGE_PAIR = "blue-edge"
    OPPOSITE_QUAD = "quad"


@dataclass(frozen=True)
class BlockStamp:
    kind: BlockKind
    anchor: int  # 1-based outer index

    def assignments(self, p: GPParams) -> list[tuple[int, Color]]:
        i, k, K = self.anchor, p.step, self.kind
        R, B = RED, BLUE
        if K is BlockKind.HORIZONTAL_CUT:
            cells = [("u", i, B), ("u", i + k, B), ("v", i, R), ("v", i + k, R)]
        elif K is BlockKind.RED_WEDGE:
            cells = [("u", j, B) for j in (i, i + k, i + k + 1)] + [("v", j, R) for j in (i, i + k, i + k + 1)]
        elif K is BlockKind.RED_SYRINGE:
            cells = [("u", i, R), ("v", i, R), ("u", i + k, R), ("u", i + k + 1, R),
                     ("v", i + k, B), ("v", i + k + 1, B)]
        elif K is BlockKind.BLUE_CROSS:
            cells = [("u", j, R) for j in (i - 1, i, i + 1, i + k, i + k + 1)]
            cells += [("v", i, R), ("v", i - 1, B), ("v", i + k, B), ("v", i + 1, B), ("v", i + k + 1, B)]
        elif K is BlockKind.RED_ANCHOR:
            cells = [("u", i, R), ("u", i + 1, R), ("u", i + 2, R), ("v", i + 1, R), ("v", i, B), ("v", i + 2, B)]
        elif K is BlockKind.BLUE_EDGE_PAIR:
            cells = [("u", i, B), ("u", i + 1, B), ("v", i, R), ("v", i + 1, R)]
        elif K is BlockKind.OPPOSITE_QUAD:
            cells = [("u", i, R), ("u", i + 1, R), ("u", i + 2, B), ("u", i + 3, B),
                     ("v", i, B), ("v", i + 1, B), ("v", i + 2, R), ("v", i + 3, R)]
        else:  # pragma: no cover
            raise ValueError(K)
        return [((u if side == "u" else v)(p, j), col) for side, j, col in cells]


@dataclass
class BlockPlan:
    params: GPParams
    blocks: list[BlockStamp]
    provenance: str = ""
    outer_code: Optional[tuple[str, str]] = field(default=None)


class PlanError(ValueError):
    pass


class ConflictingStamp(PlanError):
    def __init__(self, vertex: int, first: BlockStamp, second: BlockStamp):
        super().__init__(
            f"vertex {vertex} stamped by {first.kind.value}@{first.anchor} and again by "
            f"{second.kind.value}@{second.anchor}"
        )
        self.vertex = vertex


class UncoveredVertex(PlanError):
    def __init__(self, vertex: int, plan: BlockPlan):
        anchors = ", ".join(f"{b.kind.value}@{b.anchor}" for b in plan.blocks) or "no blocks"
        super().__init__(f"vertex {vertex} is not covered by any block ({anchors})")
        self.vertex = vertex


def stamp_plan(plan: BlockPlan) -> Coloring:
    """Apply every stamp; blocks tile the graph, so each vertex is stamped exactly once."""
    p = plan.params
    colors: list[Optional[Color]] = [None] * p.n_vertices
    owner: list[Optional[BlockStamp]] = [None] * p.n_vertices
    for block in plan.blocks:
        for x, col in block.assignments(p):
            if owner[x] is not None:
                raise ConflictingStamp(x, owner[x], block)
            colors[x], owner[x] = col, block
    for x, col in enumerate(colors):
        if col is None:
            raise UncoveredVertex(x, plan)
    return Coloring(tuple(colors))


# ---------------------------------------------------------------- odd family

_ODD_BLOCKS = {("R", "RR"): BlockKind.RED_SYRINGE, ("BB", "B"): BlockKind.RED_WEDGE,
               ("RR", "RRR"): BlockKind.BLUE_CROSS}
_ODD_CODE = {kind: pair for pair, kind in _ODD_BLOCKS.items()}


def _runs(s: str) -> list[str]:
    return [m.group(0) for m in re.finditer(r"R+|B+", s)]


def decode_odd(upper: str, lower: str) -> list[BlockKind]:
    """Read a block sequence off the upper/lower outer color strings."""
    ru, rl = _runs(upper), _runs(lower)
    if len(ru) != len(rl):
        raise PlanError(f"upper and lower strings have {len(ru)} and {len(rl)} runs")
    out = []
    for a, b in zip(ru, rl):
        try:
            out.append(_ODD_BLOCKS[(a, b)])
        except KeyError:
            raise PlanError(f"runs {a!r},{b!r} do not form a building block") from None
    return out


def encode_odd(kinds: Iterable[BlockKind]) -> tuple[str, str]:
    kinds = list(kinds)
    return "".join(_ODD_CODE[k][0] for k in kinds), "".join(_ODD_CODE[k][1] for k in kinds)


def odd_plan_from_kinds(k: int, kinds: list[BlockKind], provenance: str = "") -> BlockPlan:
    """Place the blocks left to right after the horizontal cut."""
    p = GPParams.odd(k)
    blocks = [BlockStamp(BlockKind.HORIZONTAL_CUT, 1)]
    up, lo = 1, 1  # next free position on the upper (u_{m+1}) and lower (u_{k+1+m}) paths
    for kind in kinds:
        if kind is BlockKind.RED_SYRINGE:
            blocks.append(BlockStamp(kind, up + 1))
            up, lo = up + 1, lo + 2
        elif kind is BlockKind.RED_WEDGE:
            blocks.append(BlockStamp(kind, k + 1 + lo))
            up, lo = up + 2, lo + 1
        elif kind is BlockKind.BLUE_CROSS:
            blocks.append(BlockStamp(kind, k + 1 + lo + 1))
            up, lo = up + 2, lo + 3
        else:
            raise PlanError(f"{kind.value} is not an odd-family block")
    if (up - 1, lo - 1) != (k - 1, k):
        raise PlanError(f"blocks cover {up - 1} upper and {lo - 1} lower vertices; need {k - 1} and {k}")
    return BlockPlan(p, blocks, provenance, encode_odd(kinds))


def odd_case(k: int) -> tuple[int, int]:
    """(case number, recursion depth s) for GP(2k+1, k); case 0 marks the GP(9,4) exception."""
    if k < 2:
        raise ValueError("the odd family needs k >= 2")
    if k == 4:
        return 0, 0
    n = 2 * k + 1
    if n % 6 == 5:
        return 1, (n - 5) // 6
    if n % 6 == 1:
        return 2, (n - 7) // 6
    return 3, (n - 9) // 6


def odd_block_kinds(k: int) -> list[BlockKind]:
    S, W, C = BlockKind.RED_SYRINGE, BlockKind.RED_WEDGE, BlockKind.BLUE_CROSS
    case, s = odd_case(k)
    if case == 0:
        raise PlanError("GP(9,4) has no block plan")
    if case == 1:
        kinds = [S]
        for _ in range(s):
            kinds = [S, W] + kinds  # syringe and wedge right after the cut
    elif case == 2:
        kinds = [C]
        for _ in range(s):
            kinds = [S, W] + kinds
    else:
        kinds = [C, W, C]
        for _ in range(s - 1):
            kinds = [C, W, S] + kinds[1:]  # wedge and syringe after the first cross
    return kinds


def plan_gp_odd(k: int) -> BlockPlan:
    case, s = odd_case(k)
    return odd_plan_from_kinds(k, odd_block_kinds(k), f"odd case {case}, s={s}")


def color_gp_odd(k: int) -> Coloring:
    if k < 2:
        raise ValueError("the odd family needs k >= 2")
    if k == 4:
        return Coloring.from_string(STORED["GP(9,4)"])
    return stamp_plan(plan_gp_odd(k))


# ---------------------------------------------------------------- even family


def plan_gp_even(k: int) -> BlockPlan:
    """Anchor/blue-edge base on GP(20,9) plus one RRBB quad per half for each k -> k+2 (k odd, k >= 5)."""
    if k < 5 or k % 2 == 0:
        raise PlanError("the anchor plan covers odd k >= 5 only")
    p = GPParams.even(k)
    half = 2 * k
    blocks = []
    for h in (0, half):
        for start in (1, 6):
            blocks.append(BlockStamp(BlockKind.RED_ANCHOR, h + start))
            blocks.append(BlockStamp(BlockKind.BLUE_EDGE_PAIR, h + start + 3))
        for q in range((k - 5) // 2):
            blocks.append(BlockStamp(BlockKind.OPPOSITE_QUAD, h + 11 + 4 * q))
    code = "RRRBB" * 2 + "RRBB" * ((k - 5) // 2)
    return BlockPlan(p, blocks, f"even odd-k anchor base, extensions={(k - 5) // 2}", (code, code))


def color_gp_even(k: int) -> Coloring:
    if k < 2:
        raise ValueError("the even family needs k >= 2")
    if k == 3:
        return Coloring.from_string(STORED["GP(12,5)"])
    if k % 2 == 0:
        n = 4 * k
        outer = [RED if i % 4 in (1, 2) else BLUE for i in range(1, n + 1)]
        return Coloring(tuple(outer) + tuple(c.opposite for c in outer))
    return stamp_plan(plan_gp_even(k))


def color_gp(n_outer: int, step: int) -> Coloring:
    """Dispatch on the two supported families."""
    if n_outer % 2 == 1 and step == (n_outer - 1) // 2:
        return color_gp_odd(step)
    if n_outer % 4 == 0 and step == n_outer // 2 - 1:
        return color_gp_even(n_outer // 4)
    raise ValueError(f"GP({n_outer},{step}) is in neither GP(2k+1,k) nor GP(4k,2k-1)")


def outer_string(c: Coloring, p: GPParams) -> str:
    return c.to_string()[: p.n_outer]


def odd_halves(c: Coloring, k: int) -> tuple[str, str]:
    """Upper and lower outer strings around the horizontal cut."""
    s = c.to_string()
    return s[1:k], s[k + 1: 2 * k + 1]


# ---------------------------------------------------------------- completion


def complete_partial(g: Graph, c: Coloring) -> Optional[Coloring]:
    """Extend ``c`` to a strict crumby coloring, lowest index first, red before blue."""
    if len(c) != g.n:
        raise ValueError(f"partial coloring length {len(c)} does not match n={g.n}")
    if c.is_total:
        return c if verify_crumby(g, c, STRICT).valid else None
    stats = search_colorings(g, SearchGoal(STRICT, Mode.FIND_FIRST), partial=c, order=range(g.n))
    return stats.witness


# Exceptional instances, regenerated by tests via complete_partial on an empty partial coloring.
STORED = {
    "GP(9,4)": "RRBRBRRBBRBBRBBRRR",
    "GP(12,5)": "RRRBRRBRBRRBBBBRBRRRRRBR",
}


def regenerate_stored(name: str) -> str:
    params = {"GP(9,4)": GPParams(9, 4), "GP(12,5)": GPParams(12, 5)}[name]
    g = build_gp(params)
    out = complete_partial(g, Coloring.uncolored(g.n))
    if out is None:
        raise RuntimeError(f"no strict crumby coloring of {name}")
    return out.to_string()
