"""Paths drawn on pattern supports.

Geodesic witnesses certify component sizes, the ascending-path search
hunts simple paths whose height gains are window-uniform, road checks
test whether a path's range dominates the support, and guided traces
build staircase-like supports from step directions. Sturmian offset
sequences come from the mechanical-word formula with exact rationals, so
there is no floating-point drift.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EmptySupport
from .patterns import (
    BINARY,
    Cell,
    Pattern,
    ball_offsets,
    connected_components,
    translate_cell,
)


@dataclass(frozen=True)
class CellPath:
    """Cell sequence with consecutive L1 steps bounded by `step`."""

    cells: tuple[Cell, ...]
    step: int

    def __post_init__(self):
        for a, b in zip(self.cells, self.cells[1:]):
            if _l1(a, b) > self.step:
                raise ValueError("consecutive path cells exceed the step bound")

    def __len__(self) -> int:
        return len(self.cells)

    def heights(self) -> list[int]:
        return [c[-1] for c in self.cells]


@dataclass(frozen=True)
class SupportGraph:
    """Support cells with edges between cells at L1 distance <= r."""

    nodes: frozenset
    r: int

    def neighbors(self, cell: Cell) -> list[Cell]:
        out = []
        for off in ball_offsets(len(cell), self.r):
            if any(off):
                nb = translate_cell(cell, off)
                if nb in self.nodes:
                    out.append(nb)
        return sorted(out)


def support_graph(pattern: Pattern, r: int) -> SupportGraph:
    return SupportGraph(pattern.support(), r)


def _l1(a: Cell, b: Cell) -> int:
    return sum(abs(x - y) for x, y in zip(a, b))


def _bfs(nodes: frozenset, start: Cell, r: int):
    """Distances and parents from start; ties explored in sorted order."""
    offsets = sorted(o for o in ball_offsets(len(start), r) if any(o))
    dist = {start: 0}
    parent: dict[Cell, Cell] = {}
    queue = deque([start])
    while queue:
        cell = queue.popleft()
        for off in offsets:
            nb = translate_cell(cell, off)
            if nb in nodes and nb not in dist:
                dist[nb] = dist[cell] + 1
                parent[nb] = cell
                queue.append(nb)
    return dist, parent


def _farthest(dist: dict) -> Cell:
    return max(dist, key=lambda c: (dist[c], c))


def geodesic_witness(pattern: Pattern, r: int) -> CellPath:
    """Shortest path between a far pair of the largest r-component.

    Double-sweep BFS: exact diameter endpoints on acyclic support graphs
    (every generator this package ships), a certified lower bound
    otherwise. The path length always certifies component size at least
    that length.
    """
    support = pattern.support()
    if not support:
        raise EmptySupport("geodesic witness needs a nonzero cell")
    comps = connected_components(support, r)
    comp = max(comps, key=lambda c: (len(c), sorted(c)[0]))
    dist, _ = _bfs(comp, min(comp), r)
    a = _farthest(dist)
    dist, parent = _bfs(comp, a, r)
    b = _farthest(dist)
    cells = [b]
    while cells[-1] != a:
        cells.append(parent[cells[-1]])
    cells.reverse()
    return CellPath(tuple(cells), r)


def find_ascending_path(pattern: Pattern, r: int, m: int,
                        budget: int = 200_000) -> CellPath | None:
    """Longest simple r-path whose every m-step window gains height.

    Depth-first search over the support with lexicographic tie-breaks;
    the height condition is enforced as heights[t] > heights[t-m] at each
    extension, which covers every window. Absence means no qualifying
    path of length at least 2m was found within the node budget, nothing
    stronger.
    """
    if m < 1:
        raise ValueError("window must be at least 1")
    support = pattern.support()
    if not support:
        return None
    graph = SupportGraph(support, r)
    best: list[Cell] | None = None
    spent = 0

    for start in sorted(support):
        stack: list[tuple[list[Cell], set]] = [([start], {start})]
        while stack and spent < budget:
            path, used = stack.pop()
            spent += 1
            if len(path) >= 2 * m and (best is None or len(path) > len(best)):
                best = list(path)
            extensions = []
            t = len(path)
            for nb in graph.neighbors(path[-1]):
                if nb in used:
                    continue
                if t >= m and nb[-1] <= path[t - m][-1]:
                    continue
                extensions.append(nb)
            # reversed: the stack pops the lexicographically least first
            for nb in reversed(extensions):
                stack.append((path + [nb], used | {nb}))
        if spent >= budget:
            break
    if best is None:
        return None
    return CellPath(tuple(best), r)


def road_check(pattern: Pattern, path: CellPath, bound: int) -> bool:
    """True when every support cell lies within L1 `bound` of the path."""
    support = pattern.support()
    path_cells = set(path.cells)
    if not path_cells <= support:
        raise ValueError("path cells must lie in the support")
    for cell in support:
        if cell in path_cells:
            continue
        if all(_l1(cell, p) > bound for p in path_cells):
            return False
    return True


def trace_guided_path(vertical_steps: Sequence[int], offsets: Sequence[int],
                      length: int) -> Pattern:
    """Support traced by a walk climbing and sidestepping per the guides.

    Step i climbs vertical_steps[i] cells one at a time, then moves
    horizontally by offsets[i] one cell at a time; the trace is therefore
    1-connected and ascending by construction.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    if len(vertical_steps) < length or len(offsets) < length:
        raise ValueError("guide sequences must cover the requested length")
    x, y = 0, 0
    cells = {(x, y)}
    for i in range(length):
        up = vertical_steps[i]
        if up < 1:
            raise ValueError("vertical steps must be at least 1")
        for _ in range(up):
            y += 1
            cells.add((x, y))
        side = offsets[i]
        direction = 1 if side >= 0 else -1
        for _ in range(abs(side)):
            x += direction
            cells.add((x, y))
    return Pattern(BINARY, {c: "1" for c in cells})


def sturmian_word(alpha: Fraction, length: int,
                  rho: Fraction = Fraction(0)) -> str:
    """Mechanical 0/1 word of slope alpha and intercept rho.

    Symbol i is floor((i+1) alpha + rho) - floor(i alpha + rho), computed
    with exact rationals.
    """
    if not 0 <= alpha <= 1:
        raise ValueError("slope must lie in [0, 1]")
    out = []
    prev = _floor(rho)
    for i in range(1, length + 1):
        cur = _floor(alpha * i + rho)
        out.append(str(cur - prev))
        prev = cur
    return "".join(out)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator
