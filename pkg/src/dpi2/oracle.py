"""Brute-force homotopy decision on tiny instances, by breadth-first search.

This is the independent ground-truth generator for small cases: it knows
nothing about degrees, islands, or normalization.  Both maps are trivially
extended to one padding rectangle and the search walks the graph whose
vertices are continuous based maps and whose edges are single spider moves.
Reaching the second map proves equivalence and yields a shortest certificate
within that padding; exhausting the budget (or the component) proves nothing,
which the result type states honestly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Rectangle
from .gridmap import GridMap, trivial_extend
from .homotopy import Certificate, SpiderMove, identity_certificate


@dataclass(frozen=True)
class SearchBudget:
    """Limits for the search: padding size (grid points) and state cap."""

    pad_limit: tuple[int, int] | None = None
    max_states: int = 500_000

    def __post_init__(self) -> None:
        if self.max_states < 1:
            raise ValueError("max_states must be positive")
        if self.pad_limit is not None:
            w, h = self.pad_limit
            if w < 1 or h < 1:
                raise ValueError("pad_limit must be at least 1x1 points")


@dataclass(frozen=True)
class Equivalent:
    certificate: Certificate


@dataclass(frozen=True)
class Unknown:
    states_explored: int
    reason: str


def homotopy_decide(
    f: GridMap, g: GridMap, budget: SearchBudget | None = None
) -> Equivalent | Unknown:
    """Search for a spider-move path from f to g over one padded rectangle."""
    if budget is None:
        budget = SearchBudget()
    if f.codomain != g.codomain:
        raise ValueError("homotopy search requires a common codomain")
    if f.basepoint != g.basepoint:
        raise ValueError("homotopy search requires a common basepoint")
    need_w = max(f.rect.width, g.rect.width)
    need_h = max(f.rect.height, g.rect.height)
    if budget.pad_limit is None:
        pad_w, pad_h = need_w, need_h
    else:
        pad_w, pad_h = budget.pad_limit
        if pad_w < need_w or pad_h < need_h:
            raise ValueError(
                f"pad_limit {pad_w}x{pad_h} smaller than the inputs "
                f"({need_w}x{need_h} points)"
            )
    rect = Rectangle(pad_w - 1, pad_h - 1)
    f0 = trivial_extend(f, rect.m, rect.n)
    g0 = trivial_extend(g, rect.m, rect.n)
    start, target = f0.values, g0.values
    if start == target:
        return Equivalent(identity_certificate(f0))

    cod = f.codomain
    npts = len(cod.points)
    amat = cod.adjacency_matrix
    w = rect.width
    cells = [
        (b * w + a, a, b)
        for b in range(1, rect.n)
        for a in range(1, rect.m)
    ]
    if not cells:
        # No interior at all: distinct maps cannot ever meet.
        return Unknown(1, "component exhausted within padding")
    pos_arr = np.array([p for p, _, _ in cells], dtype=np.int64)
    # Column 0 is the cell itself, then its eight neighbors.
    offsets = np.array([0, -w - 1, -w, -w + 1, -1, 1, w - 1, w, w + 1], dtype=np.int64)
    neigh = pos_arr[:, None] + offsets[None, :]

    # visited: state -> (parent state, position, new label); start has no parent.
    visited: dict[bytes, tuple[bytes, int, int] | None] = {start: None}
    frontier = [start]
    capped = False

    def reconstruct(state: bytes) -> Equivalent:
        steps: list[SpiderMove] = []
        cur = state
        while True:
            entry = visited[cur]
            if entry is None:
                break
            cur, pos, v = entry
            steps.append(SpiderMove((pos % w, pos // w), v))
        steps.reverse()
        cert = Certificate(
            codomain=cod,
            basepoint=f.basepoint,
            common_rect=rect,
            start=f0,
            moves=tuple(steps),
            end=g0,
        )
        return Equivalent(cert)

    while frontier and not capped:
        next_frontier: list[bytes] = []
        for state in frontier:
            arr = np.frombuffer(state, dtype=np.uint8)
            around = arr[neigh]
            # ok[v, i]: relabeling interior cell i to v keeps continuity.
            ok = amat[:, around].all(axis=2)
            cur_labels = arr[pos_arr]
            for i, (pos, _, _) in enumerate(cells):
                cur = int(cur_labels[i])
                for v in range(npts):
                    if v == cur or not ok[v, i]:
                        continue
                    child = state[:pos] + bytes([v]) + state[pos + 1 :]
                    if child in visited:
                        continue
                    visited[child] = (state, pos, v)
                    if child == target:
                        return reconstruct(child)
                    next_frontier.append(child)
                    if len(visited) >= budget.max_states:
                        capped = True
                        break
                if capped:
                    break
            if capped:
                break
        frontier = next_frontier

    reason = (
        "state budget exhausted"
        if capped
        else "component exhausted within padding"
    )
    return Unknown(len(visited), reason)
