"""Proper 3-edge-coloring of pseudoforests with maximum degree 3.

In every component the unique cycle (if any) is colored first by
alternating 1 and 2, with an odd cycle closing on 3.  The remaining tree
edges are colored breadth-first outward from the cycle, each taking the
smallest color not yet used at either endpoint.  The outer endpoint of a
tree edge is still bare, and the inner one has at most two colored edges,
so a color is always free.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .core import Edge, make_edge

COLORS = (1, 2, 3)


class ColoringError(ValueError):
    """The graph is not a pseudoforest of maximum degree 3."""


def _adjacency(edges: Iterable[Edge]) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {}
    for u, v in edges:
        if u == v:
            raise ColoringError(f"self-loop at {u!r}")
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def components(edges: Iterable[Edge]) -> list[tuple[list[str], list[Edge]]]:
    """Connected components as (sorted vertices, sorted edges)."""
    edges = sorted({make_edge(u, v) for u, v in edges})
    adj = _adjacency(edges)
    seen: set[str] = set()
    out = []
    for root in sorted(adj):
        if root in seen:
            continue
        comp = []
        stack = [root]
        seen.add(root)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        members = set(comp)
        out.append((sorted(comp), [e for e in edges if e[0] in members]))
    return out


def check_pseudoforest(edges: Iterable[Edge], max_degree: int = 3) -> None:
    """Raise ColoringError unless degrees are at most `max_degree` and every
    component has at most one cycle."""
    edges = {make_edge(u, v) for u, v in edges}
    adj = _adjacency(edges)
    for v, nbrs in adj.items():
        if len(nbrs) > max_degree:
            raise ColoringError(f"vertex {v!r} has degree {len(nbrs)} > {max_degree}")
    for verts, comp_edges in components(edges):
        if len(comp_edges) > len(verts):
            raise ColoringError(f"component containing {verts[0]!r} has two cycles")


def _cycle(verts: list[str], adj: dict[str, set[str]]) -> list[str]:
    """The unique cycle of a unicyclic component, as a vertex walk."""
    degree = {v: len(adj[v]) for v in verts}
    leaves = deque(v for v in verts if degree[v] == 1)
    stripped = set()
    while leaves:
        v = leaves.popleft()
        stripped.add(v)
        for w in adj[v]:
            if w not in stripped:
                degree[w] -= 1
                if degree[w] == 1:
                    leaves.append(w)
    on_cycle = {v for v in verts if v not in stripped}
    start = min(on_cycle)
    walk = [start]
    prev = None
    cur = start
    while True:
        nxt = min(w for w in adj[cur] if w in on_cycle and w != prev)
        if nxt == start:
            break
        walk.append(nxt)
        prev, cur = cur, nxt
    return walk


def three_edge_color(edges: Iterable[Edge]) -> dict[Edge, int]:
    """Color every edge with 1, 2 or 3 so that touching edges differ."""
    edges = {make_edge(u, v) for u, v in edges}
    check_pseudoforest(edges)
    adj = _adjacency(edges)
    color: dict[Edge, int] = {}
    used: dict[str, set[int]] = {v: set() for v in adj}

    def paint(u: str, v: str, c: int) -> None:
        color[make_edge(u, v)] = c
        used[u].add(c)
        used[v].add(c)

    for verts, comp_edges in components(edges):
        if len(comp_edges) == len(verts):
            cycle = _cycle(verts, adj)
            n = len(cycle)
            for i in range(n):
                c = 1 if i % 2 == 0 else 2
                if i == n - 1 and n % 2 == 1:
                    c = 3
                paint(cycle[i], cycle[(i + 1) % n], c)
            roots = cycle
        else:
            roots = [verts[0]]
        visited = set(roots)
        queue = deque(roots)
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u]):
                if w in visited:
                    continue
                free = [c for c in COLORS if c not in used[u] and c not in used[w]]
                if not free:
                    raise ColoringError(f"no color left for edge ({u}, {w})")
                paint(u, w, free[0])
                visited.add(w)
                queue.append(w)
    return color


def color_classes(coloring: dict[Edge, int]) -> list[set[Edge]]:
    return [{e for e, c in coloring.items() if c == k} for k in COLORS]


def is_proper(coloring: dict[Edge, int]) -> bool:
    seen: dict[tuple[str, int], Edge] = {}
    for (u, v), c in coloring.items():
        for x in (u, v):
            if (x, c) in seen:
                return False
            seen[(x, c)] = (u, v)
    return True
