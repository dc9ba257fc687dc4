"""Labeled trees on vertices 1..m: parsing, traversal, generation, canonization."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

DEFAULT_ENUMERATION_CAP = 12


class TreeError(ValueError):
    """Invalid tree input.  ``kind`` names the defect, ``line`` the source line if known."""

    def __init__(self, kind: str, message: str, line: int | None = None):
        self.kind = kind
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


@dataclass(frozen=True)
class Tree:
    m: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.m < 1:
            raise TreeError("size", f"vertex count must be positive, got {self.m}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise TreeError("self-loop", f"self-loop at vertex {u}")
            if not (1 <= u <= self.m and 1 <= v <= self.m):
                raise TreeError("range", f"edge {u}-{v} has a vertex outside 1..{self.m}")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))
        if len(normalized) != self.m - 1:
            raise TreeError("edge-count", f"expected {self.m - 1} edges, got {len(normalized)}")
        if len(_reachable(self.adjacency, 1)) != self.m:
            raise TreeError("disconnected", "edge set is not connected")

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[tuple[int, int]]) -> "Tree":
        return cls(m, frozenset(edges))

    @cached_property
    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.m + 1)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    @property
    def vertices(self) -> range:
        return range(1, self.m + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def relabel(self, mapping: dict[int, int]) -> "Tree":
        return Tree(self.m, frozenset((mapping[u], mapping[v]) for u, v in self.edges))

    def serialize(self) -> str:
        lines = [str(self.m)]
        lines += [f"{u} {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"


def _reachable(adj: dict[int, list[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def path_tree(m: int) -> Tree:
    return Tree(m, frozenset((k, k + 1) for k in range(1, m)))


def star_tree(m: int, center: int = 1) -> Tree:
    return Tree(m, frozenset((center, v) for v in range(1, m + 1) if v != center))


def parse_tree(text: str) -> Tree:
    """Parse the edge-list format: a vertex count, then one ``u v`` pair per line.

    Blank lines and ``#`` comments are skipped.  Each defect raises a
    :class:`TreeError` with its own ``kind``.
    """
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body.split()))
    if not rows:
        raise TreeError("malformed", "empty tree file")

    header_line, header = rows[0]
    if len(header) != 1 or not header[0].isdigit():
        raise TreeError("malformed", f"expected vertex count, got {' '.join(header)!r}", header_line)
    m = int(header[0])
    if m < 1:
        raise TreeError("size", "vertex count must be positive", header_line)

    edges: set[tuple[int, int]] = set()
    root = list(range(m + 1))

    def find(x: int) -> int:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    cycle_line = None
    for lineno, parts in rows[1:]:
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise TreeError("malformed", f"expected 'u v', got {' '.join(parts)!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise TreeError("self-loop", f"self-loop at vertex {u}", lineno)
        if not (1 <= u <= m and 1 <= v <= m):
            raise TreeError("range", f"vertex out of range 1..{m} in edge {u} {v}", lineno)
        if u > v:
            raise TreeError("malformed", f"edge must be written with u < v, got {u} {v}", lineno)
        if (u, v) in edges:
            raise TreeError("duplicate", f"duplicate edge {u} {v}", lineno)
        edges.add((u, v))
        ru, rv = find(u), find(v)
        if ru == rv and cycle_line is None:
            cycle_line = lineno
        root[ru] = rv

    if len(edges) > m - 1:
        raise TreeError("edge-count", f"expected {m - 1} edges for {m} vertices, got {len(edges)}")
    if cycle_line is not None:
        raise TreeError("cycle", "edge closes a cycle", cycle_line)
    if len(edges) < m - 1:
        parts_left = len({find(v) for v in range(1, m + 1)})
        raise TreeError("disconnected", f"{len(edges)} edges leave {parts_left} components; a tree needs {m - 1}")
    return Tree(m, frozenset(edges))


def bfs_order(t: Tree, root: int = 1) -> list[int]:
    """Breadth-first order from ``root``, neighbors visited in increasing label order.

    Every vertex after the first has exactly one neighbor earlier in the order.
    """
    if not 1 <= root <= t.m:
        raise ValueError(f"root {root} outside 1..{t.m}")
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in t.adjacency[v]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    position = {v: k for k, v in enumerate(order)}
    for k, v in enumerate(order[1:], start=1):
        earlier = [w for w in t.adjacency[v] if position[w] < k]
        assert len(earlier) == 1, f"vertex {v} has {len(earlier)} earlier neighbors"
    return order


def bfs_parents(t: Tree, order: list[int]) -> dict[int, int]:
    """Map each non-first vertex of ``order`` to its unique earlier neighbor."""
    position = {v: k for k, v in enumerate(order)}
    return {
        v: next(w for w in t.adjacency[v] if position[w] < position[v])
        for v in order[1:]
    }


def prufer_decode(seq: list[int], m: int) -> Tree:
    """Labeled tree on 1..m encoded by a Prufer sequence of length m-2."""
    if m == 1:
        return Tree(1)
    if len(seq) != m - 2:
        raise ValueError(f"Prufer sequence for {m} vertices must have length {m - 2}")
    degree = [1] * (m + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(1, m + 1) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(1, m + 1) if degree[w] == 1)
    edges.append((u, v))
    return Tree(m, frozenset(edges))


def random_tree(m: int, seed: int = 0) -> Tree:
    """Uniformly random labeled tree (random Prufer sequence), reproducible from ``seed``."""
    if m < 1:
        raise ValueError("m must be positive")
    rng = random.Random(seed)
    return prufer_decode([rng.randint(1, m) for _ in range(m - 2)], m) if m > 1 else Tree(1)


def centers(t: Tree) -> list[int]:
    """The one or two centers, found by stripping leaves layer by layer."""
    if t.m <= 2:
        return list(t.vertices)
    degree = {v: t.degree(v) for v in t.vertices}
    layer = [v for v in t.vertices if degree[v] == 1]
    remaining = t.m
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            for w in t.adjacency[leaf]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_code(t: Tree, root: int) -> str:
    parent = {root: 0}
    order = [root]
    for v in order:
        for w in t.adjacency[v]:
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    code: dict[int, str] = {}
    for v in reversed(order):
        kids = sorted(code[w] for w in t.adjacency[v] if w != parent[v])
        code[v] = "(" + "".join(kids) + ")"
    return code[root]


def canonical_form(t: Tree) -> str:
    """AHU parenthesis string rooted at the center; equal iff the trees are isomorphic."""
    return min(_rooted_code(t, c) for c in centers(t))


def enumerate_free_trees(m: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Tree]:
    """One tree per isomorphism class on m vertices, sorted by canonical form.

    Grows every class on k vertices by attaching a leaf at each vertex and
    deduplicates by canonical form.  Vertex k+1 is always attached to an
    earlier vertex, so vertex 1 works as a BFS root for every representative.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m > cap:
        raise ValueError(f"free-tree enumeration capped at m={cap}, requested {m}")
    level = {canonical_form(Tree(1)): Tree(1)}
    for k in range(1, m):
        grown: dict[str, Tree] = {}
        for key in sorted(level):
            t = level[key]
            for v in t.vertices:
                child = Tree(k + 1, t.edges | {(v, k + 1)})
                grown.setdefault(canonical_form(child), child)
        level = grown
    return [level[key] for key in sorted(level)]
