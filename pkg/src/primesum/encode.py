"""Balanced tree splitting and {-1, 1, 2}-vector codes for tree adjacency.

Every vertex of a tree gets a vector of length d (a multiple of 3) over
{-1, 1, 2}, with each value used exactly d/3 times, such that two vertices
are adjacent exactly when their coordinate-wise sum has no zero entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .tree import Tree

Code = tuple[int, ...]
Adjacency = Mapping[int, list[int]]

BLOCK = (-1, 1, 2)
SHARED_SUFFIX = (2, 1, -1)
SECOND_SUFFIX = (1, 2, -1)
LOG_BASE = math.log(1.5)


@dataclass(frozen=True)
class SplitResult:
    u1: frozenset[int]
    u2: frozenset[int]
    shared: int


@dataclass(frozen=True)
class Encoding:
    d: int
    codes: dict[int, Code]

    def matrix(self, vertices) -> np.ndarray:
        return np.array([self.codes[v] for v in vertices], dtype=np.int8)


def dimension_bound(m: int) -> float:
    """Upper bound 10 ln(m) / ln(3/2) on the code length, meaningful for m >= 2."""
    return 10 * math.log(m) / LOG_BASE


def codes_adjacent(a: Code, b: Code) -> bool:
    return all(x + y != 0 for x, y in zip(a, b))


def _components(adj: Adjacency, vertices: frozenset[int], removed: int) -> list[frozenset[int]]:
    seen = {removed}
    out = []
    for start in sorted(vertices):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w in vertices and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def _largest(comps: list[frozenset[int]]) -> frozenset[int]:
    return min(comps, key=lambda c: (-len(c), min(c)))


def _split(adj: Adjacency, vertices: frozenset[int]) -> SplitResult:
    m = len(vertices)
    if m < 3:
        raise ValueError(f"splitting needs at least 3 vertices, got {m}")
    local_degree = {v: sum(w in vertices for w in adj[v]) for v in vertices}
    walk = [min(v for v in vertices if local_degree[v] == 1)]
    sizes = [m]  # sizes[k] = |T_{k+1}| in 1-based terms
    pieces = [vertices]
    while True:
        v_k = walk[-1]
        nxt = _largest(_components(adj, vertices, v_k))
        walk.append(next(w for w in adj[v_k] if w in nxt))
        pieces.append(nxt)
        sizes.append(len(nxt))
        i = len(sizes) - 2
        if i >= 1 and sizes[i] <= sizes[i + 1]:
            break

    t_i, t_next = pieces[i], pieces[i + 1]
    shared = walk[i - 1]
    if 3 * len(t_i) >= m:
        assert shared in t_next and len(t_i) + len(t_next) == m
        return SplitResult(t_next, t_i | {shared}, shared)

    forest = _components(adj, vertices, shared)
    forest.sort(key=lambda c: (-len(c), min(c)))
    union: set[int] = set()
    taken = 0
    while 3 * len(union) < m:
        union |= forest[taken]
        taken += 1
    assert 3 * len(union) < 2 * m
    rest = set().union(*forest[taken:])
    return SplitResult(frozenset(union | {shared}), frozenset(rest | {shared}), shared)


def split_tree(t: Tree) -> SplitResult:
    """Two subtrees covering ``t``, sharing one vertex, each with at least m/3 vertices."""
    return _split(t.adjacency, frozenset(t.vertices))


def _pad(codes: dict[int, Code], d: int) -> dict[int, Code]:
    extra = (d - len(next(iter(codes.values())))) // 3
    return {v: c + BLOCK * extra for v, c in codes.items()}


def matching_permutation(src: Code, dst: Code) -> list[int]:
    """Positions ``perm`` with ``src[perm[k]] == dst[k]``, matching each value's occurrences in order."""
    perm = [0] * len(dst)
    for value in BLOCK:
        for s, t in zip(
            (k for k, x in enumerate(src) if x == value),
            (k for k, x in enumerate(dst) if x == value),
        ):
            perm[t] = s
    return perm


def permute(code: Code, perm: list[int]) -> Code:
    return tuple(code[p] for p in perm)


def _base(adj: Adjacency, vertices: frozenset[int]) -> dict[int, Code]:
    ordered = sorted(vertices)
    if len(ordered) == 1:
        return {ordered[0]: BLOCK}
    if len(ordered) == 2:
        return {ordered[0]: BLOCK, ordered[1]: SHARED_SUFFIX}
    center = next(v for v in ordered if sum(w in vertices for w in adj[v]) == 2)
    x, z = (v for v in ordered if v != center)
    return {x: BLOCK, center: SHARED_SUFFIX, z: SECOND_SUFFIX}


def _encode(adj: Adjacency, vertices: frozenset[int]) -> dict[int, Code]:
    if len(vertices) <= 3:
        return _base(adj, vertices)
    split = _split(adj, vertices)
    first = _encode(adj, split.u1)
    second = _encode(adj, split.u2)
    d1 = len(first[split.shared])
    d2 = len(second[split.shared])
    d = max(d1, d2)
    first, second = _pad(first, d), _pad(second, d)
    perm = matching_permutation(first[split.shared], second[split.shared])
    first = {v: permute(c, perm) for v, c in first.items()}
    assert first[split.shared] == second[split.shared]

    codes: dict[int, Code] = {}
    for v, c in first.items():
        codes[v] = c + BLOCK
    for v, c in second.items():
        codes[v] = c + SECOND_SUFFIX
    codes[split.shared] = second[split.shared] + SHARED_SUFFIX
    assert len(codes[split.shared]) <= max(d1, d2) + 3
    return codes


def encode_tree(t: Tree) -> Encoding:
    """Vector codes for every vertex of ``t`` built by recursive balanced splitting."""
    codes = _encode(t.adjacency, frozenset(t.vertices))
    codes = {v: codes[v] for v in t.vertices}
    return Encoding(len(codes[1]), codes)


def encoding_violations(t: Tree, enc: Encoding) -> list[str]:
    """Everything wrong with ``enc`` as a code for ``t``; empty when valid."""
    problems = []
    if enc.d % 3:
        problems.append(f"dimension {enc.d} not divisible by 3")
    if t.m >= 2 and enc.d > dimension_bound(t.m):
        problems.append(f"dimension {enc.d} exceeds bound {dimension_bound(t.m):.3f}")
    if set(enc.codes) != set(t.vertices):
        return problems + ["code keys do not match the vertex set"]
    mat = enc.matrix(t.vertices)
    if mat.shape[1] != enc.d:
        return problems + ["code lengths differ from d"]
    for value in BLOCK:
        counts = (mat == value).sum(axis=1)
        for v, c in zip(t.vertices, counts):
            if 3 * c != enc.d:
                problems.append(f"vertex {v} uses {value} {c} times, expected {enc.d // 3}")
    if len(set(enc.codes.values())) != t.m:
        problems.append("codes are not pairwise distinct")
    no_zero = (mat[:, None, :] + mat[None, :, :] != 0).all(axis=2)
    for a in range(t.m):
        for b in range(a + 1, t.m):
            if bool(no_zero[a, b]) != t.has_edge(a + 1, b + 1):
                problems.append(f"pair ({a + 1}, {b + 1}): code sum disagrees with adjacency")
    return problems
