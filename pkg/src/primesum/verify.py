"""Checking induced copies, brute-force search for them, and random-graph path counts."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .graphs import AmbientGraph, CoprimeSum, Explicit, PrimeSum, is_edge
from .numtheory import is_prime, sieve
from ._search import FAST_MAX_N, search_py, search_u64
from .tree import Tree, bfs_order, bfs_parents, enumerate_free_trees

ORACLE_MAX_N = 5000
ORACLE_MAX_M = 16
TRIAL_DIVISION_LIMIT = 10**6


@dataclass(frozen=True)
class Violation:
    kind: str  # "range", "duplicate", "missing-edge" or "extra-edge"
    pair: tuple[int, int]
    expected_edge: bool | None = None
    observed_edge: bool | None = None
    label_sum: int | None = None
    witness: str | None = None


@dataclass
class VerificationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _small_factor(x: int) -> int | None:
    for p in range(2, min(math.isqrt(x), TRIAL_DIVISION_LIMIT) + 1):
        if x % p == 0:
            return p
    return None


def _witness(g: AmbientGraph, s: int, edge: bool) -> str:
    if isinstance(g, CoprimeSum):
        return f"gcd({s}, {g.q}) = {math.gcd(s, g.q)}"
    if isinstance(g, PrimeSum):
        if edge:
            return f"{s} is prime"
        f = _small_factor(s)
        return f"{s} = {f} * {s // f}" if f else f"{s} is composite"
    return "explicit adjacency"


def verify_induced(t: Tree, labels: Sequence[int], g: AmbientGraph) -> VerificationReport:
    """Check that vertex x -> labels[x-1] maps ``t`` onto an induced subgraph of ``g``.

    Defects come back as violations, never as exceptions.
    """
    if len(labels) != t.m:
        raise ValueError(f"expected {t.m} labels, got {len(labels)}")
    report = VerificationReport()
    seen: dict[int, int] = {}
    for x, j in enumerate(labels, start=1):
        if not 1 <= j <= g.n:
            report.violations.append(Violation("range", (x, x), label_sum=None, witness=f"label {j} outside 1..{g.n}"))
        if j in seen:
            report.violations.append(Violation("duplicate", (seen[j], x), witness=f"label {j} used twice"))
        else:
            seen[j] = x
    if not report.ok:
        return report
    for x in range(1, t.m + 1):
        for y in range(x + 1, t.m + 1):
            expected = t.has_edge(x, y)
            jx, jy = labels[x - 1], labels[y - 1]
            observed = is_edge(g, jx, jy)
            if observed != expected:
                kind = "missing-edge" if expected else "extra-edge"
                report.violations.append(
                    Violation(kind, (x, y), expected, observed, jx + jy, _witness(g, jx + jy, observed))
                )
    return report


def _neighbor_masks(g: AmbientGraph) -> list[int]:
    """Bit j of masks[i] set iff i ~ j, for 1 <= i, j <= n."""
    n = g.n
    if isinstance(g, PrimeSum):
        flags = sieve(2 * n)
        masks = [0]
        for i in range(1, n + 1):
            js = np.flatnonzero(flags[i + 1 : i + n + 1]) + 1
            mask = sum(1 << int(j) for j in js)
            masks.append(mask & ~(1 << i))
        return masks
    masks = [0]
    for i in range(1, n + 1):
        mask = 0
        for j in range(1, n + 1):
            if j != i and g.adjacent(i, j):
                mask |= 1 << j
        masks.append(mask)
    return masks


def _low_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _subtree_codes(t: Tree, order: list[int], parents: dict[int, int]) -> dict[int, str]:
    code: dict[int, str] = {}
    for v in reversed(order):
        kids = sorted(code[w] for w in t.adjacency[v] if parents.get(w) == v)
        code[v] = "(" + "".join(kids) + ")"
    return code


def find_induced(
    t: Tree, g: AmbientGraph, root: int | None = None, compiled: bool | None = None
) -> list[int] | None:
    """Lexicographically least induced copy of ``t`` in ``g``, or None.

    Tree vertices are placed in BFS order from ``root`` (default: the
    smallest vertex of maximum degree) with candidate labels ascending, so
    the first hit is the least label sequence in that order.  Returns
    labels indexed by tree vertex (entry x-1 for vertex x).

    Pruning: a placed vertex's remaining children must fit in its pool of
    unused neighbors that avoid every other placed label's neighborhood, and
    isomorphic sibling subtrees take increasing root labels.  Both keep the
    lexicographically least solution.

    ``compiled`` picks the numba kernel (only for n <= 62) or the pure
    Python one; by default the compiled kernel is used whenever it applies.
    """
    if g.n > ORACLE_MAX_N or t.m > ORACLE_MAX_M:
        raise ValueError(f"oracle capped at n <= {ORACLE_MAX_N}, m <= {ORACLE_MAX_M}")
    if t.m > g.n:
        return None
    if root is None:
        root = max(t.vertices, key=lambda v: (t.degree(v), -v))
    order = bfs_order(t, root)
    parents = bfs_parents(t, order)
    pos = {v: k for k, v in enumerate(order)}
    m = t.m
    parent_pos = [-1] + [pos[parents[v]] for v in order[1:]]
    need = [t.degree(v) for v in order]
    children = [need[k] - (k > 0) for k in range(m)]
    # pending[k][w]: children of position w among positions 1..k-1
    pending = [[0] * m for _ in range(m + 1)]
    for k in range(2, m + 1):
        pending[k] = pending[k - 1][:]
        pending[k][parent_pos[k - 1]] += 1

    codes = _subtree_codes(t, order, parents)
    twin_prev = [-1] * m
    last_twin: dict[tuple[int, str], int] = {}
    for k in range(1, m):
        key = (parent_pos[k], codes[order[k]])
        twin_prev[k] = last_twin.get(key, -1)
        last_twin[key] = k

    masks = _neighbor_masks(g)
    full = ((1 << (g.n + 1)) - 1) & ~1
    deg_filter = [sum(1 << i for i in range(1, g.n + 1) if masks[i].bit_count() >= d) for d in need]

    if compiled is None:
        compiled = g.n <= FAST_MAX_N
    if compiled:
        if g.n > FAST_MAX_N:
            raise ValueError(f"compiled search needs n <= {FAST_MAX_N}")
        u64 = lambda xs: np.array(xs, dtype=np.uint64)
        found, arr = search_u64(
            u64(masks), np.uint64(full), np.array(parent_pos, dtype=np.int64), u64(deg_filter),
            np.array(twin_prev, dtype=np.int64), np.array(children, dtype=np.int64),
            np.array(pending, dtype=np.int64),
        )
        assigned = [int(x) for x in arr] if found else None
    else:
        assigned = search_py(masks, full, parent_pos, deg_filter, twin_prev, children, pending)
    if assigned is None:
        return None
    labels = [0] * m
    for k, v in enumerate(order):
        labels[v - 1] = assigned[k]
    return labels


@lru_cache(maxsize=None)
def _free_trees(m: int) -> tuple[Tree, ...]:
    return tuple(enumerate_free_trees(m, cap=ORACLE_MAX_M))


def max_universal_m(n: int, cap: int = ORACLE_MAX_M) -> int:
    """Largest M such that P_n holds an induced copy of every tree on at most M vertices."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > ORACLE_MAX_N:
        raise ValueError(f"oracle capped at n <= {ORACLE_MAX_N}")
    g = PrimeSum(n)
    for m in range(1, n + 1):
        if m > cap:
            raise ValueError(f"every tree up to m={cap} embeds in P_{n}; raise the enumeration cap")
        if any(find_induced(t, g) is None for t in _free_trees(m)):
            return m - 1
    return n


def minimal_host(t: Tree, n_max: int) -> int | None:
    """Least n <= n_max such that P_n holds an induced copy of ``t``."""
    for n in range(t.m, n_max + 1):
        if find_induced(t, PrimeSum(n)) is not None:
            return n
    return None


def expected_induced_path_count(n: int, p: float, m: int) -> tuple[float, float]:
    """Expected number of induced m-vertex paths in G(n, p), and the cruder n^m bound.

    Returns ``(exact, bound)`` with exact using the falling factorial n(n-1)...(n-m+1)
    halved for reversals, and bound = n^m p^(m-1) (1-p)^((m-1)(m-2)/2).
    """
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if not 2 <= m <= n:
        raise ValueError("need 2 <= m <= n")
    non_edges = (m - 1) * (m - 2) // 2
    exact = math.perm(n, m) / 2 * p ** (m - 1) * (1 - p) ** non_edges
    bound = float(n) ** m * p ** (m - 1) * (1 - p) ** non_edges
    return exact, bound


def sample_gnp(n: int, p: float, seed: int = 0) -> Explicit:
    """Erdos-Renyi G(n, p) on vertices 1..n, reproducible from ``seed``."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
    return Explicit.from_edges(n, edges)


def count_induced_paths(g: AmbientGraph, m: int) -> int:
    """Number of induced paths on m vertices, counting a path and its reversal once."""
    if m < 2:
        raise ValueError("m must be at least 2")
    masks = _neighbor_masks(g)
    total = 0

    def extend(last: int, used: int, blocked: int, length: int) -> None:
        # blocked: union of neighborhoods of every path vertex except the last
        nonlocal total
        cand = masks[last] & ~used & ~blocked
        if length == m - 1:
            total += cand.bit_count()
            return
        for j in _low_bits(cand):
            extend(j, used | (1 << j), blocked | masks[last], length + 1)

    for start in range(1, g.n + 1):
        extend(start, 1 << start, 0, 1)
    assert total % 2 == 0
    return total // 2
