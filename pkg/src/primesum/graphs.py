"""Prime-sum graphs P_n, coprime-sum graphs Q_n(q) and explicit graphs on 1..n."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .numtheory import DEFAULT_PRIMALITY, PrimalityConfig, is_prime, primes_up_to, sieve

EXHAUSTIVE_CAP = 200_000


class CapExceeded(ValueError):
    """An exact computation was requested beyond its configured size cap."""


@dataclass(frozen=True)
class PrimeSum:
    n: int
    primality: PrimalityConfig = DEFAULT_PRIMALITY

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")

    kind = "prime"

    def adjacent(self, i: int, j: int) -> bool:
        return is_prime(i + j, self.primality)


@dataclass(frozen=True)
class CoprimeSum:
    n: int
    q: int
    factors: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.q < 2:
            raise ValueError("q must be at least 2")
        if self.factors is not None and math.prod(self.factors) != self.q:
            raise ValueError("factors must multiply to q")

    kind = "coprime"

    def adjacent(self, i: int, j: int) -> bool:
        return math.gcd(i + j, self.q) == 1


@dataclass(frozen=True)
class Explicit:
    n: int
    neighbors: tuple[frozenset[int], ...]

    kind = "explicit"

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Explicit":
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in edges:
            if u == v or not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"bad edge {u}-{v} for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(s) for s in adj))

    def adjacent(self, i: int, j: int) -> bool:
        return j in self.neighbors[i]

    def sorted_neighbors(self, i: int) -> list[int]:
        return sorted(self.neighbors[i])

    def edge_count(self) -> int:
        return sum(len(s) for s in self.neighbors) // 2


AmbientGraph = PrimeSum | CoprimeSum | Explicit


def is_edge(g: AmbientGraph, i: int, j: int) -> bool:
    if not (1 <= i <= g.n and 1 <= j <= g.n):
        raise ValueError(f"vertex pair ({i}, {j}) outside 1..{g.n}")
    return i != j and g.adjacent(i, j)


def euler_phi(factors: Sequence[int]) -> int:
    """Totient of a squarefree product of the given distinct primes."""
    if len(set(factors)) != len(factors):
        raise ValueError("factors must be distinct primes")
    return math.prod(p - 1 for p in factors)


def _coprime_flags(limit: int, q: int) -> np.ndarray:
    """flags[k] true iff gcd(k, q) == 1, for 0 <= k <= limit."""
    if q < 2**62:
        return np.gcd(np.arange(limit + 1, dtype=np.int64), np.int64(q)) == 1
    return np.array([math.gcd(k, q) == 1 for k in range(limit + 1)], dtype=bool)


def degrees(g: AmbientGraph) -> np.ndarray:
    """Exact degree of every vertex; entry 0 is unused.  Capped at EXHAUSTIVE_CAP vertices."""
    if g.n > EXHAUSTIVE_CAP:
        raise CapExceeded(f"n={g.n} exceeds the exhaustive cap {EXHAUSTIVE_CAP}; use sampled_average_degree")
    n = g.n
    if isinstance(g, Explicit):
        return np.array([0] + [len(g.neighbors[i]) for i in range(1, n + 1)], dtype=np.int64)
    flags = sieve(2 * n) if isinstance(g, PrimeSum) else _coprime_flags(2 * n, g.q)
    prefix = np.concatenate(([0], np.cumsum(flags, dtype=np.int64)))
    i = np.arange(1, n + 1)
    # sums i+1 .. i+n, minus the excluded j == i term
    deg = prefix[i + n + 1] - prefix[i + 1] - flags[2 * i]
    return np.concatenate(([0], deg))


def edge_count(g: AmbientGraph) -> int:
    return int(degrees(g).sum()) // 2


def average_degree(g: AmbientGraph) -> Fraction:
    """Exactly 2|E|/n."""
    return Fraction(int(degrees(g).sum()), g.n)


def _window_degree(g: AmbientGraph, i: int) -> int:
    lo, hi = i + 1, i + g.n
    if isinstance(g, Explicit):
        return len(g.neighbors[i])
    if isinstance(g, CoprimeSum):
        window = np.arange(lo, hi + 1, dtype=object if g.q >= 2**62 else np.int64)
        count = int(np.count_nonzero(np.gcd(window, g.q) == 1))
        return count - (math.gcd(2 * i, g.q) == 1)
    flags = np.ones(hi - lo + 1, dtype=bool)
    for p in primes_up_to(math.isqrt(hi)):
        start = max(p * p, -(-lo // p) * p)
        flags[start - lo :: p] = False
    return int(flags.sum()) - (2 * i == 2)


def sampled_average_degree(g: AmbientGraph, samples: int = 200, seed: int = 0) -> tuple[float, float]:
    """Unbiased estimate of the average degree from uniformly sampled vertices, with its standard error."""
    rng = random.Random(seed)
    values = np.array([_window_degree(g, rng.randint(1, g.n)) for _ in range(samples)], dtype=float)
    stderr = float(values.std(ddof=1) / math.sqrt(samples)) if samples > 1 else float("nan")
    return float(values.mean()), stderr


def parity_profile(n_max: int) -> np.ndarray:
    """ok[n] true iff P_n has no edge between equal-parity vertices, for every n <= n_max.

    Scans every pair i < n exhaustively as vertex n joins the graph.
    """
    flags = sieve(2 * n_max)
    ok = np.ones(n_max + 1, dtype=bool)
    bad = False
    for n in range(2, n_max + 1):
        same = np.arange(2 - n % 2, n, 2)
        if not bad and flags[same + n].any():
            bad = True
        ok[n] = not bad
    return ok


def check_bipartite_parity(n: int) -> bool:
    """True iff every edge of P_n joins an even vertex to an odd one."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return bool(parity_profile(n)[n])


def to_dot(
    g: AmbientGraph,
    names: Mapping[str, int],
    solid: Iterable[tuple[str, str]] = (),
    graph_name: str = "embedding",
) -> str:
    """DOT text for ``g`` restricted to the vertices in ``names`` (display name -> vertex).

    Ambient edges listed in ``solid`` are drawn solid; any other ambient edge
    among the chosen vertices is drawn dashed red.
    """
    solid_set = {frozenset(e) for e in solid}
    ordered = list(names.items())
    lines = [f"graph {graph_name} {{"]
    for name, vertex in ordered:
        lines.append(f'  "{name}" [label="{name}:{vertex}"];')
    for a in range(len(ordered)):
        for b in range(a + 1, len(ordered)):
            (na, va), (nb, vb) = ordered[a], ordered[b]
            if is_edge(g, va, vb):
                style = "" if frozenset((na, nb)) in solid_set else " [style=dashed, color=red]"
                lines.append(f'  "{na}" -- "{nb}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"
