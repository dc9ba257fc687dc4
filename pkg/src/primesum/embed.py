"""Explicit induced copies of a tree in prime-sum and coprime-sum graphs.

Pipeline: vector codes -> CRT residues modulo q = 5*7*11*... -> labels.
For the prime-sum target each new vertex's label is chosen so that its sum
with its BFS parent's label is the least suitable prime in the right
residue class mod q; every non-adjacent pair then has a sum sharing a prime
factor with q, and that sum exceeds 2q, so it is composite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from .encode import Encoding, encode_tree
from .numtheory import DEFAULT_PRIMALITY, PrimalityConfig, crt_solve, next_prime_in_ap, primes_from_5
from .tree import Tree, bfs_order, bfs_parents

Target = Literal["prime", "coprime"]


@dataclass(frozen=True)
class ResidueAssignment:
    d: int
    moduli: tuple[int, ...]
    q: int
    residues: dict[int, int]


@dataclass(frozen=True)
class EmbedConfig:
    start_multiplier: int = 1
    root: int = 1
    primality: PrimalityConfig = DEFAULT_PRIMALITY
    budget: int | None = None

    def __post_init__(self):
        if self.start_multiplier < 1:
            raise ValueError("start_multiplier must be a positive integer")
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be positive when given")


@dataclass(frozen=True)
class TraceStep:
    vertex: int
    parent: int | None
    label: int
    prime: int | None = None


@dataclass(frozen=True)
class Embedding:
    target: Target
    labels: dict[int, int]
    q: int
    n: int
    encoding: Encoding
    residues: ResidueAssignment
    trace: list[TraceStep] = field(default_factory=list)

    @property
    def max_label(self) -> int:
        return max(self.labels.values())

    def label_list(self) -> list[int]:
        return [self.labels[v] for v in sorted(self.labels)]


def assign_residues(enc: Encoding) -> ResidueAssignment:
    """CRT residue per vertex: a = code[i] (mod i-th prime from 5) for every coordinate."""
    moduli = tuple(primes_from_5(enc.d))
    q = math.prod(moduli)
    residues = {
        v: crt_solve([(x % p, p) for x, p in zip(code, moduli)])
        for v, code in enc.codes.items()
    }
    return ResidueAssignment(enc.d, moduli, q, residues)


def embed_prime(t: Tree, cfg: EmbedConfig = EmbedConfig()) -> Embedding:
    """Labels realizing ``t`` as an induced subgraph of the prime-sum graph.

    Raises :class:`~primesum.numtheory.BudgetExceeded` when ``cfg.budget`` caps
    a prime search that then fails.
    """
    enc = encode_tree(t)
    ra = assign_residues(enc)
    q, a = ra.q, ra.residues
    order = bfs_order(t, cfg.root)
    parents = bfs_parents(t, order)

    first = order[0]
    labels = {first: a[first] + q * cfg.start_multiplier}
    trace = [TraceStep(first, None, labels[first])]
    for v in order[1:]:
        p = parents[v]
        prime = next_prime_in_ap((a[v] + a[p]) % q, q, labels[p] + q, cfg.primality, cfg.budget)
        label = prime - labels[p]
        # prime == 2 * labels[p] is impossible for an odd prime
        assert label != labels[p]
        assert label % q == a[v] and label > q
        assert label not in labels.values(), f"label {label} repeated at vertex {v}"
        labels[v] = label
        trace.append(TraceStep(v, p, label, prime))
    labels = {v: labels[v] for v in sorted(labels)}
    return Embedding("prime", labels, q, max(labels.values()), enc, ra, trace)


def embed_coprime(t: Tree) -> Embedding:
    """Residues themselves as labels, an induced copy of ``t`` in the coprime-sum graph Q_{q-1}(q)."""
    enc = encode_tree(t)
    ra = assign_residues(enc)
    labels = {v: ra.residues[v] for v in sorted(ra.residues)}
    assert len(set(labels.values())) == t.m
    trace = [TraceStep(v, None, labels[v]) for v in bfs_order(t)]
    return Embedding("coprime", labels, ra.q, ra.q - 1, enc, ra, trace)
