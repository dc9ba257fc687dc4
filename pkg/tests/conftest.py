"""Independent oracles shared by the test modules.

Nothing here calls into primesum's arithmetic; each helper is the slow,
obviously-correct version of something the package does quickly.
"""

import itertools
import math

import pytest

from primesum.tree import Tree, canonical_form, prufer_decode


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            return False
    return True


def brute_crt(congruences):
    modulus = math.prod(m for _, m in congruences)
    hits = [x for x in range(modulus) if all(x % m == r for r, m in congruences)]
    assert len(hits) == 1
    return hits[0]


def labeled_tree_classes(m: int) -> dict[str, Tree]:
    """Every labeled tree on m vertices via Prufer sequences, deduplicated by canonical form."""
    if m <= 2:
        trees = [prufer_decode([], m)]
    else:
        trees = (prufer_decode(list(seq), m) for seq in itertools.product(range(1, m + 1), repeat=m - 2))
    classes: dict[str, Tree] = {}
    for t in trees:
        classes.setdefault(canonical_form(t), t)
    return classes


def brute_induced(t: Tree, n: int, adjacent) -> bool:
    """Whether some injective labeling of t into 1..n is an induced copy (all permutations)."""
    for labels in itertools.permutations(range(1, n + 1), t.m):
        if all(
            adjacent(labels[x - 1], labels[y - 1]) == t.has_edge(x, y)
            for x in range(1, t.m + 1)
            for y in range(x + 1, t.m + 1)
        ):
            return True
    return False


@pytest.fixture
def edge_tree():
    return Tree(2, frozenset({(1, 2)}))
