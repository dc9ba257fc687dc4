import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primesum import encode as enc_mod
from primesum.encode import (
    BLOCK,
    Encoding,
    codes_adjacent,
    dimension_bound,
    encode_tree,
    encoding_violations,
    matching_permutation,
    permute,
    split_tree,
)
from primesum.tree import Tree, enumerate_free_trees, path_tree, random_tree, star_tree


def check_split(t, s):
    assert s.u1 | s.u2 == frozenset(t.vertices)
    assert s.u1 & s.u2 == {s.shared}
    assert 3 * len(s.u1) >= t.m and 3 * len(s.u2) >= t.m
    for side in (s.u1, s.u2):
        # connected: |side| - 1 tree edges inside it
        assert sum(u in side and v in side for u, v in t.edges) == len(side) - 1


def test_split_path3():
    s = split_tree(path_tree(3))
    assert {s.u1, s.u2} == {frozenset({1, 2}), frozenset({2, 3})} and s.shared == 2


def test_split_star4():
    s = split_tree(star_tree(4, center=1))
    assert s.shared == 1
    assert sorted([len(s.u1), len(s.u2)]) == [2, 3]
    check_split(star_tree(4), s)


def test_split_path4():
    s = split_tree(path_tree(4))
    check_split(path_tree(4), s)
    assert s.shared == 2 and {s.u1, s.u2} == {frozenset({1, 2}), frozenset({2, 3, 4})}


def test_split_rejects_small():
    with pytest.raises(ValueError):
        split_tree(path_tree(2))


def spider(k):
    """Three paths of length k joined at one center: the extremal case for the m/3 bound."""
    m = 3 * k + 1
    edges = []
    for leg in range(3):
        base = 2 + leg * k
        edges.append((1, base))
        edges += [(base + i, base + i + 1) for i in range(k - 1)]
    return Tree(m, frozenset(edges))


@pytest.mark.parametrize("k", [1, 2, 3, 5, 8])
def test_split_extremal_spider(k):
    t = spider(k)
    s = split_tree(t)
    check_split(t, s)


def test_split_all_small_trees():
    for m in range(3, 11):
        for t in enumerate_free_trees(m):
            check_split(t, split_tree(t))


@settings(max_examples=150, deadline=None)
@given(m=st.integers(3, 200), seed=st.integers(0, 10**6))
def test_split_random(m, seed):
    t = random_tree(m, seed)
    check_split(t, split_tree(t))


def test_base_case_path3_matches_construction():
    enc = encode_tree(path_tree(3))
    assert enc.d == 3
    assert enc.codes == {1: (-1, 1, 2), 2: (2, 1, -1), 3: (1, 2, -1)}
    total = [a + b for a, b in zip(enc.codes[1], enc.codes[3])]
    assert total[0] == 0


def test_base_case_edge_and_single():
    assert encode_tree(path_tree(2)).codes == {1: (-1, 1, 2), 2: (2, 1, -1)}
    assert encode_tree(Tree(1)).codes == {1: (-1, 1, 2)}


def test_star4_encoding_within_bound():
    enc = encode_tree(star_tree(4))
    assert encoding_violations(star_tree(4), enc) == []
    assert enc.d <= math.floor(10 * math.log(4) / math.log(1.5)) == 34


def test_every_small_tree_encodes():
    for m in range(1, 11):
        for t in enumerate_free_trees(m):
            assert encoding_violations(t, encode_tree(t)) == [], t


@settings(max_examples=60, deadline=None)
@given(m=st.integers(2, 128), seed=st.integers(0, 10**6))
def test_random_encodings(m, seed):
    t = random_tree(m, seed)
    enc = encode_tree(t)
    assert encoding_violations(t, enc) == []
    assert enc.d <= dimension_bound(m)


def test_encoding_is_deterministic():
    t = random_tree(60, 9)
    assert encode_tree(t) == encode_tree(t)


def test_padding_preserves_adjacency():
    t = random_tree(20, 4)
    enc = encode_tree(t)
    padded = Encoding(enc.d + 6, {v: c + BLOCK * 2 for v, c in enc.codes.items()})
    # the appended block sums are (-2, 2, 4) for any pair, never 0
    problems = [p for p in encoding_violations(t, padded) if "bound" not in p]
    assert problems == []


def test_random_coordinate_permutation_preserves_invariants():
    t = random_tree(25, 8)
    enc = encode_tree(t)
    rng = random.Random(0)
    for _ in range(20):
        perm = list(range(enc.d))
        rng.shuffle(perm)
        shuffled = Encoding(enc.d, {v: permute(c, perm) for v, c in enc.codes.items()})
        assert encoding_violations(t, shuffled) == []


def test_matching_permutation():
    src = (2, -1, 1, -1, 2, 1)
    dst = (-1, 1, 2, 1, 2, -1)
    perm = matching_permutation(src, dst)
    assert permute(src, perm) == dst
    assert sorted(perm) == list(range(6))


def test_codes_adjacent():
    assert codes_adjacent((-1, 1, 2), (2, 1, -1))
    assert not codes_adjacent((-1, 1, 2), (1, 2, -1))


def test_violations_detects_broken_encoding():
    t = path_tree(3)
    bad = Encoding(3, {1: (-1, 1, 2), 2: (2, 1, -1), 3: (2, 1, -1)})
    problems = encoding_violations(t, bad)
    assert any("distinct" in p for p in problems)
    assert any("pair (1, 3)" in p for p in problems)


def test_dimension_recurrence(monkeypatch):
    seen = []
    real = enc_mod._encode

    def spy(adj, vertices):
        codes = real(adj, vertices)
        seen.append((vertices, len(next(iter(codes.values())))))
        return codes

    monkeypatch.setattr(enc_mod, "_encode", spy)
    t = random_tree(70, 3)
    enc_mod.encode_tree(t)
    dims = {vs: d for vs, d in seen}
    for vs, d in seen:
        if len(vs) > 3:
            s = enc_mod._split(t.adjacency, vs)
            assert d == max(dims[s.u1], dims[s.u2]) + 3
