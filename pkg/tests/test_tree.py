import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primesum.tree import (
    Tree,
    TreeError,
    bfs_order,
    canonical_form,
    centers,
    enumerate_free_trees,
    parse_tree,
    path_tree,
    prufer_decode,
    random_tree,
    star_tree,
)

from conftest import labeled_tree_classes


def test_parse_single_edge():
    t = parse_tree("2\n1 2")
    assert t == Tree(2, frozenset({(1, 2)}))


def test_parse_path_with_comments_and_blanks():
    t = parse_tree("# a path\n4\n\n1 2   # first\n2 3\n3 4\n")
    assert t == path_tree(4)


@pytest.mark.parametrize(
    "text, kind, line",
    [
        ("3\n1 2\n1 2", "duplicate", 3),
        ("3\n1 2\n2 3\n1 3", "edge-count", None),
        ("4\n1 2\n2 3\n1 3", "cycle", 4),
        ("4\n1 2\n3 4", "disconnected", None),
        ("3\n1 2\n2 4", "range", 3),
        ("3\n1 2\n2 x", "malformed", 3),
        ("3\n1 2 3\n2 3", "malformed", 2),
        ("3\n2 1\n2 3", "malformed", 2),
        ("3\n1 2\n2 2", "self-loop", 3),
        ("", "malformed", None),
        ("x\n", "malformed", 1),
        ("0\n", "size", 1),
    ],
)
def test_parse_errors_are_distinct(text, kind, line):
    with pytest.raises(TreeError) as info:
        parse_tree(text)
    assert info.value.kind == kind
    assert info.value.line == line


def test_single_vertex():
    t = parse_tree("1\n")
    assert t.m == 1 and not t.edges
    assert bfs_order(t, 1) == [1]


def test_tree_constructor_validates():
    with pytest.raises(TreeError):
        Tree(3, frozenset({(1, 2)}))
    with pytest.raises(TreeError):
        Tree(4, frozenset({(1, 2), (2, 3), (1, 3)}))


@settings(max_examples=200, deadline=None)
@given(m=st.integers(1, 40), seed=st.integers(0, 2**32))
def test_random_tree_serialize_round_trip(m, seed):
    t = random_tree(m, seed)
    assert t.m == m and len(t.edges) == m - 1
    assert parse_tree(t.serialize()) == t


def test_random_tree_small_cases_and_determinism():
    assert random_tree(1, 3) == Tree(1)
    assert random_tree(2, 3) == path_tree(2)
    assert random_tree(5, 11) == random_tree(5, 11)
    assert len({random_tree(9, s).edges for s in range(20)}) > 1


def test_random_tree_is_uniform_on_small_labeled_set():
    # 4 vertices: 16 labeled trees, 12 paths and 4 stars
    counts = {"path": 0, "star": 0}
    for s in range(4000):
        t = random_tree(4, s)
        counts["star" if max(t.degree(v) for v in t.vertices) == 3 else "path"] += 1
    assert abs(counts["star"] / 4000 - 0.25) < 0.03


def test_prufer_decode_known_sequence():
    assert prufer_decode([4, 4, 4, 5], 6) == Tree(6, frozenset({(1, 4), (2, 4), (3, 4), (4, 5), (5, 6)}))


def test_bfs_examples():
    assert bfs_order(path_tree(3), 2) == [2, 1, 3]
    star = star_tree(4, center=3)
    assert bfs_order(star, 1) == [1, 3, 2, 4]


@settings(max_examples=100, deadline=None)
@given(m=st.integers(1, 30), seed=st.integers(0, 10**6), data=st.data())
def test_bfs_unique_earlier_neighbor(m, seed, data):
    t = random_tree(m, seed)
    root = data.draw(st.integers(1, m))
    order = bfs_order(t, root)
    assert order[0] == root and sorted(order) == list(t.vertices)
    pos = {v: k for k, v in enumerate(order)}
    for k, v in enumerate(order[1:], start=1):
        assert sum(pos[w] < k for w in t.adjacency[v]) == 1


def test_bfs_rejects_bad_root():
    with pytest.raises(ValueError):
        bfs_order(path_tree(3), 4)


def test_canonical_form_examples():
    a = Tree(3, frozenset({(1, 2), (2, 3)}))
    b = Tree(3, frozenset({(2, 1), (1, 3)}))
    assert canonical_form(a) == canonical_form(b)
    assert canonical_form(path_tree(4)) != canonical_form(star_tree(4))


def test_centers():
    assert centers(path_tree(5)) == [3]
    assert centers(path_tree(4)) == [2, 3]
    assert centers(star_tree(6, 4)) == [4]


def test_canonical_form_invariant_under_relabeling():
    t = random_tree(10, 2024)
    key = canonical_form(t)
    rng = random.Random(1)
    for _ in range(1000):
        perm = list(t.vertices)
        rng.shuffle(perm)
        assert canonical_form(t.relabel(dict(zip(t.vertices, perm)))) == key


@pytest.mark.parametrize("m, expected", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6), (7, 11), (8, 23)])
def test_free_tree_counts_match_labeled_oracle(m, expected):
    oracle = labeled_tree_classes(m)
    assert len(oracle) == expected
    got = enumerate_free_trees(m)
    assert len(got) == expected
    assert [canonical_form(t) for t in got] == sorted(oracle)


@pytest.mark.parametrize("m, expected", [(9, 47), (10, 106), (11, 235), (12, 551)])
def test_free_tree_counts_larger(m, expected):
    trees = enumerate_free_trees(m)
    assert len(trees) == expected
    assert len({canonical_form(t) for t in trees}) == expected


def test_free_trees_have_earlier_neighbor_labeling():
    for t in enumerate_free_trees(8):
        assert all(any(w < v for w in t.adjacency[v]) for v in range(2, t.m + 1))


def test_enumeration_cap():
    with pytest.raises(ValueError):
        enumerate_free_trees(13)
    assert len(enumerate_free_trees(13, cap=13)) == 1301
