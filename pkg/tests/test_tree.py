from collections import deque
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treehardy.errors import InvalidParameterError
from treehardy.tree import ROOT, NodeId, build_tree, dist, leq, meet, meet_offsets, same_horocycle


def bfs_distances(tree, src):
    """Graph distances by breadth-first search over parent/child edges."""
    out = {src: 0}
    todo = deque([src])
    while todo:
        t = todo.popleft()
        nbrs = tree.children(t) + ([tree.parent(t)] if t.depth else [])
        for u in nbrs:
            if u not in out:
                out[u] = out[t] + 1
                todo.append(u)
    return out


def test_sizes():
    assert build_tree(2, 3).size == 15
    assert build_tree(3, 2).size == 13
    assert len(build_tree(2, 0)) == 1


def test_order_parent_before_subtree():
    tree = build_tree(2, 2)
    words = [t.word for t in tree]
    assert words == [(), (1,), (1, 1), (1, 2), (2,), (2, 1), (2, 2)]
    assert [tree.index(t) for t in tree] == list(range(tree.size))


@pytest.mark.parametrize("q,depth", [(0, 2), (1, 2), (2, -1), (2.5, 2)])
def test_invalid_parameters(q, depth):
    with pytest.raises(InvalidParameterError):
        build_tree(q, depth)


def test_node_validation():
    tree = build_tree(2, 2)
    assert tree.node([2, 1]) == NodeId((2, 1))
    with pytest.raises(InvalidParameterError):
        tree.node([3])
    with pytest.raises(InvalidParameterError):
        tree.node([1, 1, 1])
    with pytest.raises(InvalidParameterError):
        tree.index(NodeId((1, 1, 1)))


def test_parent_child():
    tree = build_tree(3, 2)
    t = tree.node([2])
    assert tree.parent(t) == ROOT
    assert tree.parent(ROOT) is None
    assert tree.child(t, 3) == NodeId((2, 3))
    assert tree.child(NodeId((2, 3)), 1) is None
    assert tree.children(t) == [NodeId((2, i)) for i in (1, 2, 3)]
    with pytest.raises(InvalidParameterError):
        tree.child(t, 4)


def test_levels():
    tree = build_tree(3, 3)
    for n in range(4):
        assert len(tree.level(n)) == 3 ** n
        assert list(tree.level_indices(n)) == [tree.index(t) for t in tree.level(n)]


def test_meet_examples():
    assert meet(NodeId((1, 2, 1)), NodeId((1, 2, 2, 1))) == NodeId((1, 2))
    assert meet(NodeId((1,)), NodeId((2,))) == ROOT
    assert meet_offsets(NodeId((1, 2, 1)), NodeId((1,))) == (2, 0)
    assert dist(NodeId((1, 1)), NodeId((2,))) == 3


@pytest.mark.parametrize("q,depth", [(2, 4), (3, 3), (4, 2)])
def test_dist_matches_bfs_exhaustive(q, depth):
    tree = build_tree(q, depth)
    for s in tree:
        ref = bfs_distances(tree, s)
        assert all(dist(s, t) == ref[t] for t in tree)


@pytest.mark.parametrize("q,depth", [(2, 4), (3, 3)])
def test_order_exhaustive(q, depth):
    tree = build_tree(q, depth)
    for s, t in product(tree, repeat=2):
        assert leq(s, t) or leq(t, s)
        assert (leq(s, t) and leq(t, s)) == same_horocycle(s, t)
        # inside the truncation horocycles are depth levels
        assert same_horocycle(s, t) == (s.depth == t.depth)
        # a parent strictly precedes its children
        if s.depth:
            p = NodeId(s.word[:-1])
            assert leq(p, s) and not leq(s, p)


words = st.lists(st.integers(1, 3), max_size=6).map(lambda w: NodeId(tuple(w)))


@given(words, words, words)
def test_metric_axioms(s, t, u):
    assert dist(s, t) == dist(t, s)
    assert (dist(s, t) == 0) == (s == t)
    assert dist(s, u) <= dist(s, t) + dist(t, u)


@given(words, words, words)
def test_order_transitive(s, t, u):
    if leq(s, t) and leq(t, u):
        assert leq(s, u)


@given(words, words)
def test_meet_is_common_ancestor(s, t):
    w = meet(s, t)
    assert s.word[: w.depth] == w.word == t.word[: w.depth]
    n, m = meet_offsets(s, t)
    assert n + m == dist(s, t)
