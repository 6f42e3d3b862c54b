"""Depth-truncated q-homogeneous tree.

A node is addressed by the word of branch indices read from the base node
downwards, so ``(2, 1)`` is the first child of the second child of the base
node. The parent of a node is its upward neighbour (the primitive upward
shift), children are the ``q`` downward neighbours. Horocycles of the
infinite tree coincide with word lengths inside the truncation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import InvalidParameterError


@dataclass(frozen=True, order=True)
class NodeId:
    word: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(i) for i in self.word))

    @property
    def depth(self) -> int:
        return len(self.word)

    def __repr__(self):
        return f"NodeId({list(self.word)})"


ROOT = NodeId(())


@dataclass(frozen=True)
class FiniteTree:
    """The ball of radius ``depth`` below a base node of the q-homogeneous tree.

    Nodes are enumerated lexicographically by word (a parent precedes its
    subtree), which fixes the row/column order of every operator matrix.
    """

    q: int
    depth: int
    _nodes: tuple[NodeId, ...] = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.q) != self.q or self.q < 2:
            raise InvalidParameterError(f"branching order q must be an integer >= 2, got {self.q!r}")
        if int(self.depth) != self.depth or self.depth < 0:
            raise InvalidParameterError(f"depth must be an integer >= 0, got {self.depth!r}")
        words = [w for d in range(self.depth + 1) for w in product(range(1, self.q + 1), repeat=d)]
        nodes = tuple(NodeId(w) for w in sorted(words))
        object.__setattr__(self, "_nodes", nodes)
        object.__setattr__(self, "_index", {t: k for k, t in enumerate(nodes)})

    def __hash__(self):
        return hash((self.q, self.depth))

    @property
    def nodes(self) -> tuple[NodeId, ...]:
        return self._nodes

    @property
    def size(self) -> int:
        return len(self._nodes)

    def __len__(self):
        return len(self._nodes)

    def __iter__(self) -> Iterator[NodeId]:
        return iter(self._nodes)

    def __contains__(self, t) -> bool:
        return t in self._index

    def index(self, t: NodeId) -> int:
        try:
            return self._index[t]
        except KeyError:
            raise InvalidParameterError(f"{t!r} is not a node of {self!r}") from None

    def node(self, word: Sequence[int]) -> NodeId:
        """Validate ``word`` and return the corresponding node."""
        t = NodeId(tuple(word))
        if t.depth > self.depth:
            raise InvalidParameterError(f"word {list(word)} is longer than the tree depth {self.depth}")
        for i in t.word:
            self._check_branch(i)
        return t

    def level(self, n: int) -> list[NodeId]:
        """Nodes on horocycle ``n`` (word length ``n``), in iteration order."""
        return [t for t in self._nodes if t.depth == n]

    @cached_property
    def depths(self) -> np.ndarray:
        return np.array([t.depth for t in self._nodes])

    def level_indices(self, n: int) -> np.ndarray:
        return np.flatnonzero(self.depths == n)

    def _check_branch(self, i: int):
        if not 1 <= i <= self.q:
            raise InvalidParameterError(f"branch index must lie in [1, {self.q}], got {i}")

    def parent(self, t: NodeId) -> Optional[NodeId]:
        return NodeId(t.word[:-1]) if t.word else None

    def child(self, t: NodeId, i: int) -> Optional[NodeId]:
        self._check_branch(i)
        if t.depth >= self.depth:
            return None
        return NodeId(t.word + (i,))

    def children(self, t: NodeId) -> list[NodeId]:
        if t.depth >= self.depth:
            return []
        return [NodeId(t.word + (i,)) for i in range(1, self.q + 1)]


def build_tree(q: int, depth: int) -> FiniteTree:
    return FiniteTree(q, depth)


def meet(t: NodeId, u: NodeId) -> NodeId:
    """First common node of the upward paths from ``t`` and ``u``."""
    k = 0
    for a, b in zip(t.word, u.word):
        if a != b:
            break
        k += 1
    return NodeId(t.word[:k])


def dist(t: NodeId, u: NodeId) -> int:
    w = meet(t, u)
    return (t.depth - w.depth) + (u.depth - w.depth)


def meet_offsets(t: NodeId, u: NodeId) -> tuple[int, int]:
    """``(dist(t^u, t), dist(t^u, u))``."""
    w = meet(t, u)
    return t.depth - w.depth, u.depth - w.depth


def leq(s: NodeId, t: NodeId) -> bool:
    n, m = meet_offsets(s, t)
    return n <= m


def same_horocycle(s: NodeId, t: NodeId) -> bool:
    n, m = meet_offsets(s, t)
    return n == m
