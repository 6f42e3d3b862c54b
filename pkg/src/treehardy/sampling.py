"""Seeded random elements for property checks.

Prefix entries are uniform in the complex disk of radius 0.9 and tails in
the disk of radius 0.7, which keeps random points well inside the disk.
"""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .ell2sim import TreeOperator
from .hardy import HardySeries
from .kalgebra import KElement
from .tree import FiniteTree

PREFIX_RADIUS = 0.9
TAIL_RADIUS = 0.7
MAX_PREFIX = 4


def uniform_disk(rng: np.random.Generator, radius: float, size=None):
    r = radius * np.sqrt(rng.uniform(size=size))
    return r * np.exp(2j * np.pi * rng.uniform(size=size))


def random_k(rng, max_prefix: int = MAX_PREFIX, tail: bool = True,
             prefix_radius: float = PREFIX_RADIUS, tail_radius: float = TAIL_RADIUS) -> KElement:
    n = int(rng.integers(0, max_prefix + 1))
    t = complex(uniform_disk(rng, tail_radius)) if tail else 0.0
    return KElement(uniform_disk(rng, prefix_radius, n), t)


def random_k2(rng, max_prefix: int = MAX_PREFIX, radius: float = PREFIX_RADIUS) -> KElement:
    return random_k(rng, max_prefix, tail=False, prefix_radius=radius)


def random_invertible_k(rng, max_prefix: int = MAX_PREFIX, lo: float = 0.3, hi: float = 1.5) -> KElement:
    """Entries with modulus in ``[lo, hi]``."""
    n = int(rng.integers(0, max_prefix + 1))
    z = rng.uniform(lo, hi, n + 1) * np.exp(2j * np.pi * rng.uniform(size=n + 1))
    return KElement(z[:-1], z[-1])


def random_series(rng, degree: int, hs: bool = True, max_prefix: int = MAX_PREFIX) -> HardySeries:
    """Series of exactly the given degree (the top coefficient is nonzero)."""
    cs = [random_k(rng, max_prefix, tail=not hs) for _ in range(degree + 1)]
    while cs[-1].norm_inf() == 0:
        cs[-1] = random_k(rng, max_prefix, tail=not hs)
    return HardySeries(cs)


def random_sparse_operator(rng, tree: FiniteTree, density: float = 0.05) -> TreeOperator:
    N = tree.size
    m = sp.random_array((N, N), density=density, rng=rng, dtype=float, format="csr")
    m = m + 1j * sp.random_array((N, N), density=density, rng=rng, dtype=float, format="csr")
    return TreeOperator(tree, m)
