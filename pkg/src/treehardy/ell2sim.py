"""Finite model of l2 on the truncated tree and of operators acting on it.

Boundary convention: an operator reading a node outside the truncation
contributes zero. Every identity of the infinite tree survives exactly on an
explicit depth window; the checks below state their windows instead of using
loose tolerances. The window for the horocycle projections is the important
one: on the level-``L`` subspace the truncated ``sigma_m`` is exact for
``m <= L`` and vanishes for ``m > L``, so the truncated ``omega_L`` equals
``sigma_L`` and absorbs everything past it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np
import scipy.sparse as sp

from .errors import InvalidParameterError, NotStationaryCausalError, ValidityRegionError
from .hardy import HardySeries, h2_norm
from .kalgebra import KElement
from .tree import FiniteTree, NodeId


# vectors and operators

@dataclass(frozen=True, eq=False)
class TreeVector:
    tree: FiniteTree
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).ravel()
        if v.shape != (self.tree.size,):
            raise InvalidParameterError(f"expected {self.tree.size} values, got {v.shape}")
        object.__setattr__(self, "values", v)

    @classmethod
    def zeros(cls, tree: FiniteTree) -> "TreeVector":
        return cls(tree, np.zeros(tree.size, dtype=complex))

    @classmethod
    def basis(cls, tree: FiniteTree, t: NodeId) -> "TreeVector":
        """The indicator ``chi_t``."""
        v = np.zeros(tree.size, dtype=complex)
        v[tree.index(t)] = 1.0
        return cls(tree, v)

    def __getitem__(self, t: NodeId) -> complex:
        return complex(self.values[self.tree.index(t)])

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def inner(self, other: "TreeVector") -> complex:
        """``[self, other] = sum_t self(t) conj(other(t))``."""
        return complex(np.vdot(other.values, self.values))

    def support_depth(self) -> int:
        nz = np.flatnonzero(self.values)
        return int(self.tree.depths[nz].max()) if len(nz) else -1

    def __add__(self, other):
        return TreeVector(self.tree, self.values + other.values)

    def __sub__(self, other):
        return TreeVector(self.tree, self.values - other.values)

    def __mul__(self, lam):
        return TreeVector(self.tree, self.values * complex(lam))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class TreeOperator:
    """Bounded operator on the truncated l2, entry ``(t, u) = [S chi_u, chi_t]``."""

    tree: FiniteTree
    matrix: sp.csr_array = field(repr=False)

    def __post_init__(self):
        m = sp.csr_array(self.matrix, dtype=complex)
        n = self.tree.size
        if m.shape != (n, n):
            raise InvalidParameterError(f"expected a {n}x{n} matrix, got {m.shape}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, tree: FiniteTree) -> "TreeOperator":
        return cls(tree, sp.eye_array(tree.size, dtype=complex, format="csr"))

    @classmethod
    def zero(cls, tree: FiniteTree) -> "TreeOperator":
        return cls(tree, sp.csr_array((tree.size, tree.size), dtype=complex))

    @classmethod
    def diagonal(cls, tree: FiniteTree, values) -> "TreeOperator":
        return cls(tree, sp.diags_array(np.asarray(values, dtype=complex), format="csr"))

    def entry(self, t: NodeId, u: NodeId) -> complex:
        return complex(self.matrix[self.tree.index(t), self.tree.index(u)])

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    @property
    def H(self) -> "TreeOperator":
        return TreeOperator(self.tree, self.matrix.conj().T)

    def __matmul__(self, other):
        if isinstance(other, TreeOperator):
            return TreeOperator(self.tree, self.matrix @ other.matrix)
        if isinstance(other, TreeVector):
            return TreeVector(self.tree, self.matrix @ other.values)
        return NotImplemented

    def __add__(self, other):
        return TreeOperator(self.tree, self.matrix + other.matrix)

    def __sub__(self, other):
        return TreeOperator(self.tree, self.matrix - other.matrix)

    def __neg__(self):
        return TreeOperator(self.tree, -self.matrix)

    def __mul__(self, lam):
        return TreeOperator(self.tree, self.matrix * complex(lam))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = TreeOperator.identity(self.tree)
        for _ in range(n):
            out = out @ self
        return out

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.matrix.data))) if self.matrix.nnz else 0.0

    def norm_estimate(self) -> float:
        """Spectral norm of the truncated matrix (a lower bound for the infinite one)."""
        return float(np.linalg.norm(self.toarray(), 2)) if self.tree.size else 0.0


# primitive shifts

def _check_branch(tree: FiniteTree, i: int):
    if not 1 <= i <= tree.q:
        raise InvalidParameterError(f"branch index must lie in [1, {tree.q}], got {i}")


@lru_cache(maxsize=None)
def _alpha_matrix(tree: FiniteTree, i: int) -> sp.csr_array:
    # (alpha_i f)(t) = f(t alpha_i)
    rows, cols = [], []
    for t in tree:
        c = tree.child(t, i)
        if c is not None:
            rows.append(tree.index(t))
            cols.append(tree.index(c))
    return sp.csr_array((np.ones(len(rows), dtype=complex), (rows, cols)), shape=(tree.size, tree.size))


@lru_cache(maxsize=None)
def _gamma_bar_matrix(tree: FiniteTree) -> sp.csr_array:
    # (gbar f)(t) = q^{-1/2} f(t gbar)
    rows, cols = [], []
    for t in tree:
        p = tree.parent(t)
        if p is not None:
            rows.append(tree.index(t))
            cols.append(tree.index(p))
    vals = np.full(len(rows), tree.q ** -0.5, dtype=complex)
    return sp.csr_array((vals, (rows, cols)), shape=(tree.size, tree.size))


def alpha(tree: FiniteTree, i: int) -> TreeOperator:
    _check_branch(tree, i)
    return TreeOperator(tree, _alpha_matrix(tree, i))


def alpha_bar(tree: FiniteTree, i: int) -> TreeOperator:
    _check_branch(tree, i)
    return TreeOperator(tree, _alpha_matrix(tree, i).T.tocsr())


def gamma_bar(tree: FiniteTree) -> TreeOperator:
    return TreeOperator(tree, _gamma_bar_matrix(tree))


def gamma(tree: FiniteTree) -> TreeOperator:
    return TreeOperator(tree, _gamma_bar_matrix(tree).T.tocsr())


@lru_cache(maxsize=None)
def _sigma_matrix(tree: FiniteTree, m: int) -> sp.csr_array:
    gb = _gamma_bar_matrix(tree)
    g = gb.T.tocsr()
    up = sp.eye_array(tree.size, dtype=complex, format="csr")
    for _ in range(m):
        up = gb @ up
    down = sp.eye_array(tree.size, dtype=complex, format="csr")
    for _ in range(m):
        down = down @ g
    return sp.csr_array(up @ down)


def sigma(tree: FiniteTree, m: int) -> TreeOperator:
    """``sigma_m = gbar^m gamma^m``, the average over the horocycle ball of radius ``2m``."""
    if m < 0:
        raise InvalidParameterError("sigma index must be >= 0")
    return TreeOperator(tree, _sigma_matrix(tree, min(m, tree.depth + 1)))


def omega(tree: FiniteTree, m: int) -> TreeOperator:
    """``omega_m = sigma_m - sigma_{m+1}``; exact on levels ``>= m + 1``."""
    return sigma(tree, m) - sigma(tree, m + 1)


def apply_alpha(i: int, f: TreeVector) -> TreeVector:
    return alpha(f.tree, i) @ f


def apply_alpha_bar(i: int, f: TreeVector) -> TreeVector:
    return alpha_bar(f.tree, i) @ f


def apply_gamma_bar(f: TreeVector) -> TreeVector:
    return gamma_bar(f.tree) @ f


def apply_gamma(f: TreeVector) -> TreeVector:
    return gamma(f.tree) @ f


def apply_sigma(m: int, f: TreeVector) -> TreeVector:
    return sigma(f.tree, m) @ f


def apply_omega(m: int, f: TreeVector) -> TreeVector:
    return omega(f.tree, m) @ f


def depth_mask(tree: FiniteTree, lo: int = 0, hi: Optional[int] = None) -> np.ndarray:
    hi = tree.depth if hi is None else hi
    return (tree.depths >= lo) & (tree.depths <= hi)


# Cuntz relations

@dataclass(frozen=True)
class CuntzReport:
    """Largest residual of each relation over the test vectors.

    ``sum_bar_alpha_alpha`` is measured on outputs of depth >= 1: the base
    node has no parent in the truncation, so ``bar alpha_i`` cannot return
    mass to it.
    """

    alpha_alpha_bar: float
    sum_bar_alpha_alpha: float
    gamma_bar_split: float
    gamma_gamma_bar: float
    gamma_bar_isometry: float

    @property
    def max_residual(self) -> float:
        return max(self.alpha_alpha_bar, self.sum_bar_alpha_alpha, self.gamma_bar_split,
                   self.gamma_gamma_bar, self.gamma_bar_isometry)


def cuntz_residuals(tree: FiniteTree, interior_depth: Optional[int] = None, vectors=None) -> CuntzReport:
    """Residuals of the Cuntz relations and of the upward-shift splitting.

    Test vectors default to every basis vector of depth ``<= interior_depth``;
    ``vectors`` may instead be an ``(N, k)`` array of columns.
    """
    D = tree.depth
    interior_depth = D - 1 if interior_depth is None else interior_depth
    if interior_depth > D - 1:
        raise ValidityRegionError(f"interior depth {interior_depth} exceeds depth - 1 = {D - 1}")
    if vectors is None:
        cols = np.flatnonzero(depth_mask(tree, 0, interior_depth))
        X = np.zeros((tree.size, len(cols)), dtype=complex)
        X[cols, np.arange(len(cols))] = 1.0
    else:
        X = np.asarray(vectors, dtype=complex).reshape(tree.size, -1)
        if np.any(X[~depth_mask(tree, 0, interior_depth)] != 0):
            raise ValidityRegionError("test vectors must be supported at depth <= interior_depth")
    if X.shape[1] == 0:
        return CuntzReport(0.0, 0.0, 0.0, 0.0, 0.0)

    def colmax(M) -> float:
        return float(np.max(np.linalg.norm(M, axis=0))) if M.size else 0.0

    A = [alpha(tree, i).matrix for i in range(1, tree.q + 1)]
    Ab = [alpha_bar(tree, i).matrix for i in range(1, tree.q + 1)]
    r1 = 0.0
    for i in range(tree.q):
        for j in range(tree.q):
            R = A[i] @ (Ab[j] @ X) - (X if i == j else 0)
            r1 = max(r1, colmax(R))
    below_root = depth_mask(tree, 1)
    S = sum(Ab[i] @ (A[i] @ X) for i in range(tree.q)) - X
    r2 = colmax(S[below_root])
    gb = gamma_bar(tree).matrix
    r3 = colmax(gb @ X - tree.q ** -0.5 * sum(Ab[i] @ X for i in range(tree.q)))
    r4 = colmax(gamma(tree).matrix @ (gb @ X) - X)
    r5 = float(np.max(np.abs(np.linalg.norm(gb @ X, axis=0) - np.linalg.norm(X, axis=0))))
    return CuntzReport(r1, r2, r3, r4, r5)


# decomposition into shift words with diagonal coefficients

WordPair = tuple[tuple[int, ...], tuple[int, ...]]


@lru_cache(maxsize=None)
def meet_depths(tree: FiniteTree) -> np.ndarray:
    """``depth(t ^ u)`` for every pair of nodes, in iteration order."""
    N, D = tree.size, tree.depth
    W = np.zeros((N, max(D, 1)), dtype=int)
    for k, t in enumerate(tree):
        W[k, : t.depth] = t.word
    same = W[:, None, :] == W[None, :, :]
    same &= W[:, None, :] != 0
    return np.cumprod(same, axis=2).sum(axis=2)


def word_pair(t: NodeId, u: NodeId, meet_depth: int) -> WordPair:
    """Indices ``(i_1..i_n ; j_1..j_m)`` with ``t = (t^u) alpha_{i_n}..alpha_{i_1}``."""
    return tuple(reversed(t.word[meet_depth:])), tuple(reversed(u.word[meet_depth:]))


@dataclass(frozen=True, eq=False)
class SeriesCoefficients:
    """Diagonal coefficients of the shift-word expansion, keyed by word pair.

    ``blocks[(i, j)][u]`` is the diagonal entry at ``u``; it is nonzero only
    for nodes ``u`` whose word ends with ``j_m .. j_1``.
    """

    tree: FiniteTree
    blocks: dict

    def diagonal(self, key: WordPair) -> np.ndarray:
        d = np.zeros(self.tree.size, dtype=complex)
        for u, v in self.blocks.get(key, {}).items():
            d[self.tree.index(u)] = v
        return d

    def keys(self):
        return self.blocks.keys()


def decompose(S: TreeOperator) -> SeriesCoefficients:
    tree = S.tree
    md = meet_depths(tree)
    coo = S.matrix.tocoo()
    blocks: dict = {}
    for r, c, v in sorted(zip(coo.row, coo.col, coo.data)):
        if v == 0:
            continue
        t, u = tree.nodes[r], tree.nodes[c]
        key = word_pair(t, u, int(md[r, c]))
        blocks.setdefault(key, {})[u] = complex(v)
    return SeriesCoefficients(tree, blocks)


def _validate_key(tree: FiniteTree, key: WordPair):
    i, j = key
    for b in (*i, *j):
        _check_branch(tree, b)
    if i and j and i[-1] == j[-1]:
        raise InvalidParameterError(f"word pair {key} violates j_m != i_n")


def reconstruct(coeffs: SeriesCoefficients) -> TreeOperator:
    """Entrywise inverse of :func:`decompose`."""
    tree = coeffs.tree
    rows, cols, vals = [], [], []
    for key, diag in coeffs.blocks.items():
        _validate_key(tree, key)
        i, j = key
        m = len(j)
        for u, v in diag.items():
            if u.depth < m or (m and tuple(reversed(u.word[-m:])) != j):
                raise InvalidParameterError(f"coefficient {key} has support outside its cone at {u!r}")
            t = NodeId(u.word[: u.depth - m] + tuple(reversed(i)))
            if t in tree:
                rows.append(tree.index(t))
                cols.append(tree.index(u))
                vals.append(v)
    m = sp.coo_array((np.asarray(vals, dtype=complex), (rows, cols)), shape=(tree.size, tree.size))
    return TreeOperator(tree, m.tocsr())


@lru_cache(maxsize=4096)
def _shift_word_matrix(tree: FiniteTree, i: tuple[int, ...], j: tuple[int, ...]) -> sp.csr_array:
    out = sp.identity(tree.size, dtype=float, format="csr")
    for b in i:
        out = out @ _alpha_matrix(tree, b).T
    for b in reversed(j):
        out = out @ _alpha_matrix(tree, b)
    return sp.csr_array(out)


def shift_word(tree: FiniteTree, i: tuple[int, ...], j: tuple[int, ...]) -> TreeOperator:
    """``bar alpha_{i_1} .. bar alpha_{i_n} alpha_{j_m} .. alpha_{j_1}``."""
    for b in (*i, *j):
        _check_branch(tree, b)
    return TreeOperator(tree, _shift_word_matrix(tree, tuple(i), tuple(j)))


def reconstruct_series_form(coeffs: SeriesCoefficients) -> TreeOperator:
    """Sum of shift words times diagonal coefficients (operator-product route)."""
    tree = coeffs.tree
    out = sp.csr_array((tree.size, tree.size), dtype=complex)
    for key in coeffs.keys():
        _validate_key(tree, key)
        out = out + _shift_word_matrix(tree, *key) @ sp.diags_array(coeffs.diagonal(key))
    return TreeOperator(tree, out)


# causality and stationarity

class CausalityReport(NamedTuple):
    causal: bool
    witness: Optional[dict]

    def __bool__(self):
        return self.causal


def is_causal(S: TreeOperator, tol: float = 1e-12) -> CausalityReport:
    """Causal iff no coefficient with ``n < m`` survives (input must precede output)."""
    tree = S.tree
    md = meet_depths(tree)
    coo = S.matrix.tocoo()
    for r, c, v in sorted(zip(coo.row, coo.col, coo.data)):
        if abs(v) <= tol:
            continue
        t, u = tree.nodes[r], tree.nodes[c]
        w = int(md[r, c])
        n, m = t.depth - w, u.depth - w
        if n < m:
            return CausalityReport(False, {"t": list(t.word), "u": list(u.word), "n": n, "m": m,
                                           "value": [float(v.real), float(v.imag)]})
    return CausalityReport(True, None)


@dataclass(frozen=True)
class StationarityReport:
    spreads: dict
    means: dict
    stationary: bool


def stationarity_classes(S: TreeOperator, tol: float = 1e-12, min_meet_depth: int = 1) -> StationarityReport:
    """Group entries by ``(dist(t^u, t), dist(t^u, u))`` and measure the spread.

    Pairs whose meet sits above ``min_meet_depth`` are skipped. With the
    default 1 only the base node is excluded; operators that look ``r``
    levels upwards (such as ``gbar^n gamma^m`` with ``min(n, m) = r``) need
    ``min_meet_depth = r`` for every kept entry to be exact.
    """
    tree = S.tree
    md = meet_depths(tree)
    dep = tree.depths
    n_off = dep[:, None] - md
    m_off = dep[None, :] - md
    keep = md >= min_meet_depth
    A = S.toarray()
    spreads, means = {}, {}
    for n, m in sorted(set(zip(n_off[keep].tolist(), m_off[keep].tolist()))):
        sel = keep & (n_off == n) & (m_off == m)
        vals = A[sel]
        mu = complex(vals.mean())
        means[(n, m)] = mu
        spreads[(n, m)] = float(np.max(np.abs(vals - mu)))
    stationary = all(s < tol for s in spreads.values())
    return StationarityReport(spreads, means, stationary)


def gamma_word(tree: FiniteTree, n: int, m: int) -> TreeOperator:
    """``gbar^n gamma^m``."""
    return (gamma_bar(tree) ** n) @ (gamma(tree) ** m)


# bridge between series and explicit operators

def constant_operator(tree: FiniteTree, c: KElement) -> TreeOperator:
    """``sum_n c_n omega_n`` written as ``sum_{n<P} c_n omega_n + c_inf sigma_P``."""
    c = KElement.coerce(c)
    P = len(c.prefix)
    out = sigma(tree, P) * c.tail
    for n, cn in enumerate(c.prefix):
        if cn != 0:
            out = out + omega(tree, n) * cn
    return out


def series_to_operator(S: HardySeries, tree: FiniteTree) -> TreeOperator:
    gb = gamma_bar(tree)
    out = TreeOperator.zero(tree)
    shift = TreeOperator.identity(tree)
    for k, s in enumerate(S.coeffs):
        if k > tree.depth:
            break
        out = out + shift @ constant_operator(tree, s)
        shift = gb @ shift
    return out


def _level_block(M: sp.csr_array, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    return M[rows][:, cols].toarray()


def operator_to_series(S: TreeOperator, K: int, tol: float = 1e-10) -> HardySeries:
    """Recover ``s_k`` from ``omega_n s_k = gamma^k omega_{n+k} S omega_n``.

    Coefficient ``k`` is visible on input levels ``L <= depth - k`` and its
    entry ``n`` on levels ``n <= L``; the recovered element carries entries
    ``0 .. depth-k-1`` as prefix and entry ``depth-k`` as tail. Raises
    :class:`NotStationaryCausalError` if a block is not scalar, if ``S`` is
    not causal, or if the recovered series does not reproduce ``S``.
    """
    tree = S.tree
    D = tree.depth
    causal = is_causal(S, tol=tol)
    if not causal:
        raise NotStationaryCausalError(f"operator is not causal: {causal.witness}")
    g = gamma(tree)
    coeffs = []
    for k in range(min(K, D) + 1):
        gk = (g ** k).matrix
        vals = []
        for n in range(D - k + 1):
            B = gk @ omega(tree, n + k).matrix @ S.matrix @ omega(tree, n).matrix
            Wn = omega(tree, n).matrix
            lams = []
            for L in range(n, D - k + 1):
                idx = tree.level_indices(L)
                P = _level_block(Wn, idx, idx)
                blk = _level_block(B, idx, idx)
                lam = np.trace(blk) / np.trace(P)
                spread = float(np.max(np.abs(blk - lam * P)))
                if spread > tol:
                    raise NotStationaryCausalError(
                        f"block (k={k}, n={n}) on level {L} is not scalar: spread {spread:.3e}")
                lams.append(lam)
            if max(abs(x - lams[0]) for x in lams) > tol:
                raise NotStationaryCausalError(f"block (k={k}, n={n}) differs between levels")
            vals.append(complex(lams[0]))
        coeffs.append(KElement(vals[:-1], vals[-1]))
    H = HardySeries(coeffs)
    resid = (series_to_operator(H, tree) - S).max_abs()
    if resid > tol:
        raise NotStationaryCausalError(f"series of degree <= {K} does not reproduce the operator: residual {resid:.3e}")
    return H


# norm identities

@dataclass(frozen=True)
class NormIdentityReport:
    coeff_energy: float
    block_energy: float
    omega_norm2: float
    omega_norm2_expected: float
    weighted_sum: Optional[float]
    hs_side: Optional[float]

    @property
    def residuals(self) -> dict:
        out = {
            "coefficient_energy": abs(self.coeff_energy - self.block_energy),
            "omega_norm": abs(self.omega_norm2 - self.omega_norm2_expected),
        }
        if self.weighted_sum is not None:
            out["hs_norm"] = abs(self.weighted_sum - self.hs_side)
        return out

    def holds(self, tol: float = 1e-10) -> bool:
        return all(r <= tol for r in self.residuals.values())


def weighted_block_sum(S_op: TreeOperator, t: NodeId) -> float:
    """``sum_k q^k ||S omega_k chi_t||^2`` over ``k < depth(t)``."""
    tree = S_op.tree
    chi = TreeVector.basis(tree, t)
    return float(sum(tree.q ** k * (S_op @ (omega(tree, k) @ chi)).norm() ** 2 for k in range(t.depth)))


def norm_identities(S: HardySeries, tree: FiniteTree, t: NodeId, n: int) -> NormIdentityReport:
    """Check the coefficient-energy identity, ``||omega_n chi_t||^2`` and the HS norm formula.

    Needs ``depth(t) >= n + 1`` and ``depth(t) + degree(S) <= depth``. The
    HS formula is evaluated only when every coefficient of ``S`` vanishes
    from index ``depth(t)`` on; otherwise its fields are ``None``.
    """
    q = tree.q
    L = t.depth
    if L < n + 1:
        raise ValidityRegionError(f"node depth {L} must be at least n + 1 = {n + 1}")
    if L + S.degree > tree.depth:
        raise ValidityRegionError(f"node depth {L} plus series degree {S.degree} exceeds tree depth {tree.depth}")
    S_op = series_to_operator(S, tree)
    chi = TreeVector.basis(tree, t)
    wchi = omega(tree, n) @ chi
    energy = sum(abs(s[n]) ** 2 for s in S.coeffs)
    block = q ** (n + 1) / (q - 1) * (S_op @ wchi).norm() ** 2
    wn2 = wchi.norm() ** 2
    expected = q ** -n - q ** -(n + 1)
    ws = hs = None
    if S.hs_flag and all(len(s.prefix) <= L for s in S.coeffs):
        ws = weighted_block_sum(S_op, t)
        hs = (1 - 1 / q) * h2_norm(S) ** 2
    return NormIdentityReport(float(energy), float(block), float(wn2), float(expected), ws, hs)
