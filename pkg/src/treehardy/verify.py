"""Invariant suites behind ``treehardy verify``.

Each check draws its random instances from one seeded generator and returns
the largest residual it saw; a record passes when that residual is within
the check's threshold. Checks adapt their windows to the configured depth.
"""
from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass
from typing import Callable, Optional

import numpy as np

from . import ell2sim as es
from .errors import InvalidParameterError, RecursionBreakdownError, TreeHardyError
from .hardy import (HardySeries, bezout_div, blaschke, h2_inner, h2_norm, kernel,
                    linear_factor, max_coeff_diff, point_eval, series_mul)
from .kalgebra import ONE, KElement
from .sampling import random_invertible_k, random_k, random_k2, random_series, random_sparse_operator
from .schur import InterpolationProblem, gram, interpolate, is_psd
from .tree import FiniteTree, build_tree


@dataclass(frozen=True)
class RunConfig:
    q: int = 2
    depth: int = 5
    degree: int = 3
    tol: float = 1e-12
    tol_eig: float = 1e-8
    inv_threshold: float = 1e-9
    seed: int = 0
    trials: int = 5
    out: Optional[str] = None

    def __post_init__(self):
        if self.q < 2:
            raise InvalidParameterError("q must be >= 2")
        if self.depth < 1:
            raise InvalidParameterError("depth must be >= 1")
        if self.degree < 0:
            raise InvalidParameterError("degree must be >= 0")
        if self.trials < 1:
            raise InvalidParameterError("trials must be >= 1")
        for name in ("tol", "tol_eig", "inv_threshold"):
            if not getattr(self, name) > 0:
                raise InvalidParameterError(f"{name} must be positive")

    @property
    def tree(self) -> FiniteTree:
        return build_tree(self.q, self.depth)


@dataclass(frozen=True)
class Check:
    name: str
    identity: str
    threshold: float
    run: Callable[[RunConfig, np.random.Generator], float]


CHECKS: list[Check] = []


def check(name: str, identity: str, threshold: float):
    def deco(fn):
        CHECKS.append(Check(name, identity, threshold, fn))
        return fn
    return deco


def _vec(tree, X):
    return es.TreeVector(tree, X)


def _level_vector(rng, tree: FiniteTree, L: int) -> es.TreeVector:
    v = np.zeros(tree.size, dtype=complex)
    idx = tree.level_indices(L)
    v[idx] = rng.standard_normal(len(idx)) + 1j * rng.standard_normal(len(idx))
    return es.TreeVector(tree, v)


# tree and l2 model

@check("tree.metric", "distance is a metric on the nodes", 0.0)
def _tree_metric(cfg, rng):
    from .tree import dist, leq, same_horocycle
    tree = build_tree(cfg.q, min(cfg.depth, 3))
    bad = 0
    nodes = tree.nodes
    for s in nodes:
        for t in nodes:
            if dist(s, t) != dist(t, s) or (leq(s, t) and leq(t, s)) != same_horocycle(s, t):
                bad += 1
            for u in nodes[:: max(1, len(nodes) // 7)]:
                if dist(s, u) > dist(s, t) + dist(t, u):
                    bad += 1
    return float(bad)


@check("ell2.cuntz", "Cuntz relations and upward-shift splitting", 1e-12)
def _cuntz(cfg, rng):
    return es.cuntz_residuals(cfg.tree).max_residual


@check("ell2.omega", "orthogonal decomposition by horocycle projections", 1e-12)
def _omega(cfg, rng):
    tree = cfg.tree
    D = tree.depth
    worst = 0.0
    gb = es.gamma_bar(tree)
    for L in range(1, D + 1):
        f = _level_vector(rng, tree, L)
        for m in range(L):
            wm = es.omega(tree, m)
            for n in range(L):
                lhs = wm @ (es.omega(tree, n) @ f)
                rhs = es.omega(tree, n) @ f if m == n else es.TreeVector.zeros(tree)
                worst = max(worst, (lhs - rhs).norm())
            g = _level_vector(rng, tree, L)
            worst = max(worst, abs((wm @ f).inner(g) - f.inner(wm @ g)))
            if L < D:
                worst = max(worst, (gb @ (wm @ f) - es.omega(tree, m + 1) @ (gb @ f)).norm())
                worst = max(worst, abs((gb @ (wm @ f)).norm() - (wm @ f).norm()))
        for n in range(L):
            acc = sum((es.omega(tree, m) @ f for m in range(n + 1)), es.TreeVector.zeros(tree))
            worst = max(worst, (acc - (f - es.sigma(tree, n + 1) @ f)).norm())
    return worst


@check("ell2.decomposition", "shift-word expansion with diagonal coefficients", 1e-14)
def _decomp(cfg, rng):
    tree = build_tree(cfg.q, min(cfg.depth, 4 if cfg.q == 2 else 3))
    worst = 0.0
    for _ in range(cfg.trials):
        S = random_sparse_operator(rng, tree)
        c = es.decompose(S)
        worst = max(worst, (es.reconstruct(c) - S).max_abs(), (es.reconstruct_series_form(c) - S).max_abs())
    return worst


def _series_window(cfg) -> tuple[int, int]:
    """Degree and input level used by the series/operator checks."""
    K = min(cfg.degree, cfg.depth - 1)
    return K, cfg.depth - K


@check("ell2.series_roundtrip", "block law and coefficient recovery", 1e-12)
def _series_roundtrip(cfg, rng):
    tree = cfg.tree
    K, _ = _series_window(cfg)
    worst = 0.0
    for _ in range(cfg.trials):
        S = random_series(rng, K, hs=bool(rng.integers(0, 2)))
        op = es.series_to_operator(S, tree)
        R = es.operator_to_series(op, K)
        for k in range(K + 1):
            n = tree.depth - k + 1
            worst = max(worst, float(np.max(np.abs(S[k].values(n) - R[k].values(n)))))
        worst = max(worst, _block_law_residual(S, op))
    return worst


def _block_law_residual(S: HardySeries, op: es.TreeOperator) -> float:
    tree = op.tree
    D = tree.depth
    gb = es.gamma_bar(tree)
    worst = 0.0
    for L in range(D + 1):
        cols = tree.level_indices(L)
        for n in range(L + 1):
            wn = es.omega(tree, n)
            for m in range(D + 1):
                lhs = (es.omega(tree, m) @ op @ wn).matrix[:, cols].toarray()
                k = m - n
                if k < 0 or L + k > D:
                    rhs = np.zeros_like(lhs) if k < 0 else lhs
                else:
                    rhs = ((gb ** k) @ wn).matrix[:, cols].toarray() * S[k][n]
                worst = max(worst, float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0)
    return worst


@check("ell2.norm_identities", "coefficient energy, projection norms, HS norm formula", 1e-10)
def _norms(cfg, rng):
    tree = cfg.tree
    K, L = _series_window(cfg)
    t = tree.level(L)[int(rng.integers(0, cfg.q ** L))]
    worst = 0.0
    for _ in range(cfg.trials):
        S = random_series(rng, K, hs=True, max_prefix=L)
        for n in range(L):
            rep = es.norm_identities(S, tree, t, n)
            if rep.weighted_sum is None:
                return np.inf
            worst = max(worst, *rep.residuals.values())
    return worst


@check("ell2.containment", "HS series act with operator norm at most their HS norm", 1e-10)
def _containment(cfg, rng):
    tree = cfg.tree
    K, _ = _series_window(cfg)
    worst = 0.0
    for _ in range(cfg.trials):
        S = random_series(rng, K, hs=True)
        worst = max(worst, es.series_to_operator(S, tree).norm_estimate() - h2_norm(S))
    return max(worst, 0.0)


@check("ell2.causal_stationary", "gbar^n gamma^m: causal iff n >= m, always stationary", 0.0)
def _causal(cfg, rng):
    tree = cfg.tree
    errors = 0
    top = min(3, tree.depth)
    for n in range(top + 1):
        for m in range(top + 1):
            op = es.gamma_word(tree, n, m)
            errors += bool(es.is_causal(op)) != (n >= m)
            errors += not es.stationarity_classes(op, min_meet_depth=max(1, min(n, m))).stationary
    d = np.ones(tree.size)
    d[tree.index(tree.node([1]))] = 2.0
    errors += es.stationarity_classes(es.TreeOperator.diagonal(tree, d)).stationary
    return float(errors)


# constants algebra

@check("kalgebra.identities", "shift homomorphism, norm monotonicity, bracket recursion", 1e-12)
def _kalg(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        a, b = random_k(rng), random_k(rng)
        worst = max(worst, ((a * b).shift(1) - a.shift(1) * b.shift(1)).norm_inf())
        worst = max(worst, a.shift(1).norm_inf() - a.norm_inf())
        for n in range(33):
            worst = max(worst, (a.bracket(n + 1) - a.bracket(n) * a.shift(n)).norm_inf())
    return worst


@check("kalgebra.rho", "closed-form spectral radius vs window estimator", 0.05)
def _rho(cfg, rng):
    return max(abs(c.rho() - c.rho_estimate(64)) for c in (random_k(rng) for _ in range(cfg.trials)))


# point evaluation

@check("hardy.point_eval", "linearity, product, shift and conjugation rules", 1e-12)
def _ppe(cfg, rng):
    K = cfg.degree
    worst = 0.0
    for _ in range(cfg.trials):
        F, G = random_series(rng, K, hs=False), random_series(rng, K, hs=False)
        c = random_k(rng)
        p, qq = random_k(rng), random_k(rng)
        lhs = point_eval(F * p + G * qq, c)
        worst = max(worst, (lhs - (point_eval(F, c) * p + point_eval(G, c) * qq)).norm_inf())
        worst = max(worst, (point_eval(F * G, c) - point_eval(HardySeries.constant(point_eval(F, c)) * G, c)).norm_inf())
        n = int(rng.integers(0, 4))
        worst = max(worst, (point_eval(HardySeries.gamma_bar(n) * F, c) - c.bracket(n) * point_eval(F, c.shift(n))).norm_inf())
        k = random_invertible_k(rng)
        mod = k.shift(1) * k.inverse() * c
        worst = max(worst, (point_eval(k * F, c) - point_eval(F, mod) * k).norm_inf())
    return worst


@check("hardy.bezout", "division by gbar - c", 1e-12)
def _bezout(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        F = random_series(rng, cfg.degree + 1)
        c = random_k(rng)
        G = bezout_div(F, c)
        lhs = F - HardySeries.constant(point_eval(F, c))
        worst = max(worst, max_coeff_diff(lhs, series_mul(linear_factor(c), G)))
        worst = max(worst, point_eval(lhs, c).norm_inf())
    return worst


@check("hardy.norm_bound", "HS norm of a product is at most the product of HS norms", 1e-10)
def _multin(cfg, rng):
    worst = -np.inf
    for _ in range(cfg.trials):
        S, F = random_series(rng, cfg.degree), random_series(rng, cfg.degree)
        worst = max(worst, h2_norm(series_mul(S, F)) - h2_norm(S) * h2_norm(F))
    return max(worst, 0.0)


@check("hardy.coefficient_recovery", "s_0 = S(0) and omega_k s_1 = S(omega_k) - S(0)", 1e-12)
def _recovery(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        S = random_series(rng, cfg.degree, hs=False)
        s0 = point_eval(S, 0.0)
        worst = max(worst, (s0 - S[0]).norm_inf())
        for k in range(cfg.degree + 1):
            w = KElement.indicator(k)
            worst = max(worst, (w * S[1] - (point_eval(S, w) - s0)).norm_inf())
    return worst


@check("hardy.reproducing_kernel", "Cauchy-type reproducing identity", 1e-10)
def _repker(cfg, rng):
    worst = 0.0
    for _ in range(cfg.trials):
        F = random_series(rng, cfg.degree)
        c, k = random_k(rng), random_k2(rng)
        Kc = kernel(c, cfg.tol)
        worst = max(worst, abs(point_eval(F, c).k2_inner(k) - h2_inner(F, Kc * k)))
    return worst


@check("hardy.blaschke", "Blaschke factor: classical reduction, K_a(a) recursion, isometry", 1e-8)
def _blaschke(cfg, rng):
    worst = 0.0
    B = blaschke(KElement.const(0.5), cfg.tol).series
    for k, v in enumerate([-0.5, 0.75, 0.375, 0.1875]):
        worst = max(worst, abs(B[k].tail - v))
    points = [KElement([0.5], 0.0)] + [random_k(rng) for _ in range(cfg.trials)]
    for a in points:
        bl = blaschke(a, cfg.tol, cfg.inv_threshold)
        worst = max(worst, (bl.Kaa - (ONE + a.conj() * a * bl.Kaa.shift(1))).norm_inf())
        worst = max(worst, _isometry_defect(bl.series, rng))
    return worst


def _isometry_defect(B: HardySeries, rng, max_shift: int = 3) -> float:
    worst = 0.0
    for m in range(max_shift + 1):
        p, qq = random_k2(rng), random_k2(rng)
        lhs = h2_inner(B * HardySeries.gamma_bar(m, p), B * HardySeries.constant(qq))
        rhs = p.k2_inner(qq) if m == 0 else 0.0
        worst = max(worst, abs(lhs - rhs))
    return worst


# Schur multipliers and interpolation

@check("schur.positivity", "kernel positivity for Blaschke multipliers; violation for 2 gbar", 0.0)
def _schur(cfg, rng):
    failures = 0
    for _ in range(cfg.trials):
        B = blaschke(random_k(rng), cfg.tol).series
        pts = [random_k(rng) for _ in range(3)]
        vecs = [random_k2(rng) for _ in range(3)]
        failures += not is_psd(gram(B, pts, vecs, cfg.tol), cfg.tol_eig).psd
    S = HardySeries.gamma_bar(1, 2.0)
    seven = KElement.const(0.7)
    failures += is_psd(gram(S, [seven, seven], [KElement([1.0]), KElement([0.3, 1.0])], cfg.tol), cfg.tol_eig).psd
    return float(failures)


@check("schur.interpolation", "Blaschke products vanish at the nodes and preserve HS norm", 1e-8)
def _interp(cfg, rng):
    worst = 0.0
    for N in (1, 2, 3):
        pts = tuple(random_k(rng) for _ in range(N))
        sol = interpolate(InterpolationProblem(pts, cfg.tol, cfg.inv_threshold))
        for _ in range(2):
            G = random_series(rng, cfg.degree)
            BG = sol.blaschke_product * G
            worst = max(worst, max(point_eval(BG, c).norm_inf() for c in pts))
            worst = max(worst, abs(h2_norm(BG) - h2_norm(G)))
    c = random_k(rng)
    try:
        interpolate(InterpolationProblem((c, c), cfg.tol, cfg.inv_threshold))
        worst = np.inf
    except RecursionBreakdownError:
        pass
    return worst


def run_checks(cfg: RunConfig, names=None) -> list[dict]:
    """Run every registered check (or those in ``names``) in name order."""
    records = []
    for chk in sorted(CHECKS, key=lambda c: c.name):
        if names is not None and chk.name not in names:
            continue
        rng = np.random.default_rng([cfg.seed, _stable_hash(chk.name)])
        error = None
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                residual = float(chk.run(cfg, rng))
            except TreeHardyError as exc:
                residual, error = float("inf"), f"{type(exc).__name__}: {exc}"
        rec = {
            "name": chk.name,
            "identity": chk.identity,
            "max_residual": residual,
            "threshold": chk.threshold,
            "passed": bool(residual <= chk.threshold),
        }
        if error:
            rec["error"] = error
        records.append(rec)
    return records


def _stable_hash(s: str) -> int:
    h = 0
    for ch in s.encode():
        h = (h * 131 + ch) % (2 ** 31)
    return h


def report(cfg: RunConfig, names=None) -> dict:
    records = run_checks(cfg, names)
    cfg_doc = {k: v for k, v in asdict(cfg).items() if k != "out"}
    return {"config": cfg_doc, "records": records, "passed": all(r["passed"] for r in records)}
