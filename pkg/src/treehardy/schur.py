"""Schur multipliers: kernel positivity and homogeneous interpolation."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DivergenceError, InvalidParameterError, NotInvertibleError, RecursionBreakdownError
from .hardy import DEFAULT_TOL, MAX_TERMS, HardySeries, blaschke, point_eval, series_mul
from .kalgebra import DEFAULT_INV_THRESHOLD, ONE, KElement

DEFAULT_TOL_EIG = 1e-8


def schur_kernel(S: HardySeries, c, d, tol: float = DEFAULT_TOL) -> KElement:
    """``K_S(c, d) = sum_n c^[n] (1 - S(c) conj(S(d)))^(n) conj(d)^[n]``.

    Summation stops once ``||c^[n]|| * ||d^[n]|| < tol``.
    """
    c, d = KElement.coerce(c), KElement.coerce(d)
    for name, x in (("c", c), ("d", d)):
        if not x.in_disk():
            raise DivergenceError(f"Schur kernel needs {name} in the disk; spectral radius is {x.rho():g}")
    core = ONE - point_eval(S, c) * point_eval(S, d).conj()
    db = d.conj()
    out = KElement.const(0.0)
    bc = bd = ONE
    for n in range(MAX_TERMS):
        out = out + bc * core.shift(n) * bd
        bc = bc * c.shift(n)
        bd = bd * db.shift(n)
        if bc.norm_inf() * bd.norm_inf() < tol:
            return out
    raise DivergenceError(f"Schur kernel did not reach tolerance {tol:g} within {MAX_TERMS} terms")


@dataclass(frozen=True, eq=False)
class HermitianGram:
    matrix: np.ndarray

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def hermitian_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T))) if self.matrix.size else 0.0

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))


@dataclass(frozen=True)
class PSDReport:
    psd: bool
    min_eigenvalue: float
    eigenvalues: tuple[float, ...] = field(repr=False)
    hermitian_residual: float = 0.0

    def __bool__(self):
        return self.psd

    def to_doc(self) -> dict:
        return {
            "psd": self.psd,
            "min_eigenvalue": self.min_eigenvalue,
            "eigenvalues": list(self.eigenvalues),
            "hermitian_residual": self.hermitian_residual,
        }


def gram(S: HardySeries, points: Sequence[KElement], vectors: Sequence[KElement], tol: float = DEFAULT_TOL) -> HermitianGram:
    """``G_ij = [K_S(c_i, c_j) k_j, k_i]``."""
    if len(points) != len(vectors):
        raise InvalidParameterError(f"{len(points)} points but {len(vectors)} vectors")
    m = len(points)
    G = np.empty((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            G[i, j] = (schur_kernel(S, points[i], points[j], tol) * vectors[j]).k2_inner(vectors[i])
    return HermitianGram(G)


def is_psd(G: HermitianGram, tol_eig: float = DEFAULT_TOL_EIG) -> PSDReport:
    ev = G.eigenvalues()
    lam = float(ev.min()) if ev.size else 0.0
    return PSDReport(lam >= -tol_eig, lam, tuple(float(x) for x in ev), G.hermitian_residual())


# homogeneous interpolation

@dataclass(frozen=True)
class InterpolationProblem:
    points: tuple[KElement, ...]
    tol: float = DEFAULT_TOL
    inv_threshold: float = DEFAULT_INV_THRESHOLD

    def __post_init__(self):
        pts = tuple(KElement.coerce(c) for c in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise InvalidParameterError("interpolation needs at least one point")
        for j, c in enumerate(pts, start=1):
            if not c.in_disk():
                raise DivergenceError(f"point {j} has spectral radius {c.rho():g} >= 1")

    @classmethod
    def from_doc(cls, doc) -> "InterpolationProblem":
        if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
            raise InvalidParameterError("problem document needs a 'points' list")
        return cls(
            tuple(KElement.from_doc(p) for p in doc["points"]),
            float(doc.get("tol", DEFAULT_TOL)),
            float(doc.get("inv_threshold", DEFAULT_INV_THRESHOLD)),
        )


@dataclass(frozen=True)
class InterpolationSolution:
    blaschke_product: HardySeries
    ks: tuple[KElement, ...]
    modified_points: tuple[KElement, ...]
    residuals: tuple[float, ...]

    def to_doc(self) -> dict:
        return {
            "blaschke_product": self.blaschke_product.to_doc(),
            "ks": [k.to_doc() for k in self.ks],
            "residuals": list(self.residuals),
        }


def interpolate(problem: InterpolationProblem) -> InterpolationSolution:
    """Product of Blaschke factors vanishing at every point of ``problem``.

    ``k_1 = 1`` and ``k_{j+1} = (B_1 ... B_j)(c_{j+1})`` where ``B_i`` is the
    Blaschke factor at the modified point ``k_i^(1) k_i^{-1} c_i``.
    """
    tol, thr = problem.tol, problem.inv_threshold
    B = HardySeries.constant(ONE)
    ks, mods = [], []
    for j, c in enumerate(problem.points, start=1):
        k = ONE if j == 1 else point_eval(B, c)
        try:
            kinv = k.inverse(thr)
        except NotInvertibleError as exc:
            raise RecursionBreakdownError(
                f"k_{j} is not invertible ({exc}); the recursion breaks down", index=j, value=k) from exc
        a = k.shift(1) * kinv * c
        if not a.in_disk():
            raise DivergenceError(f"modified point {j} left the disk")
        ks.append(k)
        mods.append(a)
        B = series_mul(B, blaschke(a, tol, thr).series).truncate(tol)
    residuals = tuple(point_eval(B, c).norm_inf() for c in problem.points)
    return InterpolationSolution(B, tuple(ks), tuple(mods), residuals)
