"""Causal stationary systems as power series in the upward shift.

A :class:`HardySeries` is the finite expansion ``S = sum_k gbar^k s_k`` with
coefficients ``s_k`` in the constants algebra. Constants do not commute with
the shift; they move through it by ``c gbar = gbar c^(1)``. Every product and
evaluation below is derived from that single rule.
"""
from __future__ import annotations

import math
import numbers
import warnings
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DivergenceError, DomainError, InvalidParameterError, OutsideDiskWarning
from .kalgebra import DEFAULT_INV_THRESHOLD, ONE, ZERO, KElement

DEFAULT_TOL = 1e-12
MAX_TERMS = 20000


@dataclass(frozen=True, eq=False)
class HardySeries:
    """``sum_k gbar^k coeffs[k]``, trailing zero coefficients trimmed."""

    coeffs: tuple[KElement, ...]

    def __init__(self, coeffs: Iterable = (ZERO,)):
        cs = [KElement.coerce(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == ZERO:
            cs.pop()
        if not cs:
            cs = [ZERO]
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c) -> "HardySeries":
        return cls([KElement.coerce(c)])

    @classmethod
    def gamma_bar(cls, n: int = 1, coeff=ONE) -> "HardySeries":
        """``gbar^n * coeff``."""
        if n < 0:
            raise InvalidParameterError("shift power must be >= 0")
        return cls([ZERO] * n + [KElement.coerce(coeff)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def hs_flag(self) -> bool:
        return all(c.is_k2 for c in self.coeffs)

    def coeff(self, k: int) -> KElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __getitem__(self, k: int) -> KElement:
        return self.coeff(k)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"HardySeries(degree={self.degree}, coeffs={list(self.coeffs)!r})"

    def __eq__(self, other):
        if not isinstance(other, HardySeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def allclose(self, other: "HardySeries", atol: float = 1e-12) -> bool:
        return max_coeff_diff(self, other) <= atol

    def _zip(self, other: "HardySeries", op) -> "HardySeries":
        n = max(len(self), len(other))
        return HardySeries(op(self.coeff(k), other.coeff(k)) for k in range(n))

    def __add__(self, other):
        if isinstance(other, (KElement, numbers.Number)):
            other = HardySeries.constant(other)
        if not isinstance(other, HardySeries):
            return NotImplemented
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (KElement, numbers.Number)):
            other = HardySeries.constant(other)
        if not isinstance(other, HardySeries):
            return NotImplemented
        return self._zip(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return HardySeries.constant(other) - self

    def __neg__(self):
        return HardySeries(-c for c in self.coeffs)

    def __mul__(self, other):
        # F * p with p constant: right multiplication, coefficients f_n p
        if isinstance(other, (KElement, numbers.Number)):
            p = KElement.coerce(other)
            return HardySeries(c * p for c in self.coeffs)
        if isinstance(other, HardySeries):
            return series_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        # k * F with k constant: k gbar^n f_n = gbar^n k^(n) f_n
        if isinstance(other, (KElement, numbers.Number)):
            k = KElement.coerce(other)
            return HardySeries(k.shift(n) * c for n, c in enumerate(self.coeffs))
        return NotImplemented

    def truncate(self, tol: float) -> "HardySeries":
        """Drop trailing coefficients of sup-norm below ``tol``."""
        cs = list(self.coeffs)
        while len(cs) > 1 and cs[-1].norm_inf() < tol:
            cs.pop()
        return HardySeries(cs)

    def to_doc(self) -> dict:
        return {"coeffs": [c.to_doc() for c in self.coeffs]}

    @classmethod
    def from_doc(cls, doc) -> "HardySeries":
        if not isinstance(doc, dict) or not isinstance(doc.get("coeffs"), list):
            raise InvalidParameterError("HardySeries document needs a 'coeffs' list")
        return cls(KElement.from_doc(c) for c in doc["coeffs"])


def max_coeff_diff(a: HardySeries, b: HardySeries) -> float:
    n = max(len(a), len(b))
    return max((a.coeff(k) - b.coeff(k)).norm_inf() for k in range(n))


def series_mul(S: HardySeries, F: HardySeries) -> HardySeries:
    """Product ``SF`` with ``(SF)_n = sum_j s_{n-j}^(j) f_j``."""
    out = [ZERO] * (len(S) + len(F) - 1)
    for j, f in enumerate(F.coeffs):
        if f == ZERO:
            continue
        for i, s in enumerate(S.coeffs):
            out[i + j] = out[i + j] + s.shift(j) * f
    return HardySeries(out)


def _warn_outside(c: KElement, what: str):
    if not c.in_disk():
        warnings.warn(
            f"{what} at a point with spectral radius {c.rho():g} >= 1; the finite sum is returned",
            OutsideDiskWarning,
            stacklevel=3,
        )


def point_eval(S: HardySeries, c) -> KElement:
    """``S(c) = sum_n c^[n] s_n``.

    The series is finite, so the sum is always defined; an
    :class:`OutsideDiskWarning` is issued if ``c`` is not in the disk.
    """
    c = KElement.coerce(c)
    _warn_outside(c, "point evaluation")
    out = ZERO
    br = ONE
    for n, s in enumerate(S.coeffs):
        out = out + br * s
        br = br * c.shift(n)
    return out


def h2_inner(F: HardySeries, G: HardySeries) -> complex:
    if not (F.hs_flag and G.hs_flag):
        raise DomainError("inner product needs square-summable coefficients")
    n = min(len(F), len(G))
    return sum((F.coeffs[k].k2_inner(G.coeffs[k]) for k in range(n)), 0j)


def h2_norm(F: HardySeries) -> float:
    return math.sqrt(max(h2_inner(F, F).real, 0.0))


def _require_disk(c: KElement, what: str):
    if not c.in_disk():
        raise DivergenceError(f"{what} requires a point in the disk; spectral radius is {c.rho():g}")


def _not_converged(what: str, tol: float):
    return DivergenceError(f"{what} did not reach tolerance {tol:g} within {MAX_TERMS} terms")


def kernel(c, tol: float = DEFAULT_TOL) -> HardySeries:
    """Reproducing kernel ``K_c = sum_n gbar^n conj(c)^[n]``.

    Truncated at the first order ``N`` with ``||conj(c)^[N]|| < tol``; that
    term is kept, so ``N`` equals the degree of the result unless the tail
    vanishes exactly.
    """
    c = KElement.coerce(c)
    _require_disk(c, "the reproducing kernel")
    cb = c.conj()
    coeffs = []
    br = ONE
    for n in range(MAX_TERMS):
        coeffs.append(br)
        if br.norm_inf() < tol:
            return HardySeries(coeffs)
        br = br * cb.shift(n)
    raise _not_converged("kernel series", tol)


def bezout_div(F: HardySeries, c) -> HardySeries:
    """The quotient ``G`` in ``F - F(c) = (gbar - c) G``.

    ``G_n = sum_k (c^(n+1))^[k] f_{n+k+1}``.
    """
    c = KElement.coerce(c)
    _warn_outside(c, "division")
    K = F.degree
    out = []
    for n in range(K):
        cn = c.shift(n + 1)
        g = ZERO
        br = ONE
        for k in range(K - n):
            g = g + br * F.coeffs[n + k + 1]
            br = br * cn.shift(k)
        out.append(g)
    return HardySeries(out or [ZERO])


def linear_factor(c) -> HardySeries:
    """The series ``gbar - c``."""
    return HardySeries([-KElement.coerce(c), ONE])


def kernel_at_self(a) -> KElement:
    """``K_a(a)`` in closed form.

    ``(K_a(a))_m = sum_n prod_{j=m}^{m+n-1} |a_j|^2``; windows that run into
    the constant tail ``beta = |a_inf|^2`` are summed as a geometric series.
    """
    a = KElement.coerce(a)
    _require_disk(a, "K_a(a)")
    b = a.abs2()
    beta = b.tail.real
    p = b.prefix.real
    P = len(p)
    vals = np.empty(P)
    for m in range(P):
        partial = 1.0
        total = 0.0
        for j in range(m, P):
            total += partial
            partial *= p[j]
        vals[m] = total + partial / (1.0 - beta)
    return KElement(vals, 1.0 / (1.0 - beta))


class Blaschke(NamedTuple):
    series: HardySeries
    L: KElement
    Kaa: KElement


def blaschke(a, tol: float = DEFAULT_TOL, inv_threshold: float = DEFAULT_INV_THRESHOLD) -> Blaschke:
    """Blaschke factor ``B_a = (gbar - a)(1 - L a* gbar)^(-1) sqrt(L)``.

    With ``d = L conj(a)`` one has ``(d gbar)^n = gbar^n (d^[n])^(1)``, so
    ``b_0 = -a sqrt(L)`` and
    ``b_n = (d^[n-1])^(1) sqrt(L) - a^(n) (d^[n])^(1) sqrt(L)``.
    The expansion stops at the first ``N`` with ``||d^[N]|| < tol``.
    """
    a = KElement.coerce(a)
    _require_disk(a, "the Blaschke factor")
    Kaa = kernel_at_self(a)
    L = Kaa.shift(1) * Kaa.inverse(inv_threshold)
    root = L.sqrt()
    d = L * a.conj()
    e = [ONE]
    br = ONE
    for n in range(MAX_TERMS):
        if br.norm_inf() < tol:
            break
        br = br * d.shift(n)
        e.append(br.shift(1))
    else:
        raise _not_converged("Blaschke expansion", tol)
    coeffs = [-a * root]
    for n in range(1, len(e)):
        coeffs.append(e[n - 1] * root - a.shift(n) * e[n] * root)
    return Blaschke(HardySeries(coeffs), L, Kaa)

