"""The commutative C*-algebra of constants and its square-summable ideal.

An element ``c = sum_m c_m omega_m`` is stored as the bounded sequence
``(c_m)`` in prefix + constant-tail form: ``c_m = prefix[m]`` for
``m < len(prefix)`` and ``c_m = tail`` afterwards. The class is closed under
every operation the library needs, so all arithmetic is exact up to float
rounding.
"""
from __future__ import annotations

import numbers
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, InvalidParameterError, NotInvertibleError, NotPositiveError

DEFAULT_INV_THRESHOLD = 1e-9


class KElement:
    """Bounded complex sequence with a constant tail.

    Instances are immutable and always held in canonical form: trailing
    prefix entries equal to the tail are absorbed into it, so two elements
    represent the same sequence iff they compare equal.
    """

    __slots__ = ("_prefix", "_tail")

    def __init__(self, prefix: Iterable[complex] = (), tail: complex = 0.0):
        p = np.array(list(prefix) if not isinstance(prefix, np.ndarray) else prefix, dtype=complex).ravel()
        t = complex(tail)
        if not (np.all(np.isfinite(p)) and np.isfinite(t)):
            raise InvalidParameterError("KElement entries must be finite")
        n = len(p)
        while n and p[n - 1] == t:
            n -= 1
        p = p[:n].copy()
        p.flags.writeable = False
        self._prefix = p
        self._tail = t

    # constructors

    @classmethod
    def const(cls, value: complex) -> "KElement":
        return cls((), value)

    @classmethod
    def indicator(cls, k: int) -> "KElement":
        """The projection ``omega_k``: 1 at index ``k``, 0 elsewhere."""
        if k < 0:
            raise InvalidParameterError("indicator index must be >= 0")
        e = np.zeros(k + 1, dtype=complex)
        e[k] = 1.0
        return cls(e, 0.0)

    @classmethod
    def coerce(cls, x) -> "KElement":
        if isinstance(x, KElement):
            return x
        if isinstance(x, numbers.Number):
            return cls.const(x)
        raise TypeError(f"cannot interpret {type(x).__name__} as a KElement")

    # representation

    @property
    def prefix(self) -> np.ndarray:
        return self._prefix

    @property
    def tail(self) -> complex:
        return self._tail

    def __len__(self):
        return len(self._prefix)

    def __getitem__(self, m: int) -> complex:
        if m < 0:
            raise IndexError("sequence index must be >= 0")
        return complex(self._prefix[m]) if m < len(self._prefix) else self._tail

    def values(self, n: int) -> np.ndarray:
        """First ``n`` entries of the sequence."""
        return self._padded(n)[:n] if n > len(self._prefix) else self._prefix[:n].copy()

    def _padded(self, n: int) -> np.ndarray:
        out = np.full(max(n, len(self._prefix)), self._tail, dtype=complex)
        out[: len(self._prefix)] = self._prefix
        return out

    def __repr__(self):
        pre = ", ".join(_fmt(z) for z in self._prefix)
        return f"KElement([{pre}], tail={_fmt(self._tail)})"

    def __eq__(self, other):
        if isinstance(other, numbers.Number):
            other = KElement.const(other)
        if not isinstance(other, KElement):
            return NotImplemented
        return self._tail == other._tail and np.array_equal(self._prefix, other._prefix)

    def __hash__(self):
        return hash((self._prefix.tobytes(), self._tail))

    def allclose(self, other, atol: float = 1e-12) -> bool:
        return (self - KElement.coerce(other)).norm_inf() <= atol

    @property
    def is_k2(self) -> bool:
        return self._tail == 0

    # pointwise algebra

    def _binary(self, other, op) -> "KElement":
        other = KElement.coerce(other)
        n = max(len(self._prefix), len(other._prefix))
        return KElement(op(self._padded(n), other._padded(n)), op(self._tail, other._tail))

    def __add__(self, other):
        try:
            return self._binary(other, np.add)
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        try:
            return self._binary(other, np.subtract)
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return KElement.coerce(other) - self
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        try:
            return self._binary(other, np.multiply)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return KElement(-self._prefix, -self._tail)

    def conj(self) -> "KElement":
        return KElement(self._prefix.conj(), self._tail.conjugate())

    def abs2(self) -> "KElement":
        """Pointwise ``|c_m|^2`` (real-valued)."""
        return KElement(np.abs(self._prefix) ** 2, abs(self._tail) ** 2)

    # shifts and window products

    def shift(self, n: int = 1) -> "KElement":
        """``c^(n)``: the sequence ``m -> c_{m+n}``."""
        if n < 0:
            raise InvalidParameterError("shift order must be >= 0")
        return KElement(self._prefix[n:], self._tail)

    def bracket(self, n: int) -> "KElement":
        """``c^[n]``: the window products ``m -> c_m c_{m+1} ... c_{m+n-1}``."""
        if n < 0:
            raise InvalidParameterError("bracket order must be >= 0")
        out = ONE
        for j in range(n):
            out = out * self.shift(j)
        return out

    def brackets(self, count: int) -> list["KElement"]:
        """``[c^[0], ..., c^[count-1]]`` via the recursion ``c^[n+1] = c^[n] c^(n)``."""
        out = []
        cur = ONE
        for n in range(count):
            out.append(cur)
            cur = cur * self.shift(n)
        return out

    # norms and spectral data

    def norm_inf(self) -> float:
        m = float(np.max(np.abs(self._prefix))) if len(self._prefix) else 0.0
        return max(m, abs(self._tail))

    def rho(self) -> float:
        # every window anchored past the prefix is tail**n, earlier windows
        # differ by a bounded factor whose n-th root tends to 1
        return abs(self._tail)

    def rho_estimate(self, n: int = 64) -> float:
        """``||c^[n]||^(1/n)``, the finite-order version of the limsup."""
        if n < 1:
            raise InvalidParameterError("estimator order must be >= 1")
        return self.bracket(n).norm_inf() ** (1.0 / n)

    def in_disk(self) -> bool:
        return self.rho() < 1.0

    def inf_abs(self) -> float:
        m = float(np.min(np.abs(self._prefix))) if len(self._prefix) else np.inf
        return min(m, abs(self._tail))

    def inverse(self, threshold: float = DEFAULT_INV_THRESHOLD) -> "KElement":
        if self.inf_abs() < threshold:
            raise NotInvertibleError(
                f"entry of modulus {self.inf_abs():.3e} is below the invertibility threshold {threshold:g}"
            )
        return KElement(1.0 / self._prefix, 1.0 / self._tail)

    def sqrt(self, tol: float = 1e-12) -> "KElement":
        """Positive square root of an element with real nonnegative entries."""
        vals = np.append(self._prefix, self._tail)
        scale = np.maximum(1.0, np.abs(vals))
        if np.any(np.abs(vals.imag) > tol * scale) or np.any(vals.real < -tol * scale):
            raise NotPositiveError("square root requires real nonnegative entries")
        r = np.sqrt(np.clip(vals.real, 0.0, None))
        return KElement(r[:-1], r[-1])

    # square-summable ideal

    def _require_k2(self):
        if self._tail != 0:
            raise DomainError(f"element with tail {_fmt(self._tail)} is not square summable")

    def k2_norm(self) -> float:
        self._require_k2()
        return float(np.linalg.norm(self._prefix))

    def k2_inner(self, other: "KElement") -> complex:
        """``sum_m a_m conj(b_m)``."""
        self._require_k2()
        other._require_k2()
        n = min(len(self._prefix), len(other._prefix))
        return complex(np.dot(self._prefix[:n], other._prefix[:n].conj()))

    # serialization

    def to_doc(self) -> dict:
        return {
            "prefix": [[float(z.real), float(z.imag)] for z in self._prefix],
            "tail": [self._tail.real, self._tail.imag],
        }

    @classmethod
    def from_doc(cls, doc) -> "KElement":
        if not isinstance(doc, dict) or "tail" not in doc:
            raise InvalidParameterError("KElement document needs 'prefix' and 'tail' fields")
        return cls([_parse_complex(z) for z in doc.get("prefix", [])], _parse_complex(doc["tail"]))


def _parse_complex(z) -> complex:
    if isinstance(z, (list, tuple)) and len(z) == 2 and all(isinstance(v, (int, float)) for v in z):
        return complex(float(z[0]), float(z[1]))
    if isinstance(z, (int, float)) and not isinstance(z, bool):
        return complex(z)
    raise InvalidParameterError(f"expected a [re, im] pair, got {z!r}")


def _fmt(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}j"


ZERO = KElement((), 0.0)
ONE = KElement((), 1.0)


def k2_element(prefix: Sequence[complex]) -> KElement:
    """Finitely supported element of the ideal."""
    return KElement(prefix, 0.0)


# functional surface

def k_add(a, b) -> KElement:
    return KElement.coerce(a) + b


def k_mul(a, b) -> KElement:
    return KElement.coerce(a) * b


def k_conj(a) -> KElement:
    return KElement.coerce(a).conj()


def k_scale(lam: complex, a) -> KElement:
    return KElement.coerce(a) * complex(lam)


def k_shift(c, n: int = 1) -> KElement:
    return KElement.coerce(c).shift(n)


def k_bracket(c, n: int) -> KElement:
    return KElement.coerce(c).bracket(n)


def k_rho(c) -> float:
    return KElement.coerce(c).rho()


def in_disk(c) -> bool:
    return KElement.coerce(c).in_disk()


def k_invert(c, threshold: float = DEFAULT_INV_THRESHOLD) -> KElement:
    return KElement.coerce(c).inverse(threshold)


def k_sqrt(c) -> KElement:
    return KElement.coerce(c).sqrt()


def k_norm_inf(c) -> float:
    return KElement.coerce(c).norm_inf()


def k2_norm(c: KElement) -> float:
    return c.k2_norm()


def k2_inner(a: KElement, b: KElement) -> complex:
    return a.k2_inner(b)
